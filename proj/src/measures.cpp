#include "stitlab/measures.hpp"

#include <cmath>
#include <numbers>

#include "stitlab/errors.hpp"

namespace stitlab::measures {

using geometry::ConvexPolytope;
using geometry::Hyperplane;

namespace {

constexpr int kMaxRejections = 1000000;

Vec3 axis(int i) {
    Vec3 e{0, 0, 0};
    e[i] = 1;
    return e;
}

double unit_ball_volume(int j) { return std::pow(std::numbers::pi, 0.5 * j) / std::tgamma(1 + 0.5 * j); }

Hyperplane offset_in_projection(int dim, const ConvexPolytope& k, const Vec3& u, Rng& rng) {
    auto [lo, hi] = k.projection(u);
    return Hyperplane::canonical(dim, u, rng.uniform(lo, hi));
}

}  // namespace

HyperplaneMeasureSpec HyperplaneMeasureSpec::isotropic(int dim) {
    HyperplaneMeasureSpec s;
    s.kind = MeasureKind::Isotropic;
    s.dim = dim;
    return s;
}

HyperplaneMeasureSpec HyperplaneMeasureSpec::axis_counting(int dim) {
    HyperplaneMeasureSpec s;
    s.kind = MeasureKind::AxisCounting;
    s.dim = dim;
    return s;
}

HyperplaneMeasureSpec HyperplaneMeasureSpec::discrete(int dim, std::vector<WeightedDirection> dirs, bool require_span) {
    if (dirs.empty()) throw DomainError("discrete measure needs at least one direction");
    double total = 0;
    for (auto& d : dirs) {
        if (!(d.weight > 0)) throw DomainError("discrete measure weights must be positive");
        for (int i = dim; i < 3; ++i) d.direction[i] = 0;
        double n = norm(d.direction);
        if (n == 0) throw DomainError("discrete measure direction is zero");
        d.direction = (1.0 / n) * d.direction;
        total += d.weight;
    }
    for (auto& d : dirs) d.weight /= total;

    // Directions must span R^d.
    bool spans = false;
    if (dim == 1) {
        spans = true;
    } else if (dim == 2) {
        for (std::size_t i = 0; i < dirs.size() && !spans; ++i)
            for (std::size_t j = i + 1; j < dirs.size() && !spans; ++j)
                spans = std::fabs(cross(dirs[i].direction, dirs[j].direction)[2]) > 1e-9;
    } else {
        for (std::size_t i = 0; i < dirs.size() && !spans; ++i)
            for (std::size_t j = i + 1; j < dirs.size() && !spans; ++j)
                for (std::size_t k = j + 1; k < dirs.size() && !spans; ++k)
                    spans = std::fabs(dot(dirs[i].direction, cross(dirs[j].direction, dirs[k].direction))) > 1e-9;
    }
    if (require_span && !spans) throw DomainError("discrete measure directions do not span the space");

    HyperplaneMeasureSpec s;
    s.kind = MeasureKind::DiscreteDirectional;
    s.dim = dim;
    s.directions = std::move(dirs);
    return s;
}

std::string HyperplaneMeasureSpec::name() const {
    switch (kind) {
        case MeasureKind::Isotropic: return "isotropic";
        case MeasureKind::DiscreteDirectional: return "discrete";
        case MeasureKind::AxisCounting: return "axis";
    }
    return "?";
}

double measure_hitting(const HyperplaneMeasureSpec& m, const ConvexPolytope& k) {
    switch (m.kind) {
        case MeasureKind::Isotropic: return geometry::mean_width(k);
        case MeasureKind::DiscreteDirectional: {
            double s = 0;
            for (const auto& d : m.directions) s += d.weight * geometry::support_width(k, d.direction);
            return s;
        }
        case MeasureKind::AxisCounting: {
            double s = 0;
            for (int i = 0; i < m.dim; ++i) s += geometry::support_width(k, axis(i));
            return s;
        }
    }
    return 0;
}

double measure_hitting_ball(const HyperplaneMeasureSpec& m, double radius) {
    switch (m.kind) {
        case MeasureKind::Isotropic:
        case MeasureKind::DiscreteDirectional: return 2 * radius;
        case MeasureKind::AxisCounting: return 2 * radius * m.dim;
    }
    return 0;
}

double segment_measure(const HyperplaneMeasureSpec& m, const Vec3& x, const Vec3& y) {
    switch (m.kind) {
        case MeasureKind::Isotropic: {
            int d = m.dim;
            return 2 * unit_ball_volume(d - 1) / (d * unit_ball_volume(d)) * dist(x, y);
        }
        case MeasureKind::DiscreteDirectional: {
            double s = 0;
            for (const auto& dir : m.directions) s += dir.weight * std::fabs(dot(y - x, dir.direction));
            return s;
        }
        case MeasureKind::AxisCounting: {
            double s = 0;
            for (int i = 0; i < m.dim; ++i) s += std::fabs(x[i] - y[i]);
            return s;
        }
    }
    return 0;
}

Vec3 sample_direction(int dim, Rng& rng) {
    if (dim == 1) return {rng.uniform() < 0.5 ? -1.0 : 1.0, 0, 0};
    if (dim == 2) {
        double phi = rng.uniform(0, 2 * std::numbers::pi);
        return {std::cos(phi), std::sin(phi), 0};
    }
    double z = rng.uniform(-1, 1);
    double phi = rng.uniform(0, 2 * std::numbers::pi);
    double s = std::sqrt(std::max(0.0, 1 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
}

Hyperplane sample_hitting(const HyperplaneMeasureSpec& m, const ConvexPolytope& k, Rng& rng) {
    const int dim = m.dim;
    switch (m.kind) {
        case MeasureKind::Isotropic: {
            if (dim == 1) return offset_in_projection(dim, k, sample_direction(1, rng), rng);
            double diam = k.diameter();
            for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
                Vec3 u = sample_direction(dim, rng);
                auto [lo, hi] = k.projection(u);
                if (rng.uniform() * diam < hi - lo) return Hyperplane::canonical(dim, u, rng.uniform(lo, hi));
            }
            throw RejectionOverflow("isotropic hyperplane sampling exceeded the rejection limit");
        }
        case MeasureKind::DiscreteDirectional: {
            std::vector<double> w;
            double total = 0;
            for (const auto& d : m.directions) {
                w.push_back(d.weight * geometry::support_width(k, d.direction));
                total += w.back();
            }
            double x = rng.uniform() * total;
            std::size_t i = 0;
            while (i + 1 < w.size() && x >= w[i]) x -= w[i++];
            return offset_in_projection(dim, k, m.directions[i].direction, rng);
        }
        case MeasureKind::AxisCounting: {
            auto [lo, hi] = k.bounding_box();
            double total = 0;
            for (int i = 0; i < dim; ++i) total += hi[i] - lo[i];
            double x = rng.uniform() * total;
            int i = 0;
            while (i + 1 < dim && x >= hi[i] - lo[i]) {
                x -= hi[i] - lo[i];
                ++i;
            }
            return Hyperplane::canonical(dim, axis(i), rng.uniform(lo[i], hi[i]));
        }
    }
    throw DomainError("unknown measure kind");
}

}  // namespace stitlab::measures
