#include "stitlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stitlab/errors.hpp"

namespace stitlab::estimators {

using geometry::FacetPolygon;
using mnw::Tessellation;

namespace {

void require_facets(const Tessellation& y) {
    if (!y.facets_kept) throw DomainError("estimator needs the facet list of the tessellation");
}

double unit_ball_volume(int j) { return std::pow(std::numbers::pi, 0.5 * j) / std::tgamma(1 + 0.5 * j); }

bool inside_region(const Window& w, const Vec3& x) { return w.strictly_inside(x); }

// Uniform-grid index over facet bounding boxes.
class FacetGrid {
public:
    FacetGrid(const std::vector<const FacetPolygon*>& facets, const Vec3& lo, const Vec3& hi, double cell, int dim)
        : facets_(facets), lo_(lo), cell_(cell), dim_(dim), stamp_(facets.size(), 0) {
        for (int i = 0; i < 3; ++i) n_[i] = i < dim ? std::max(1, static_cast<int>(std::ceil((hi[i] - lo[i]) / cell)) + 1) : 1;
        bins_.resize(static_cast<std::size_t>(n_[0]) * n_[1] * n_[2]);
        boxes_.reserve(facets.size());
        for (std::size_t k = 0; k < facets.size(); ++k) {
            Vec3 blo = facets[k]->vertices[0], bhi = blo;
            for (const auto& v : facets[k]->vertices)
                for (int i = 0; i < 3; ++i) {
                    blo[i] = std::min(blo[i], v[i]);
                    bhi[i] = std::max(bhi[i], v[i]);
                }
            boxes_.push_back({blo, bhi});
            int a[3], b[3];
            for (int i = 0; i < 3; ++i) {
                a[i] = index(i, blo[i]);
                b[i] = index(i, bhi[i]);
            }
            for (int x = a[0]; x <= b[0]; ++x)
                for (int y = a[1]; y <= b[1]; ++y)
                    for (int z = a[2]; z <= b[2]; ++z) bins_[flat(x, y, z)].push_back(static_cast<int>(k));
        }
    }

    // Facets whose bounding box is within distance r of p.
    void query(const Vec3& p, double r, std::vector<int>& out) {
        out.clear();
        ++epoch_;
        int a[3], b[3];
        for (int i = 0; i < 3; ++i) {
            a[i] = index(i, p[i] - r);
            b[i] = index(i, p[i] + r);
        }
        for (int x = a[0]; x <= b[0]; ++x)
            for (int y = a[1]; y <= b[1]; ++y)
                for (int z = a[2]; z <= b[2]; ++z)
                    for (int k : bins_[flat(x, y, z)]) {
                        if (stamp_[k] == epoch_) continue;
                        stamp_[k] = epoch_;
                        if (box_distance2(k, p) <= r * r) out.push_back(k);
                    }
    }

    double box_distance2(int k, const Vec3& p) const {
        double s = 0;
        for (int i = 0; i < dim_; ++i) {
            double d = std::max({boxes_[k].first[i] - p[i], 0.0, p[i] - boxes_[k].second[i]});
            s += d * d;
        }
        return s;
    }

private:
    int index(int axis, double x) const {
        if (axis >= dim_) return 0;
        int i = static_cast<int>(std::floor((x - lo_[axis]) / cell_));
        return std::clamp(i, 0, n_[axis] - 1);
    }
    std::size_t flat(int x, int y, int z) const {
        return (static_cast<std::size_t>(x) * n_[1] + y) * n_[2] + z;
    }

    const std::vector<const FacetPolygon*>& facets_;
    Vec3 lo_;
    double cell_;
    int dim_;
    int n_[3];
    std::vector<std::vector<int>> bins_;
    std::vector<std::pair<Vec3, Vec3>> boxes_;
    std::vector<unsigned> stamp_;
    unsigned epoch_ = 0;
};

struct Element {
    Vec3 p;
    double w;
};

// Part of a facet inside the eroded region, discretized into elements.
void discretize(const FacetPolygon& f, const Window& region, double h, std::vector<Element>& out) {
    const int dim = f.dim;
    if (region.region == Window::Region::Ball) {
        if (dim != 2) throw Unsupported("K-function with a three-dimensional ball window");
        Vec3 a = f.vertices[0], b = f.vertices[1];
        Vec3 d = b - a, m = a - region.center;
        double A = dot(d, d), B = 2 * dot(m, d), C = dot(m, m) - region.radius * region.radius;
        double disc = B * B - 4 * A * C;
        if (A == 0 || disc <= 0) return;
        double s1 = std::max((-B - std::sqrt(disc)) / (2 * A), 0.0);
        double s2 = std::min((-B + std::sqrt(disc)) / (2 * A), 1.0);
        if (s2 <= s1) return;
        a = lerp(f.vertices[0], f.vertices[1], s1);
        b = lerp(f.vertices[0], f.vertices[1], s2);
        double len = dist(a, b);
        int m_el = std::max(1, static_cast<int>(std::ceil(len / h)));
        for (int k = 0; k < m_el; ++k) out.push_back({lerp(a, b, (k + 0.5) / m_el), len / m_el});
        return;
    }
    FacetPolygon g = f;
    for (const auto& hs : region.observed->halfspaces()) {
        g = geometry::clip_facet(g, hs);
        if (g.empty()) return;
    }
    if (dim == 2) {
        const Vec3& a = g.vertices[0];
        const Vec3& b = g.vertices[1];
        double len = dist(a, b);
        if (len <= 0) return;
        int m_el = std::max(1, static_cast<int>(std::ceil(len / h)));
        for (int k = 0; k < m_el; ++k) out.push_back({lerp(a, b, (k + 0.5) / m_el), len / m_el});
        return;
    }
    const auto& v = g.vertices;
    for (std::size_t t = 1; t + 1 < v.size(); ++t) {
        const Vec3 &a = v[0], &b = v[t], &c = v[t + 1];
        double area = 0.5 * norm(cross(b - a, c - a));
        if (area <= 0) continue;
        double longest = std::max({dist(a, b), dist(b, c), dist(a, c)});
        int n = std::max(1, static_cast<int>(std::ceil(longest / h)));
        double w = area / (static_cast<double>(n) * n);
        Vec3 eb = (1.0 / n) * (b - a), ec = (1.0 / n) * (c - a);
        for (int i = 0; i < n; ++i)
            for (int j = 0; i + j < n; ++j) {
                out.push_back({a + ((3 * i + 1) / 3.0) * eb + ((3 * j + 1) / 3.0) * ec, w});
                if (i + j < n - 1) out.push_back({a + ((3 * i + 2) / 3.0) * eb + ((3 * j + 2) / 3.0) * ec, w});
            }
    }
}

double facet_in_ball(const FacetPolygon& f, const Vec3& c, double r) {
    if (f.dim == 2) return geometry::segment_ball_length(f.vertices[0], f.vertices[1], c, r);
    return geometry::facet_ball_measure(f, c, r);
}

}  // namespace

double total_surface(const Tessellation& y) { return y.total_surface; }

std::size_t anchored_facet_count(const Tessellation& y) {
    require_facets(y);
    std::size_t n = 0;
    for (const auto& f : y.facets)
        if (inside_region(y.window, f.facet.lowest_vertex())) ++n;
    return n;
}

std::size_t interior_vertex_count(const Tessellation& y) {
    require_facets(y);
    std::size_t n = 0;
    for (const auto& f : y.facets)
        for (const auto& v : f.facet.vertices)
            if (inside_region(y.window, v)) ++n;
    return n;
}

double vertex_intensity(const Tessellation& y) {
    return static_cast<double>(interior_vertex_count(y)) / y.window.volume();
}

double facet_intensity(const Tessellation& y) {
    return static_cast<double>(anchored_facet_count(y)) / y.window.volume();
}

FacetSample isegment_sample(const Tessellation& y, double delta) {
    require_facets(y);
    if (delta < 0) throw DomainError("erosion must be nonnegative");
    Window a;
    try {
        a = y.window.eroded(delta);
    } catch (const EmptySample&) {
        throw EmptySample("eroded window is empty");
    }
    const double eps = y.window.eps_geom();
    FacetSample out;
    out.weighted = !(a.region == Window::Region::Ball && y.window.dim() == 3);
    for (const auto& rec : y.facets) {
        const auto& f = rec.facet;
        bool inside = std::all_of(f.vertices.begin(), f.vertices.end(), [&](const Vec3& v) { return a.strictly_inside(v); });
        if (!inside) continue;
        double weight = 1;
        if (a.region == Window::Region::Ball) {
            if (out.weighted) weight = 1 / geometry::disk_lens_area(a.radius, f.diameter());
        } else {
            Vec3 iota = f.lowest_vertex();
            std::vector<Vec3> shape;
            for (const auto& v : f.vertices) shape.push_back(v - iota);
            auto region = a.observed->eroded_by_shape(shape, eps);
            if (!region || !(region->volume() > 0)) continue;
            weight = 1 / region->volume();
        }
        out.sizes.push_back(f.area);
        out.weights.push_back(weight);
        out.birth_times.push_back(rec.birth_time);
    }
    if (out.sizes.empty()) throw EmptySample("no facet lies inside the eroded window");
    return out;
}

KSums k_function_sums(const std::vector<FacetPolygon>& facets, const Window& window, const KFunctionOptions& o) {
    const int dim = window.dim();
    if (dim < 2) throw Unsupported("K-function estimation needs d >= 2");
    if (o.r_grid.empty()) throw DomainError("empty r grid");
    double r_min = *std::min_element(o.r_grid.begin(), o.r_grid.end());
    double r_max = *std::max_element(o.r_grid.begin(), o.r_grid.end());
    if (!(r_min > 0)) throw DomainError("radii must be positive");
    if (r_max > o.erosion) throw DomainError("largest radius must not exceed the erosion");
    double h = o.element_size > 0 ? o.element_size : r_min / 10;
    if (h > r_min / 10 * (1 + 1e-12)) throw DomainError("element size must satisfy h <= r_min / 10");

    Window a = window.eroded(o.erosion);
    KSums out;
    out.numerator.assign(o.r_grid.size(), 0.0);
    out.eroded_volume = a.volume();
    if (facets.empty()) return out;

    std::vector<const FacetPolygon*> ptrs;
    for (const auto& f : facets) ptrs.push_back(&f);
    auto [lo, hi] = window.frame.bounding_box();
    FacetGrid grid(ptrs, lo, hi, r_max, dim);

    std::vector<Element> elements;
    std::vector<int> near;
    for (const auto& f : facets) {
        elements.clear();
        discretize(f, a, h, elements);
        for (const auto& e : elements) {
            grid.query(e.p, r_max, near);
            for (int k : near) {
                double d2 = grid.box_distance2(k, e.p);
                for (std::size_t i = 0; i < o.r_grid.size(); ++i) {
                    double r = o.r_grid[i];
                    if (d2 > r * r) continue;
                    out.numerator[i] += e.w * facet_in_ball(*ptrs[k], e.p, r);
                }
            }
        }
    }
    return out;
}

KSums k_function_sums(const Tessellation& y, const KFunctionOptions& o) {
    require_facets(y);
    std::vector<FacetPolygon> facets;
    facets.reserve(y.facets.size());
    for (const auto& f : y.facets) facets.push_back(f.facet);
    return k_function_sums(facets, y.window, o);
}

std::vector<CurvePoint> pool_k_function(std::span<const KSums> reps, const KFunctionOptions& o) {
    std::vector<CurvePoint> out;
    std::vector<double> x(reps.size()), y(reps.size());
    for (std::size_t i = 0; i < o.r_grid.size(); ++i) {
        for (std::size_t k = 0; k < reps.size(); ++k) {
            x[k] = reps[k].numerator[i];
            y[k] = o.t * o.t * reps[k].eroded_volume;
        }
        auto e = stats::ratio_estimate(x, y);
        out.push_back({o.r_grid[i], e.estimate, e.se});
    }
    return out;
}

std::vector<CurvePoint> pool_pair_correlation(std::span<const KSums> reps, const KFunctionOptions& o, int dim) {
    std::vector<CurvePoint> out;
    std::vector<double> x(reps.size()), y(reps.size());
    for (std::size_t i = 0; i + 1 < o.r_grid.size(); ++i) {
        double r0 = o.r_grid[i], r1 = o.r_grid[i + 1];
        double shell = unit_ball_volume(dim) * (std::pow(r1, dim) - std::pow(r0, dim));
        for (std::size_t k = 0; k < reps.size(); ++k) {
            x[k] = reps[k].numerator[i + 1] - reps[k].numerator[i];
            y[k] = o.t * o.t * reps[k].eroded_volume * shell;
        }
        auto e = stats::ratio_estimate(x, y);
        out.push_back({0.5 * (r0 + r1), e.estimate, e.se});
    }
    return out;
}

ReplicateSummary summarize(const Tessellation& y, std::size_t index, double minus_sampling_delta) {
    ReplicateSummary s;
    s.index = index;
    s.total_surface = y.total_surface;
    s.window_volume = y.window.volume();
    s.checkpoint_totals = y.checkpoint_totals;
    if (y.facets_kept) {
        s.vertex_count = static_cast<double>(interior_vertex_count(y));
        s.facet_count = static_cast<double>(anchored_facet_count(y));
        if (minus_sampling_delta >= 0) {
            try {
                s.facets = isegment_sample(y, minus_sampling_delta);
            } catch (const EmptySample&) {
                s.facets = {};
            }
        }
    }
    return s;
}

}  // namespace stitlab::estimators
