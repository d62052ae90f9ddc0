#include "stitlab/window.hpp"

#include <cmath>
#include <numbers>

#include "stitlab/errors.hpp"

namespace stitlab {

using geometry::ConvexPolytope;
using geometry::FacetPolygon;

Window Window::polytope(ConvexPolytope p) {
    Window w;
    w.frame = std::move(p);
    return w;
}

Window Window::ball(int dim, double radius, const Vec3& center) {
    if (!(radius > 0)) throw DomainError("ball radius must be positive");
    Vec3 lo = center, hi = center;
    for (int i = 0; i < dim; ++i) {
        lo[i] -= radius;
        hi[i] += radius;
    }
    Window w;
    w.frame = ConvexPolytope::box(dim, lo, hi);
    if (dim == 1) return w;
    w.region = Region::Ball;
    w.center = center;
    w.radius = radius;
    return w;
}

Window Window::sub_window(ConvexPolytope frame, ConvexPolytope observed) {
    Window w;
    w.frame = std::move(frame);
    w.region = Region::Polytope;
    w.observed = std::move(observed);
    return w;
}

double Window::volume() const {
    switch (region) {
        case Region::Frame: return frame.volume();
        case Region::Ball:
            return std::pow(std::numbers::pi, 0.5 * dim()) / std::tgamma(1 + 0.5 * dim()) * std::pow(radius, dim());
        case Region::Polytope: return observed->volume();
    }
    return 0;
}

double Window::diameter() const {
    switch (region) {
        case Region::Frame: return frame.diameter();
        case Region::Ball: return 2 * radius;
        case Region::Polytope: return observed->diameter();
    }
    return 0;
}

double Window::facet_measure(const FacetPolygon& f) const {
    switch (region) {
        case Region::Frame: return f.area;
        case Region::Ball: return geometry::facet_ball_measure(f, center, radius);
        case Region::Polytope: {
            FacetPolygon g = f;
            for (const auto& h : observed->halfspaces()) {
                g = geometry::clip_facet(g, h);
                if (g.empty()) return 0;
            }
            return g.area;
        }
    }
    return 0;
}

bool Window::strictly_inside(const Vec3& x) const {
    double m = interior_margin();
    if (!frame.contains(x, m)) return false;
    switch (region) {
        case Region::Frame: return true;
        case Region::Ball: return dist(x, center) < radius - m;
        case Region::Polytope: return observed->contains(x, m);
    }
    return false;
}

bool Window::may_observe(const ConvexPolytope& cell) const {
    if (region != Region::Ball) return true;
    return cell.distance_to(center) < radius;
}

double Window::hitting_measure(const measures::HyperplaneMeasureSpec& m) const {
    switch (region) {
        case Region::Frame: return measures::measure_hitting(m, frame);
        case Region::Ball: return measures::measure_hitting_ball(m, radius);
        case Region::Polytope: return measures::measure_hitting(m, *observed);
    }
    return 0;
}

Window Window::eroded(double delta) const {
    Window w = *this;
    switch (region) {
        case Region::Frame:
        case Region::Polytope: {
            const ConvexPolytope& base = region == Region::Frame ? frame : *observed;
            auto e = base.eroded(delta, eps_geom());
            if (!e) throw EmptySample("erosion removes the whole window");
            w.region = Region::Polytope;
            w.observed = std::move(*e);
            return w;
        }
        case Region::Ball:
            if (delta >= radius) throw EmptySample("erosion removes the whole window");
            w.radius = radius - delta;
            return w;
    }
    return w;
}

Window Window::scaled(double m) const {
    Window w = *this;
    w.frame = frame.scaled(m);
    w.center = m * center;
    w.radius = m * radius;
    if (observed) w.observed = observed->scaled(m);
    return w;
}

}  // namespace stitlab
