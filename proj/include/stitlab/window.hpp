#pragma once

#include <optional>

#include "stitlab/geometry.hpp"
#include "stitlab/measures.hpp"

namespace stitlab {

// Simulation frame plus observation region. A ball window is simulated in
// its circumscribed cube and observed in the ball; a polytope region
// observes part of a larger frame.
struct Window {
    enum class Region { Frame, Ball, Polytope };

    geometry::ConvexPolytope frame;
    Region region = Region::Frame;
    Vec3 center{0, 0, 0};
    double radius = 0;
    std::optional<geometry::ConvexPolytope> observed;

    static Window polytope(geometry::ConvexPolytope p);
    static Window ball(int dim, double radius, const Vec3& center = {0, 0, 0});
    static Window sub_window(geometry::ConvexPolytope frame, geometry::ConvexPolytope observed);

    int dim() const { return frame.dim(); }
    double volume() const;
    double diameter() const;
    double eps_geom() const { return 1e-12 * frame.diameter(); }
    double eps_vol() const { return 1e-12 * frame.volume(); }
    // Margin used by interior tests.
    double interior_margin() const { return 1e-9 * frame.diameter(); }

    double facet_measure(const geometry::FacetPolygon& f) const;
    bool strictly_inside(const Vec3& x) const;
    // False when a cell cannot meet the observation region any more.
    bool may_observe(const geometry::ConvexPolytope& cell) const;
    // Λ([W]) of the observation region.
    double hitting_measure(const measures::HyperplaneMeasureSpec& m) const;
    // Observation region eroded by delta, as a window on the same frame.
    Window eroded(double delta) const;
    Window scaled(double m) const;
};

}  // namespace stitlab
