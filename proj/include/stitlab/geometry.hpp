#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "stitlab/vec.hpp"

namespace stitlab::geometry {

// {x : <x,normal> = offset}; canonical form has offset >= 0 and, when the
// offset vanishes, a positive first nonzero normal coordinate.
struct Hyperplane {
    int dim = 2;
    Vec3 normal{1, 0, 0};
    double offset = 0;

    static Hyperplane canonical(int dim, Vec3 u, double r);
    double signed_distance(const Vec3& x) const { return dot(x, normal) - offset; }
};

// <x,normal> <= bound, normal unit and pointing outward.
struct Halfspace {
    Vec3 normal{};
    double bound = 0;
};

// The (d-1)-dimensional piece cell ∩ H. d=1: a single point, d=2: two
// endpoints, d=3: a planar polygon ordered counterclockwise about the
// carrier normal. The area of a point is 1 (counting measure).
struct FacetPolygon {
    int dim = 2;
    std::vector<Vec3> vertices;
    Hyperplane carrier;
    double area = 0;

    bool empty() const { return vertices.empty(); }
    // Vertex with the smallest first coordinate (near-ties by later coords).
    Vec3 lowest_vertex() const;
    double diameter() const;
};

double facet_area(int dim, std::span<const Vec3> vertices, const Vec3& normal);

class ConvexPolytope {
public:
    ConvexPolytope() = default;

    static ConvexPolytope interval(double a, double b);
    // Counterclockwise vertex list; orientation is fixed up if clockwise.
    static ConvexPolytope polygon(std::vector<Vec3> vertices);
    // Faces are vertex-index loops, counterclockwise seen from outside.
    static ConvexPolytope polyhedron(std::vector<Vec3> vertices, std::vector<std::vector<int>> faces);
    static ConvexPolytope box(int dim, const Vec3& lo, const Vec3& hi);
    static ConvexPolytope cube(int dim, double half_side);
    // Degenerate two-vertex polytope used for segment hitting measures.
    static ConvexPolytope segment(int dim, const Vec3& a, const Vec3& b);
    static ConvexPolytope convex_hull(int dim, std::span<const Vec3> points);
    // Intersection of halfspaces, clipped from a bounding box.
    static ConvexPolytope from_halfspaces(int dim, std::span<const Halfspace> hs, const Vec3& lo, const Vec3& hi);

    int dim() const { return dim_; }
    bool is_segment() const { return segment_; }
    const std::vector<Vec3>& vertices() const { return verts_; }
    const std::vector<std::vector<int>>& faces() const { return faces_; }
    double volume() const { return volume_; }

    double diameter() const;
    std::pair<double, double> projection(const Vec3& u) const;
    std::vector<Halfspace> halfspaces() const;
    std::vector<double> facet_areas() const;
    double surface_area() const;
    Vec3 vertex_centroid() const;
    std::pair<Vec3, Vec3> bounding_box() const;
    bool contains(const Vec3& x, double margin = 0) const;
    // Euclidean distance from x to the polytope (0 inside).
    double distance_to(const Vec3& x) const;

    ConvexPolytope scaled(double m) const;
    ConvexPolytope translated(const Vec3& v) const;
    // Keeps the part with <x,n> <= b. Empty optional if nothing of positive
    // volume remains.
    std::optional<ConvexPolytope> clipped(const Halfspace& h, double eps) const;
    // {x : x + S ⊂ P}, where S is given by its vertices.
    std::optional<ConvexPolytope> eroded_by_shape(std::span<const Vec3> shape, double eps) const;
    std::optional<ConvexPolytope> eroded(double delta, double eps) const;

    int euler_characteristic() const;

private:
    friend struct Cutter;
    void finish();

    int dim_ = 0;
    bool segment_ = false;
    std::vector<Vec3> verts_;
    std::vector<std::vector<int>> faces_;
    double volume_ = 0;
};

double support_width(const ConvexPolytope& p, const Vec3& u);
double mean_width(const ConvexPolytope& p);

struct SplitResult {
    ConvexPolytope plus;
    ConvexPolytope minus;
    FacetPolygon facet;
};

enum class SplitStatus { Ok, NoIntersection, Degenerate };

struct SplitAttempt {
    SplitStatus status = SplitStatus::NoIntersection;
    std::optional<SplitResult> result;
};

// eps_geom: on-plane tolerance; eps_vol: minimum piece volume.
SplitAttempt try_split(const ConvexPolytope& p, const Hyperplane& h, double eps_geom, double eps_vol);
SplitResult split_polytope(const ConvexPolytope& p, const Hyperplane& h, double eps_geom, double eps_vol);

// Clips a facet to <x,n> <= b.
FacetPolygon clip_facet(const FacetPolygon& f, const Halfspace& h);
// Vol_{d-1}(F ∩ B(center, radius)).
double facet_ball_measure(const FacetPolygon& f, const Vec3& center, double radius);
// Length of segment ab inside the disk/ball.
double segment_ball_length(const Vec3& a, const Vec3& b, const Vec3& center, double radius);
// Area of a planar polygon (2D coordinates in slots 0,1) inside a disk.
double polygon_disk_area(std::span<const Vec3> poly, const Vec3& center, double radius);

double set_covariance_ball(int d, double R, double r);
// Area of B(0,rho) ∩ B(l e, rho) in the plane.
double disk_lens_area(double rho, double l);

}  // namespace stitlab::geometry
