#include "stitlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "stitlab/errors.hpp"

namespace stitlab::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

double point_segment_distance(const Vec3& x, const Vec3& a, const Vec3& b) {
    Vec3 d = b - a;
    double dd = dot(d, d);
    double s = dd > 0 ? std::clamp(dot(x - a, d) / dd, 0.0, 1.0) : 0.0;
    return dist(x, a + s * d);
}

Vec3 newell_normal(std::span<const Vec3> pts) {
    Vec3 n{0, 0, 0};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec3& a = pts[i];
        const Vec3& b = pts[(i + 1) % pts.size()];
        n[0] += (a[1] - b[1]) * (a[2] + b[2]);
        n[1] += (a[2] - b[2]) * (a[0] + b[0]);
        n[2] += (a[0] - b[0]) * (a[1] + b[1]);
    }
    return n;
}

std::vector<Vec3> face_points(const std::vector<Vec3>& verts, const std::vector<int>& loop) {
    std::vector<Vec3> out;
    out.reserve(loop.size());
    for (int i : loop) out.push_back(verts[i]);
    return out;
}

// Signed area of triangle (0, a, b) intersected with the disk of radius r
// centered at the origin; planar coordinates in slots 0 and 1.
double triangle_disk_area(const Vec3& a, const Vec3& b, double r) {
    auto cross2 = [](const Vec3& p, const Vec3& q) { return p[0] * q[1] - p[1] * q[0]; };
    auto sector = [&](const Vec3& p, const Vec3& q) {
        double ang = std::atan2(cross2(p, q), p[0] * q[0] + p[1] * q[1]);
        return 0.5 * r * r * ang;
    };
    Vec3 d{b[0] - a[0], b[1] - a[1], 0};
    double A = d[0] * d[0] + d[1] * d[1];
    if (A == 0) return 0;
    double B = 2 * (a[0] * d[0] + a[1] * d[1]);
    double C = a[0] * a[0] + a[1] * a[1] - r * r;
    double disc = B * B - 4 * A * C;
    if (disc <= 0) return sector(a, b);
    double sq = std::sqrt(disc);
    double s1 = (-B - sq) / (2 * A);
    double s2 = (-B + sq) / (2 * A);
    if (s2 <= 0 || s1 >= 1) return sector(a, b);
    double lo = std::max(s1, 0.0);
    double hi = std::min(s2, 1.0);
    Vec3 p1{a[0] + lo * d[0], a[1] + lo * d[1], 0};
    Vec3 p2{a[0] + hi * d[0], a[1] + hi * d[1], 0};
    return sector(a, p1) + 0.5 * cross2(p1, p2) + sector(p2, b);
}

}  // namespace

Hyperplane Hyperplane::canonical(int dim, Vec3 u, double r) {
    bool flip = r < 0;
    if (r == 0) {
        for (int i = 0; i < 3; ++i) {
            if (u[i] != 0) {
                flip = u[i] < 0;
                break;
            }
        }
    }
    if (flip) {
        u = -u;
        r = -r;
    }
    return Hyperplane{dim, u, r};
}

Vec3 FacetPolygon::lowest_vertex() const {
    // Coordinates equal up to rounding count as ties, so that the choice does
    // not depend on how the facet was computed.
    double tol = 1e-9 * std::max(1.0, diameter());
    auto less = [tol](const Vec3& a, const Vec3& b) {
        for (int i = 0; i < 3; ++i)
            if (std::fabs(a[i] - b[i]) > tol) return a[i] < b[i];
        return false;
    };
    return *std::min_element(vertices.begin(), vertices.end(), less);
}

double FacetPolygon::diameter() const {
    double best = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j) best = std::max(best, dist(vertices[i], vertices[j]));
    return best;
}

double facet_area(int dim, std::span<const Vec3> v, const Vec3& normal) {
    if (dim == 1) return v.empty() ? 0.0 : 1.0;
    if (dim == 2) return v.size() < 2 ? 0.0 : dist(v[0], v[1]);
    if (v.size() < 3) return 0;
    Vec3 acc{0, 0, 0};
    for (std::size_t i = 1; i + 1 < v.size(); ++i) acc = acc + cross(v[i] - v[0], v[i + 1] - v[0]);
    return 0.5 * std::fabs(dot(acc, normal));
}

// ---------------------------------------------------------------------------
// Cutting a polytope by a hyperplane. Either side may come back empty.

struct CutOutput {
    std::optional<ConvexPolytope> plus;
    std::optional<ConvexPolytope> minus;
    std::vector<Vec3> section;
};

struct Cutter {
    static CutOutput cut(const ConvexPolytope& p, const Vec3& u, double r, double eps);

private:
    static CutOutput cut1(const ConvexPolytope& p, const Vec3& u, double r, double eps);
    static CutOutput cut2(const ConvexPolytope& p, const Vec3& u, double r, double eps);
    static CutOutput cut3(const ConvexPolytope& p, const Vec3& u, double r, double eps);
    static ConvexPolytope make(int dim, std::vector<Vec3> verts, std::vector<std::vector<int>> faces) {
        ConvexPolytope out;
        out.dim_ = dim;
        out.verts_ = std::move(verts);
        out.faces_ = std::move(faces);
        out.finish();
        return out;
    }
};

CutOutput Cutter::cut(const ConvexPolytope& p, const Vec3& u, double r, double eps) {
    switch (p.dim()) {
        case 1: return cut1(p, u, r, eps);
        case 2: return cut2(p, u, r, eps);
        default: return cut3(p, u, r, eps);
    }
}

CutOutput Cutter::cut1(const ConvexPolytope& p, const Vec3& u, double r, double eps) {
    CutOutput out;
    double a = p.verts_[0][0], b = p.verts_[1][0];
    double sa = a * u[0] - r, sb = b * u[0] - r;
    int ca = sa > eps ? 1 : (sa < -eps ? -1 : 0);
    int cb = sb > eps ? 1 : (sb < -eps ? -1 : 0);
    if (ca <= 0 && cb <= 0) {
        out.minus = p;
        return out;
    }
    if (ca >= 0 && cb >= 0) {
        out.plus = p;
        return out;
    }
    double x0 = r / u[0];
    ConvexPolytope left = ConvexPolytope::interval(a, x0);
    ConvexPolytope right = ConvexPolytope::interval(x0, b);
    if (ca > 0) {
        out.plus = left;
        out.minus = right;
    } else {
        out.plus = right;
        out.minus = left;
    }
    out.section = {Vec3{x0, 0, 0}};
    return out;
}

CutOutput Cutter::cut2(const ConvexPolytope& p, const Vec3& u, double r, double eps) {
    CutOutput out;
    const auto& V = p.verts_;
    const std::size_t n = V.size();
    std::vector<double> s(n);
    std::vector<int> c(n);
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = dot(V[i], u) - r;
        c[i] = s[i] > eps ? 1 : (s[i] < -eps ? -1 : 0);
        has_pos |= c[i] > 0;
        has_neg |= c[i] < 0;
    }
    if (!has_pos) {
        out.minus = p;
        return out;
    }
    if (!has_neg) {
        out.plus = p;
        return out;
    }
    std::vector<Vec3> pos, neg, on;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        if (c[i] >= 0) pos.push_back(V[i]);
        if (c[i] <= 0) neg.push_back(V[i]);
        if (c[i] == 0) on.push_back(V[i]);
        if (c[i] * c[j] < 0) {
            Vec3 x = lerp(V[i], V[j], s[i] / (s[i] - s[j]));
            pos.push_back(x);
            neg.push_back(x);
            on.push_back(x);
        }
    }
    if (pos.size() >= 3) out.plus = make(2, std::move(pos), {});
    if (neg.size() >= 3) out.minus = make(2, std::move(neg), {});
    if (on.size() > 2) {
        // Keep the two extreme points along the line.
        Vec3 dir{-u[1], u[0], 0};
        auto [lo, hi] = std::minmax_element(on.begin(), on.end(),
                                            [&](const Vec3& a, const Vec3& b) { return dot(a, dir) < dot(b, dir); });
        on = {*lo, *hi};
    }
    out.section = std::move(on);
    return out;
}

CutOutput Cutter::cut3(const ConvexPolytope& p, const Vec3& u, double r, double eps) {
    CutOutput out;
    std::vector<Vec3> V = p.verts_;
    const int n = static_cast<int>(V.size());
    std::vector<double> s(n);
    std::vector<int> c(n);
    bool has_pos = false, has_neg = false;
    for (int i = 0; i < n; ++i) {
        s[i] = dot(V[i], u) - r;
        c[i] = s[i] > eps ? 1 : (s[i] < -eps ? -1 : 0);
        has_pos |= c[i] > 0;
        has_neg |= c[i] < 0;
    }
    if (!has_pos) {
        out.minus = p;
        return out;
    }
    if (!has_neg) {
        out.plus = p;
        return out;
    }

    std::map<std::pair<int, int>, int> edge_point;
    std::vector<char> on_plane(n, 0);
    for (int i = 0; i < n; ++i) on_plane[i] = c[i] == 0;
    auto crossing = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = edge_point.find(key);
        if (it != edge_point.end()) return it->second;
        int idx = static_cast<int>(V.size());
        V.push_back(lerp(V[a], V[b], s[a] / (s[a] - s[b])));
        on_plane.push_back(1);
        edge_point.emplace(key, idx);
        return idx;
    };

    std::vector<std::vector<int>> pos_faces, neg_faces;
    for (const auto& loop : p.faces_) {
        std::vector<int> pos, neg;
        const std::size_t m = loop.size();
        for (std::size_t k = 0; k < m; ++k) {
            int a = loop[k], b = loop[(k + 1) % m];
            if (c[a] >= 0) pos.push_back(a);
            if (c[a] <= 0) neg.push_back(a);
            if (c[a] * c[b] < 0) {
                int x = crossing(a, b);
                pos.push_back(x);
                neg.push_back(x);
            }
        }
        auto flat = [&](const std::vector<int>& f) {
            return std::all_of(f.begin(), f.end(), [&](int i) { return on_plane[i] != 0; });
        };
        if (pos.size() >= 3 && !flat(pos)) pos_faces.push_back(std::move(pos));
        if (neg.size() >= 3 && !flat(neg)) neg_faces.push_back(std::move(neg));
    }

    std::vector<int> cap;
    for (int i = 0; i < static_cast<int>(V.size()); ++i) {
        if (!on_plane[i]) continue;
        bool dup = false;
        for (int j : cap) {
            if (dist(V[i], V[j]) <= eps) {
                dup = true;
                break;
            }
        }
        if (!dup) cap.push_back(i);
    }
    if (cap.size() < 3) return out;

    Vec3 centroid{0, 0, 0};
    for (int i : cap) centroid = centroid + V[i];
    centroid = (1.0 / cap.size()) * centroid;
    Vec3 e1, e2;
    plane_basis(u, e1, e2);
    std::vector<std::pair<double, int>> ang;
    for (int i : cap) {
        Vec3 d = V[i] - centroid;
        ang.emplace_back(std::atan2(dot(d, e2), dot(d, e1)), i);
    }
    std::sort(ang.begin(), ang.end());
    std::vector<int> cap_ccw;
    for (auto& [a, i] : ang) cap_ccw.push_back(i);
    for (int i : cap_ccw) out.section.push_back(V[i]);

    auto build = [&](std::vector<std::vector<int>> faces, std::vector<int> cap_loop) {
        faces.push_back(std::move(cap_loop));
        std::vector<int> remap(V.size(), -1);
        std::vector<Vec3> verts;
        for (auto& f : faces) {
            for (int& i : f) {
                if (remap[i] < 0) {
                    remap[i] = static_cast<int>(verts.size());
                    verts.push_back(V[i]);
                }
                i = remap[i];
            }
        }
        return make(3, std::move(verts), std::move(faces));
    };
    std::vector<int> cap_cw(cap_ccw.rbegin(), cap_ccw.rend());
    out.plus = build(std::move(pos_faces), std::move(cap_cw));
    out.minus = build(std::move(neg_faces), std::move(cap_ccw));
    return out;
}

// ---------------------------------------------------------------------------

void ConvexPolytope::finish() {
    segment_ = false;
    if (dim_ == 1) {
        volume_ = verts_[1][0] - verts_[0][0];
    } else if (dim_ == 2) {
        double a = 0;
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            const Vec3& p = verts_[i];
            const Vec3& q = verts_[(i + 1) % verts_.size()];
            a += p[0] * q[1] - p[1] * q[0];
        }
        volume_ = 0.5 * a;
    } else {
        const Vec3& o = verts_[0];
        double v = 0;
        for (const auto& f : faces_) {
            const Vec3& a = verts_[f[0]];
            for (std::size_t k = 1; k + 1 < f.size(); ++k)
                v += dot(a - o, cross(verts_[f[k]] - o, verts_[f[k + 1]] - o));
        }
        volume_ = v / 6.0;
    }
}

ConvexPolytope ConvexPolytope::interval(double a, double b) {
    ConvexPolytope p;
    p.dim_ = 1;
    p.verts_ = {Vec3{std::min(a, b), 0, 0}, Vec3{std::max(a, b), 0, 0}};
    p.finish();
    return p;
}

ConvexPolytope ConvexPolytope::polygon(std::vector<Vec3> vertices) {
    ConvexPolytope p;
    p.dim_ = 2;
    p.verts_ = std::move(vertices);
    p.finish();
    if (p.volume_ < 0) {
        std::reverse(p.verts_.begin(), p.verts_.end());
        p.volume_ = -p.volume_;
    }
    return p;
}

ConvexPolytope ConvexPolytope::polyhedron(std::vector<Vec3> vertices, std::vector<std::vector<int>> faces) {
    ConvexPolytope p;
    p.dim_ = 3;
    p.verts_ = std::move(vertices);
    p.faces_ = std::move(faces);
    p.finish();
    if (p.volume_ < 0) {
        for (auto& f : p.faces_) std::reverse(f.begin(), f.end());
        p.volume_ = -p.volume_;
    }
    return p;
}

ConvexPolytope ConvexPolytope::box(int dim, const Vec3& lo, const Vec3& hi) {
    if (dim == 1) return interval(lo[0], hi[0]);
    if (dim == 2) return polygon({{lo[0], lo[1], 0}, {hi[0], lo[1], 0}, {hi[0], hi[1], 0}, {lo[0], hi[1], 0}});
    std::vector<Vec3> v;
    for (int k = 0; k < 8; ++k)
        v.push_back({(k & 1) ? hi[0] : lo[0], (k & 2) ? hi[1] : lo[1], (k & 4) ? hi[2] : lo[2]});
    // Bit 0 = x, bit 1 = y, bit 2 = z.
    std::vector<std::vector<int>> f = {
        {0, 2, 3, 1},  // z = lo
        {4, 5, 7, 6},  // z = hi
        {0, 1, 5, 4},  // y = lo
        {2, 6, 7, 3},  // y = hi
        {0, 4, 6, 2},  // x = lo
        {1, 3, 7, 5},  // x = hi
    };
    return polyhedron(std::move(v), std::move(f));
}

ConvexPolytope ConvexPolytope::cube(int dim, double half_side) {
    return box(dim, {-half_side, -half_side, -half_side}, {half_side, half_side, half_side});
}

ConvexPolytope ConvexPolytope::segment(int dim, const Vec3& a, const Vec3& b) {
    if (dim == 1) return interval(a[0], b[0]);
    ConvexPolytope p;
    p.dim_ = dim;
    p.verts_ = {a, b};
    p.segment_ = true;
    p.volume_ = 0;
    return p;
}

ConvexPolytope ConvexPolytope::from_halfspaces(int dim, std::span<const Halfspace> hs, const Vec3& lo, const Vec3& hi) {
    ConvexPolytope p = box(dim, lo, hi);
    double eps = 1e-12 * dist(lo, hi);
    for (const auto& h : hs) {
        auto c = p.clipped(h, eps);
        if (!c) throw DomainError("halfspace intersection is empty");
        p = std::move(*c);
    }
    return p;
}

ConvexPolytope ConvexPolytope::convex_hull(int dim, std::span<const Vec3> pts) {
    if (pts.size() < static_cast<std::size_t>(dim + 1)) throw DomainError("too few points for a convex hull");
    Vec3 lo = pts[0], hi = pts[0];
    for (const auto& q : pts)
        for (int i = 0; i < 3; ++i) {
            lo[i] = std::min(lo[i], q[i]);
            hi[i] = std::max(hi[i], q[i]);
        }
    if (dim == 1) return interval(lo[0], hi[0]);
    if (dim == 2) {
        std::vector<Vec3> s(pts.begin(), pts.end());
        std::sort(s.begin(), s.end());
        auto turn = [](const Vec3& o, const Vec3& a, const Vec3& b) {
            return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
        };
        std::vector<Vec3> h(2 * s.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            while (k >= 2 && turn(h[k - 2], h[k - 1], s[i]) <= 0) --k;
            h[k++] = s[i];
        }
        for (std::size_t i = s.size() - 1, t = k + 1; i-- > 0;) {
            while (k >= t && turn(h[k - 2], h[k - 1], s[i]) <= 0) --k;
            h[k++] = s[i];
        }
        h.resize(k - 1);
        auto poly = polygon(std::move(h));
        if (poly.volume() <= 0) throw DomainError("degenerate convex hull");
        return poly;
    }
    double tol = 1e-12 * dist(lo, hi);
    std::vector<Halfspace> hs;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec3 nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
                double len = norm(nrm);
                if (len <= tol * tol) continue;
                nrm = (1.0 / len) * nrm;
                double b = dot(nrm, pts[i]);
                bool above = false, below = false;
                for (const auto& q : pts) {
                    double sd = dot(nrm, q) - b;
                    above |= sd > tol;
                    below |= sd < -tol;
                }
                if (above && below) continue;
                if (above) {
                    nrm = -nrm;
                    b = -b;
                }
                hs.push_back({nrm, b});
            }
    auto poly = from_halfspaces(3, hs, lo, hi);
    if (poly.volume() <= 0) throw DomainError("degenerate convex hull");
    return poly;
}

double ConvexPolytope::diameter() const {
    double best = 0;
    for (std::size_t i = 0; i < verts_.size(); ++i)
        for (std::size_t j = i + 1; j < verts_.size(); ++j) best = std::max(best, dist(verts_[i], verts_[j]));
    return best;
}

std::pair<double, double> ConvexPolytope::projection(const Vec3& u) const {
    double lo = dot(verts_[0], u), hi = lo;
    for (std::size_t i = 1; i < verts_.size(); ++i) {
        double x = dot(verts_[i], u);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return {lo, hi};
}

std::vector<Halfspace> ConvexPolytope::halfspaces() const {
    std::vector<Halfspace> out;
    if (dim_ == 1) {
        out.push_back({{-1, 0, 0}, -verts_[0][0]});
        out.push_back({{1, 0, 0}, verts_[1][0]});
    } else if (dim_ == 2) {
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            const Vec3& a = verts_[i];
            const Vec3& b = verts_[(i + 1) % verts_.size()];
            Vec3 n = normalized(Vec3{b[1] - a[1], a[0] - b[0], 0});
            out.push_back({n, dot(n, a)});
        }
    } else {
        for (const auto& f : faces_) {
            auto pts = face_points(verts_, f);
            Vec3 n = normalized(newell_normal(pts));
            Vec3 c{0, 0, 0};
            for (const auto& q : pts) c = c + q;
            c = (1.0 / pts.size()) * c;
            out.push_back({n, dot(n, c)});
        }
    }
    return out;
}

std::vector<double> ConvexPolytope::facet_areas() const {
    std::vector<double> out;
    if (dim_ == 1) return {1.0, 1.0};
    if (dim_ == 2) {
        for (std::size_t i = 0; i < verts_.size(); ++i) out.push_back(dist(verts_[i], verts_[(i + 1) % verts_.size()]));
        return out;
    }
    for (const auto& f : faces_) out.push_back(0.5 * norm(newell_normal(face_points(verts_, f))));
    return out;
}

double ConvexPolytope::surface_area() const {
    double s = 0;
    for (double a : facet_areas()) s += a;
    return s;
}

Vec3 ConvexPolytope::vertex_centroid() const {
    Vec3 c{0, 0, 0};
    for (const auto& v : verts_) c = c + v;
    return (1.0 / verts_.size()) * c;
}

std::pair<Vec3, Vec3> ConvexPolytope::bounding_box() const {
    Vec3 lo = verts_[0], hi = verts_[0];
    for (const auto& v : verts_)
        for (int i = 0; i < 3; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    return {lo, hi};
}

bool ConvexPolytope::contains(const Vec3& x, double margin) const {
    for (const auto& h : halfspaces())
        if (dot(h.normal, x) > h.bound - margin) return false;
    return true;
}

double ConvexPolytope::distance_to(const Vec3& x) const {
    if (dim_ == 1) return std::max({verts_[0][0] - x[0], x[0] - verts_[1][0], 0.0});
    if (contains(x)) return 0;
    double best = std::numeric_limits<double>::infinity();
    if (dim_ == 2) {
        for (std::size_t i = 0; i < verts_.size(); ++i)
            best = std::min(best, point_segment_distance(x, verts_[i], verts_[(i + 1) % verts_.size()]));
        return best;
    }
    for (const auto& f : faces_) {
        auto pts = face_points(verts_, f);
        Vec3 n = normalized(newell_normal(pts));
        double sd = dot(x - pts[0], n);
        Vec3 proj = x - sd * n;
        bool inside = true;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Vec3& a = pts[i];
            const Vec3& b = pts[(i + 1) % pts.size()];
            if (dot(cross(b - a, proj - a), n) < 0) {
                inside = false;
                break;
            }
        }
        if (inside) {
            best = std::min(best, std::fabs(sd));
        } else {
            for (std::size_t i = 0; i < pts.size(); ++i)
                best = std::min(best, point_segment_distance(x, pts[i], pts[(i + 1) % pts.size()]));
        }
    }
    return best;
}

ConvexPolytope ConvexPolytope::scaled(double m) const {
    ConvexPolytope p = *this;
    for (auto& v : p.verts_) v = m * v;
    if (!segment_) p.finish();
    return p;
}

ConvexPolytope ConvexPolytope::translated(const Vec3& d) const {
    ConvexPolytope p = *this;
    for (auto& v : p.verts_) v = v + d;
    if (!segment_) p.finish();
    return p;
}

std::optional<ConvexPolytope> ConvexPolytope::clipped(const Halfspace& h, double eps) const {
    auto out = Cutter::cut(*this, h.normal, h.bound, eps);
    if (out.minus && out.minus->volume() > 0) return out.minus;
    return std::nullopt;
}

std::optional<ConvexPolytope> ConvexPolytope::eroded_by_shape(std::span<const Vec3> shape, double eps) const {
    std::optional<ConvexPolytope> p = *this;
    for (const auto& h : halfspaces()) {
        double shift = -std::numeric_limits<double>::infinity();
        for (const auto& s : shape) shift = std::max(shift, dot(h.normal, s));
        p = p->clipped({h.normal, h.bound - shift}, eps);
        if (!p) return std::nullopt;
    }
    return p;
}

std::optional<ConvexPolytope> ConvexPolytope::eroded(double delta, double eps) const {
    std::optional<ConvexPolytope> p = *this;
    for (const auto& h : halfspaces()) {
        p = p->clipped({h.normal, h.bound - delta}, eps);
        if (!p) return std::nullopt;
    }
    return p;
}

int ConvexPolytope::euler_characteristic() const {
    if (dim_ != 3) return 1;
    std::map<std::pair<int, int>, int> edges;
    for (const auto& f : faces_)
        for (std::size_t k = 0; k < f.size(); ++k) edges[std::minmax(f[k], f[(k + 1) % f.size()])]++;
    return static_cast<int>(verts_.size()) - static_cast<int>(edges.size()) + static_cast<int>(faces_.size());
}

// ---------------------------------------------------------------------------

double support_width(const ConvexPolytope& p, const Vec3& u) {
    auto [lo, hi] = p.projection(u);
    return hi - lo;
}

double mean_width(const ConvexPolytope& p) {
    const auto& v = p.vertices();
    if (p.dim() == 1) return v[1][0] - v[0][0];
    if (p.dim() == 2) {
        double per = 0;
        for (std::size_t i = 0; i < v.size(); ++i) per += dist(v[i], v[(i + 1) % v.size()]);
        return per / kPi;
    }
    if (p.is_segment()) return 0.5 * dist(v[0], v[1]);
    auto hs = p.halfspaces();
    std::map<std::pair<int, int>, std::vector<int>> edge_faces;
    const auto& faces = p.faces();
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const auto& f = faces[fi];
        for (std::size_t k = 0; k < f.size(); ++k)
            edge_faces[std::minmax(f[k], f[(k + 1) % f.size()])].push_back(static_cast<int>(fi));
    }
    double sum = 0;
    for (const auto& [e, fs] : edge_faces) {
        if (fs.size() != 2) continue;
        double c = std::clamp(dot(hs[fs[0]].normal, hs[fs[1]].normal), -1.0, 1.0);
        sum += dist(v[e.first], v[e.second]) * std::acos(c);
    }
    return sum / (4 * kPi);
}

SplitAttempt try_split(const ConvexPolytope& p, const Hyperplane& h, double eps_geom, double eps_vol) {
    SplitAttempt attempt;
    auto out = Cutter::cut(p, h.normal, h.offset, eps_geom);
    if (!out.plus || !out.minus) {
        attempt.status = SplitStatus::NoIntersection;
        return attempt;
    }
    FacetPolygon facet;
    facet.dim = p.dim();
    facet.carrier = h;
    facet.vertices = std::move(out.section);
    facet.area = facet_area(p.dim(), facet.vertices, h.normal);
    if (out.plus->volume() < eps_vol || out.minus->volume() < eps_vol || facet.vertices.empty() ||
        (p.dim() == 3 && facet.vertices.size() < 3)) {
        attempt.status = SplitStatus::Degenerate;
        return attempt;
    }
    attempt.status = SplitStatus::Ok;
    attempt.result = SplitResult{std::move(*out.plus), std::move(*out.minus), std::move(facet)};
    return attempt;
}

SplitResult split_polytope(const ConvexPolytope& p, const Hyperplane& h, double eps_geom, double eps_vol) {
    auto a = try_split(p, h, eps_geom, eps_vol);
    if (a.status == SplitStatus::NoIntersection) throw NoIntersection("hyperplane does not cut the polytope interior");
    if (a.status == SplitStatus::Degenerate) throw DegenerateSplit("split produced a piece below the volume tolerance");
    return std::move(*a.result);
}

FacetPolygon clip_facet(const FacetPolygon& f, const Halfspace& h) {
    FacetPolygon out = f;
    out.vertices.clear();
    out.area = 0;
    if (f.empty()) return out;
    auto sd = [&](const Vec3& x) { return dot(h.normal, x) - h.bound; };
    if (f.dim == 1) {
        if (sd(f.vertices[0]) <= 0) {
            out.vertices = f.vertices;
            out.area = 1;
        }
        return out;
    }
    if (f.dim == 2) {
        Vec3 a = f.vertices[0], b = f.vertices[1];
        double sa = sd(a), sb = sd(b);
        if (sa > 0 && sb > 0) return out;
        if (sa > 0) a = lerp(a, b, sa / (sa - sb));
        if (sb > 0) b = lerp(a, f.vertices[1], sd(a) / (sd(a) - sb));
        out.vertices = {a, b};
        out.area = dist(a, b);
        return out;
    }
    const auto& v = f.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec3& a = v[i];
        const Vec3& b = v[(i + 1) % v.size()];
        double sa = sd(a), sb = sd(b);
        if (sa <= 0) out.vertices.push_back(a);
        if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0)) out.vertices.push_back(lerp(a, b, sa / (sa - sb)));
    }
    if (out.vertices.size() < 3) {
        out.vertices.clear();
        return out;
    }
    out.area = facet_area(3, out.vertices, f.carrier.normal);
    return out;
}

double segment_ball_length(const Vec3& a, const Vec3& b, const Vec3& center, double radius) {
    Vec3 d = b - a;
    Vec3 m = a - center;
    double A = dot(d, d);
    if (A == 0) return 0;
    double B = 2 * dot(m, d);
    double C = dot(m, m) - radius * radius;
    double disc = B * B - 4 * A * C;
    if (disc <= 0) return 0;
    double sq = std::sqrt(disc);
    double lo = std::max((-B - sq) / (2 * A), 0.0);
    double hi = std::min((-B + sq) / (2 * A), 1.0);
    return hi > lo ? (hi - lo) * std::sqrt(A) : 0.0;
}

double polygon_disk_area(std::span<const Vec3> poly, const Vec3& center, double radius) {
    double a = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec3& p = poly[i];
        const Vec3& q = poly[(i + 1) % poly.size()];
        a += triangle_disk_area({p[0] - center[0], p[1] - center[1], 0}, {q[0] - center[0], q[1] - center[1], 0},
                                radius);
    }
    return std::fabs(a);
}

double facet_ball_measure(const FacetPolygon& f, const Vec3& center, double radius) {
    if (f.empty()) return 0;
    if (f.dim == 1) return std::fabs(f.vertices[0][0] - center[0]) < radius ? 1.0 : 0.0;
    if (f.dim == 2) return segment_ball_length(f.vertices[0], f.vertices[1], center, radius);
    const Vec3& n = f.carrier.normal;
    double h = f.carrier.signed_distance(center);
    double rho2 = radius * radius - h * h;
    if (rho2 <= 0) return 0;
    Vec3 c = center - h * n;
    Vec3 e1, e2;
    plane_basis(n, e1, e2);
    std::vector<Vec3> local;
    local.reserve(f.vertices.size());
    for (const auto& v : f.vertices) {
        Vec3 d = v - c;
        local.push_back({dot(d, e1), dot(d, e2), 0});
    }
    return polygon_disk_area(local, {0, 0, 0}, std::sqrt(rho2));
}

double set_covariance_ball(int d, double R, double r) {
    if (r >= 2 * R) return 0;
    if (d == 2) return 2 * R * R * std::acos(r / (2 * R)) - 0.5 * r * std::sqrt(4 * R * R - r * r);
    if (d == 3) return (4 * kPi / 3) * R * R * R * (1 - 3 * r / (4 * R) + r * r * r / (16 * R * R * R));
    throw DomainError("set covariance of the ball is implemented for d in {2,3}");
}

double disk_lens_area(double rho, double l) { return set_covariance_ball(2, rho, l); }

}  // namespace stitlab::geometry
