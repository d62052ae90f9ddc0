#include "stitlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "stitlab/errors.hpp"

namespace stitlab::io {

using geometry::ConvexPolytope;
using geometry::FacetPolygon;
using geometry::Hyperplane;
using measures::HyperplaneMeasureSpec;
using measures::MeasureKind;

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

json point(const Vec3& v, int dim) {
    json a = json::array();
    for (int i = 0; i < dim; ++i) a.push_back(v[i]);
    return a;
}

Vec3 read_point(const json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ConfigError("expected a point with " + std::to_string(dim) + " coordinates");
    Vec3 v{0, 0, 0};
    for (int i = 0; i < dim; ++i) v[i] = j[i].get<double>();
    return v;
}

json time_value(double x) { return std::isinf(x) ? json(nullptr) : json(x); }
double read_time(const json& j) { return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>(); }

json hyperplane_to_json(const Hyperplane& h) {
    return {{"normal", point(h.normal, h.dim)}, {"offset", h.offset}};
}

Hyperplane hyperplane_from_json(const json& j, int dim) {
    Hyperplane h;
    h.dim = dim;
    h.normal = read_point(j.at("normal"), dim);
    h.offset = j.at("offset").get<double>();
    return h;
}

// Fixed three-decimal text keeps SVG output small and byte-stable.
std::string fixed(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

// Parameter interval of a + s (b - a), s in [0, 1], inside the disk.
bool clip_to_disk(Vec3& a, Vec3& b, const Vec3& c, double r) {
    Vec3 d = b - a, f = a - c;
    double qa = dot(d, d), qb = 2 * dot(f, d), qc = dot(f, f) - r * r;
    double disc = qb * qb - 4 * qa * qc;
    if (qa == 0 || disc <= 0) return false;
    double sq = std::sqrt(disc);
    double s0 = std::max(0.0, (-qb - sq) / (2 * qa)), s1 = std::min(1.0, (-qb + sq) / (2 * qa));
    if (s1 <= s0) return false;
    Vec3 a0 = a;
    a = a0 + s0 * d;
    b = a0 + s1 * d;
    return true;
}

}  // namespace

json polytope_to_json(const ConvexPolytope& p) {
    json j;
    j["dim"] = p.dim();
    json v = json::array();
    for (const auto& x : p.vertices()) v.push_back(point(x, p.dim()));
    j["vertices"] = std::move(v);
    if (p.dim() == 3) j["faces"] = p.faces();
    return j;
}

ConvexPolytope polytope_from_json(const json& j) {
    int dim = j.at("dim").get<int>();
    std::vector<Vec3> v;
    for (const auto& x : j.at("vertices")) v.push_back(read_point(x, dim));
    switch (dim) {
        case 1:
            if (v.size() != 2) throw ConfigError("an interval needs two vertices");
            return ConvexPolytope::interval(std::min(v[0][0], v[1][0]), std::max(v[0][0], v[1][0]));
        case 2: return ConvexPolytope::polygon(std::move(v));
        case 3: return ConvexPolytope::polyhedron(std::move(v), j.at("faces").get<std::vector<std::vector<int>>>());
    }
    throw ConfigError("polytope dimension must be 1, 2 or 3");
}

json measure_to_json(const HyperplaneMeasureSpec& m) {
    switch (m.kind) {
        case MeasureKind::Isotropic: return {{"type", "isotropic"}};
        case MeasureKind::AxisCounting: return {{"type", "axis"}};
        case MeasureKind::DiscreteDirectional: {
            json dirs = json::array();
            for (const auto& d : m.directions)
                dirs.push_back({{"direction", point(d.direction, m.dim)}, {"weight", d.weight}});
            return {{"type", "discrete"}, {"directions", std::move(dirs)}};
        }
    }
    return {};
}

HyperplaneMeasureSpec measure_from_json(const json& j, int dim) {
    std::string type = j.at("type").get<std::string>();
    if (type == "isotropic") return HyperplaneMeasureSpec::isotropic(dim);
    if (type == "axis") return HyperplaneMeasureSpec::axis_counting(dim);
    if (type == "discrete") {
        std::vector<measures::WeightedDirection> dirs;
        for (const auto& d : j.at("directions"))
            dirs.push_back({read_point(d.at("direction"), dim), d.at("weight").get<double>()});
        return HyperplaneMeasureSpec::discrete(dim, std::move(dirs));
    }
    throw ConfigError("unknown measure type '" + type + "'");
}

json window_to_json(const Window& w) {
    json j;
    j["frame"] = polytope_to_json(w.frame);
    switch (w.region) {
        case Window::Region::Frame: j["region"] = "frame"; break;
        case Window::Region::Ball:
            j["region"] = "ball";
            j["center"] = point(w.center, w.dim());
            j["radius"] = w.radius;
            break;
        case Window::Region::Polytope:
            j["region"] = "polytope";
            j["observed"] = polytope_to_json(*w.observed);
            break;
    }
    return j;
}

Window window_from_json(const json& j) {
    Window w;
    w.frame = polytope_from_json(j.at("frame"));
    std::string region = j.at("region").get<std::string>();
    if (region == "frame") return w;
    if (region == "ball") {
        w.region = Window::Region::Ball;
        w.center = read_point(j.at("center"), w.dim());
        w.radius = j.at("radius").get<double>();
        return w;
    }
    if (region == "polytope") {
        w.region = Window::Region::Polytope;
        w.observed = polytope_from_json(j.at("observed"));
        return w;
    }
    throw ConfigError("unknown window region '" + region + "'");
}

json tessellation_to_json(const mnw::Tessellation& y) {
    const int dim = y.window.dim();
    json j;
    j["dim"] = dim;
    j["window"] = window_to_json(y.window);
    j["measure"] = measure_to_json(y.spec);
    j["t_end"] = y.t_end;
    j["checkpoint_times"] = y.checkpoint_times;
    j["checkpoint_totals"] = y.checkpoint_totals;
    j["total_surface"] = y.total_surface;
    j["split_count"] = y.split_count;
    j["final_cell_count"] = y.final_cell_count;
    j["cells_kept"] = y.cells_kept;
    j["facets_kept"] = y.facets_kept;
    json cells = json::array();
    for (const auto& c : y.cells)
        cells.push_back({{"polytope", polytope_to_json(c.polytope)},
                         {"birth_time", c.birth_time},
                         {"death_time", time_value(c.death_time)},
                         {"observed", c.observed}});
    j["cells"] = std::move(cells);
    json facets = json::array();
    for (const auto& f : y.facets) {
        json v = json::array();
        for (const auto& x : f.facet.vertices) v.push_back(point(x, dim));
        facets.push_back({{"vertices", std::move(v)},
                          {"carrier", hyperplane_to_json(f.facet.carrier)},
                          {"area", f.facet.area},
                          {"birth_time", f.birth_time},
                          {"parent_cell", f.parent_cell},
                          {"window_measure", f.window_measure}});
    }
    j["facets"] = std::move(facets);
    return j;
}

mnw::Tessellation tessellation_from_json(const json& j) {
    mnw::Tessellation y;
    const int dim = j.at("dim").get<int>();
    y.window = window_from_json(j.at("window"));
    if (y.window.dim() != dim) throw ConfigError("window dimension does not match the tessellation");
    const auto& m = j.at("measure");
    if (m.at("type") == "discrete") {
        // Stored directions are already normalized; keep them bit-exact.
        y.spec.kind = MeasureKind::DiscreteDirectional;
        y.spec.dim = dim;
        for (const auto& d : m.at("directions"))
            y.spec.directions.push_back({read_point(d.at("direction"), dim), d.at("weight").get<double>()});
    } else {
        y.spec = measure_from_json(m, dim);
    }
    y.t_end = j.at("t_end").get<double>();
    y.checkpoint_times = j.at("checkpoint_times").get<std::vector<double>>();
    y.checkpoint_totals = j.at("checkpoint_totals").get<std::vector<double>>();
    y.total_surface = j.at("total_surface").get<double>();
    y.split_count = j.at("split_count").get<std::size_t>();
    y.final_cell_count = j.at("final_cell_count").get<std::size_t>();
    y.cells_kept = j.at("cells_kept").get<bool>();
    y.facets_kept = j.at("facets_kept").get<bool>();
    for (const auto& c : j.at("cells")) {
        y.cells.push_back({polytope_from_json(c.at("polytope")), c.at("birth_time").get<double>(),
                           read_time(c.at("death_time")), c.at("observed").get<bool>()});
    }
    for (const auto& f : j.at("facets")) {
        mnw::IFacetRecord r;
        r.facet.dim = dim;
        for (const auto& x : f.at("vertices")) r.facet.vertices.push_back(read_point(x, dim));
        r.facet.carrier = hyperplane_from_json(f.at("carrier"), dim);
        r.facet.area = f.at("area").get<double>();
        r.birth_time = f.at("birth_time").get<double>();
        r.parent_cell = f.at("parent_cell").get<long>();
        r.window_measure = f.at("window_measure").get<double>();
        y.facets.push_back(std::move(r));
    }
    return y;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_tessellation(const std::filesystem::path& path, const mnw::Tessellation& y) {
    write_text(path, tessellation_to_json(y).dump(1) + "\n");
}

mnw::Tessellation read_tessellation(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    try {
        return tessellation_from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": malformed tessellation: " + e.what());
    }
}

std::string render_svg(const mnw::Tessellation& y, const RenderOptions& o) {
    if (y.window.dim() != 2) throw Unsupported("SVG rendering needs d = 2");
    auto [lo, hi] = y.window.frame.bounding_box();
    double size = std::max(hi[0] - lo[0], hi[1] - lo[1]);
    double scale = o.pixels / size;
    double base = (o.stroke_width > 0 ? o.stroke_width : size / 400) * scale;
    // SVG y axis points down.
    auto px = [&](const Vec3& v) { return fixed((v[0] - lo[0]) * scale) + "," + fixed((hi[1] - v[1]) * scale); };

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed((hi[0] - lo[0]) * scale) << "\" height=\""
      << fixed((hi[1] - lo[1]) * scale) << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<g stroke=\"black\" stroke-linecap=\"round\" fill=\"none\">\n";
    for (const auto& f : y.facets) {
        if (f.facet.vertices.size() != 2) continue;
        Vec3 a = f.facet.vertices[0], b = f.facet.vertices[1];
        if (y.window.region == Window::Region::Ball) {
            if (!clip_to_disk(a, b, y.window.center, y.window.radius)) continue;
        } else if (y.window.region == Window::Region::Polytope) {
            FacetPolygon g = f.facet;
            for (const auto& h : y.window.observed->halfspaces()) {
                g = geometry::clip_facet(g, h);
                if (g.empty()) break;
            }
            if (g.vertices.size() != 2) continue;
            a = g.vertices[0];
            b = g.vertices[1];
        }
        double w = base;
        if (o.stroke_by_birth && y.t_end > 0) w *= 1 - 0.75 * std::clamp(f.birth_time / y.t_end, 0.0, 1.0);
        s << "<path d=\"M" << px(a) << " L" << px(b) << "\" stroke-width=\"" << fixed(w) << "\"/>\n";
    }
    s << "</g>\n";
    // Window outline.
    s << "<g stroke=\"black\" fill=\"none\" stroke-width=\"" << fixed(2 * base) << "\">\n";
    if (y.window.region == Window::Region::Ball) {
        s << "<circle cx=\"" << fixed((y.window.center[0] - lo[0]) * scale) << "\" cy=\""
          << fixed((hi[1] - y.window.center[1]) * scale) << "\" r=\"" << fixed(y.window.radius * scale) << "\"/>\n";
    } else {
        const auto& p = y.window.region == Window::Region::Polytope ? *y.window.observed : y.window.frame;
        s << "<polygon points=\"";
        for (std::size_t i = 0; i < p.vertices().size(); ++i) s << (i ? " " : "") << px(p.vertices()[i]);
        s << "\"/>\n";
    }
    s << "</g>\n</svg>\n";
    return s.str();
}

std::string render_ply(const mnw::Tessellation& y) {
    if (y.window.dim() != 3) throw Unsupported("PLY rendering needs d = 3");
    const auto& frame = y.window.frame;
    std::size_t nv = frame.vertices().size();
    for (const auto& f : y.facets) nv += f.facet.vertices.size();
    std::vector<std::pair<int, int>> edges;
    for (const auto& face : frame.faces())
        for (std::size_t i = 0; i < face.size(); ++i) {
            int a = face[i], b = face[(i + 1) % face.size()];
            if (a < b) edges.emplace_back(a, b);
        }

    std::ostringstream s;
    s << "ply\nformat ascii 1.0\ncomment stitlab tessellation t_end " << format_double(y.t_end) << "\n";
    s << "element vertex " << nv << "\nproperty double x\nproperty double y\nproperty double z\n";
    s << "element face " << y.facets.size() << "\nproperty list uchar int vertex_indices\nproperty double birth_time\n";
    s << "element edge " << edges.size() << "\nproperty int vertex1\nproperty int vertex2\nend_header\n";
    auto vertex = [&](const Vec3& v) {
        s << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2]) << '\n';
    };
    for (const auto& v : frame.vertices()) vertex(v);
    for (const auto& f : y.facets)
        for (const auto& v : f.facet.vertices) vertex(v);
    std::size_t next = frame.vertices().size();
    for (const auto& f : y.facets) {
        s << f.facet.vertices.size();
        for (std::size_t i = 0; i < f.facet.vertices.size(); ++i) s << ' ' << next++;
        s << ' ' << format_double(f.birth_time) << '\n';
    }
    for (auto [a, b] : edges) s << a << ' ' << b << '\n';
    return s.str();
}

}  // namespace stitlab::io
