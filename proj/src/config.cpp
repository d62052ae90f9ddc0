#include "stitlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "stitlab/errors.hpp"
#include "stitlab/io.hpp"

namespace stitlab::cli {

using nlohmann::json;
using measures::MeasureKind;

namespace {

const std::pair<ExperimentKind, const char*> kKindNames[] = {
    {ExperimentKind::Simulate, "simulate"},   {ExperimentKind::Verify, "verify"},
    {ExperimentKind::Clt2d, "clt2d"},         {ExperimentKind::Clt3d, "clt3d"},
    {ExperimentKind::Increment, "increment"}, {ExperimentKind::IterateTest, "iterate-test"},
    {ExperimentKind::Compare, "compare"},     {ExperimentKind::Render, "render"},
};

std::size_t line_of(const std::string& text, std::size_t pos) {
    return 1 + std::count(text.begin(), text.begin() + std::min(pos, text.size()), '\n');
}

// Reads fields while tracking the path, so errors can point at the line of
// the offending key.
class Reader {
public:
    Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& what) const {
        std::string field;
        std::size_t pos = 0;
        bool found = true;
        for (const auto& key : path) {
            field += (field.empty() ? "" : ".") + key;
            if (!found) continue;
            auto p = text_.find("\"" + key + "\"", pos);
            if (p == std::string::npos) found = false;
            else pos = p;
        }
        std::string where = source_ + (found && !path.empty() ? ":" + std::to_string(line_of(text_, pos)) : "");
        throw ConfigError(where + ": field '" + field + "': " + what);
    }

    void check_keys(const json& obj, const std::vector<std::string>& path, const std::set<std::string>& allowed) const {
        if (!obj.is_object()) fail(path, "expected an object");
        for (const auto& [k, v] : obj.items())
            if (!allowed.count(k)) {
                auto p = path;
                p.push_back(k);
                fail(p, "unknown field");
            }
    }

    double number(const json& obj, std::vector<std::string> path) const {
        const json& v = at(obj, path);
        if (!v.is_number()) fail(path, "expected a number");
        double x = v.get<double>();
        if (!std::isfinite(x)) fail(path, "must be finite");
        return x;
    }

    double positive(const json& obj, std::vector<std::string> path) const {
        double x = number(obj, path);
        if (!(x > 0)) fail(path, "must be positive");
        return x;
    }

    std::uint64_t unsigned_int(const json& obj, std::vector<std::string> path) const {
        const json& v = at(obj, path);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            fail(path, "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }

    std::string string(const json& obj, std::vector<std::string> path) const {
        const json& v = at(obj, path);
        if (!v.is_string()) fail(path, "expected a string");
        return v.get<std::string>();
    }

    bool boolean(const json& obj, std::vector<std::string> path) const {
        const json& v = at(obj, path);
        if (!v.is_boolean()) fail(path, "expected true or false");
        return v.get<bool>();
    }

    std::vector<double> numbers(const json& obj, std::vector<std::string> path) const {
        const json& v = at(obj, path);
        if (!v.is_array()) fail(path, "expected an array of numbers");
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number() || !std::isfinite(x.get<double>())) fail(path, "expected an array of finite numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }

    Vec3 point(const json& obj, std::vector<std::string> path, int dim) const {
        auto v = numbers(obj, path);
        if (static_cast<int>(v.size()) != dim) fail(path, "expected " + std::to_string(dim) + " coordinates");
        Vec3 p{0, 0, 0};
        std::copy(v.begin(), v.end(), p.begin());
        return p;
    }

    // Value at the last path key inside obj.
    const json& at(const json& obj, const std::vector<std::string>& path) const {
        auto it = obj.find(path.back());
        if (it == obj.end()) fail(path, "missing");
        return *it;
    }

private:
    const std::string& text_;
    std::string source_;
};

json point_json(const Vec3& p, int dim) { return std::vector<double>(p.begin(), p.begin() + dim); }

void require_sorted(const Reader& r, const std::vector<double>& v, const std::vector<std::string>& path) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) r.fail(path, "must be strictly increasing");
}

}  // namespace

std::string to_string(ExperimentKind k) {
    for (auto [kind, name] : kKindNames)
        if (kind == k) return name;
    return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    for (auto [kind, name] : kKindNames)
        if (s == name) return kind;
    throw ConfigError("unknown experiment '" + s + "'");
}

bool MeasureConfig::operator==(const MeasureConfig& o) const {
    if (kind != o.kind || directions.size() != o.directions.size()) return false;
    for (std::size_t i = 0; i < directions.size(); ++i)
        if (directions[i].direction != o.directions[i].direction || directions[i].weight != o.directions[i].weight)
            return false;
    return true;
}

measures::HyperplaneMeasureSpec ExperimentConfig::measure_spec() const {
    switch (measure.kind) {
        case MeasureKind::Isotropic: return measures::HyperplaneMeasureSpec::isotropic(dimension);
        case MeasureKind::AxisCounting: return measures::HyperplaneMeasureSpec::axis_counting(dimension);
        case MeasureKind::DiscreteDirectional:
            return measures::HyperplaneMeasureSpec::discrete(dimension, measure.directions);
    }
    throw ConfigError("unknown measure");
}

Window ExperimentConfig::build_window(double R) const {
    using geometry::ConvexPolytope;
    switch (window.type) {
        case WindowConfig::Type::Ball: return Window::ball(dimension, R * window.radius, R * window.center);
        case WindowConfig::Type::Box: return Window::polytope(ConvexPolytope::box(dimension, R * window.lo, R * window.hi));
        case WindowConfig::Type::Polytope: {
            std::vector<Vec3> v;
            for (const auto& p : window.vertices) v.push_back(R * p);
            return Window::polytope(ConvexPolytope::convex_hull(dimension, v));
        }
    }
    throw ConfigError("unknown window");
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ":" + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                          ": invalid JSON: " + e.what());
    }
    Reader r(text, source);
    r.check_keys(j, {},
                 {"experiment", "dimension", "window", "measure", "t", "replicates", "seed", "checkpoints", "erosion",
                  "r_grid", "element_size", "radii", "s0", "iterate", "z_max", "render", "output"});

    ExperimentConfig c;
    try {
        c.kind = experiment_kind_from_string(r.string(j, {"experiment"}));
    } catch (const ConfigError&) {
        r.fail({"experiment"}, "must be one of simulate, verify, clt2d, clt3d, increment, iterate-test, compare, render");
    }
    auto dim = r.unsigned_int(j, {"dimension"});
    if (dim < 1 || dim > 3) r.fail({"dimension"}, "must be 1, 2 or 3");
    c.dimension = static_cast<int>(dim);
    const int d = c.dimension;

    const json& w = r.at(j, {"window"});
    std::string wtype = r.string(w, {"window", "type"});
    if (wtype == "ball") {
        r.check_keys(w, {"window"}, {"type", "radius", "center"});
        c.window.type = WindowConfig::Type::Ball;
        c.window.radius = r.positive(w, {"window", "radius"});
        if (w.contains("center")) c.window.center = r.point(w, {"window", "center"}, d);
    } else if (wtype == "box") {
        r.check_keys(w, {"window"}, {"type", "lo", "hi"});
        c.window.type = WindowConfig::Type::Box;
        c.window.lo = r.point(w, {"window", "lo"}, d);
        c.window.hi = r.point(w, {"window", "hi"}, d);
        for (int i = 0; i < d; ++i)
            if (!(c.window.hi[i] > c.window.lo[i])) r.fail({"window", "hi"}, "must exceed lo in every coordinate");
    } else if (wtype == "polytope") {
        r.check_keys(w, {"window"}, {"type", "vertices"});
        c.window.type = WindowConfig::Type::Polytope;
        const json& vs = r.at(w, {"window", "vertices"});
        if (!vs.is_array()) r.fail({"window", "vertices"}, "expected an array of points");
        for (std::size_t i = 0; i < vs.size(); ++i) {
            json holder = {{"vertices", vs[i]}};
            c.window.vertices.push_back(r.point(holder, {"window", "vertices"}, d));
        }
        if (c.window.vertices.size() < static_cast<std::size_t>(d + 1))
            r.fail({"window", "vertices"}, "needs at least d + 1 points");
    } else {
        r.fail({"window", "type"}, "must be ball, box or polytope");
    }

    if (j.contains("measure")) {
        const json& m = j["measure"];
        r.check_keys(m, {"measure"}, {"type", "directions"});
        std::string mtype = r.string(m, {"measure", "type"});
        if (mtype == "isotropic") c.measure.kind = MeasureKind::Isotropic;
        else if (mtype == "axis") c.measure.kind = MeasureKind::AxisCounting;
        else if (mtype == "discrete") {
            c.measure.kind = MeasureKind::DiscreteDirectional;
            const json& ds = r.at(m, {"measure", "directions"});
            if (!ds.is_array() || ds.empty()) r.fail({"measure", "directions"}, "expected a non-empty array");
            for (const auto& e : ds) {
                r.check_keys(e, {"measure", "directions"}, {"direction", "weight"});
                c.measure.directions.push_back(
                    {r.point(e, {"measure", "directions", "direction"}, d), r.positive(e, {"measure", "directions", "weight"})});
            }
        } else {
            r.fail({"measure", "type"}, "must be isotropic, axis or discrete");
        }
        if (c.measure.kind != MeasureKind::Isotropic && d == 1) r.fail({"measure", "type"}, "d = 1 needs isotropic");
    }

    c.t = r.positive(j, {"t"});
    c.replicates = r.unsigned_int(j, {"replicates"});
    if (c.replicates < 1) r.fail({"replicates"}, "must be at least 1");
    c.seed = r.unsigned_int(j, {"seed"});
    if (j.contains("checkpoints")) {
        c.checkpoints = r.numbers(j, {"checkpoints"});
        require_sorted(r, c.checkpoints, {"checkpoints"});
        for (double x : c.checkpoints)
            if (!(x > 0 && x <= c.t)) r.fail({"checkpoints"}, "must lie in (0, t]");
    }
    if (j.contains("erosion")) c.erosion = r.positive(j, {"erosion"});
    if (j.contains("r_grid")) {
        c.r_grid = r.numbers(j, {"r_grid"});
        require_sorted(r, c.r_grid, {"r_grid"});
        if (!c.r_grid.empty() && !(c.r_grid.front() > 0)) r.fail({"r_grid"}, "radii must be positive");
    }
    if (j.contains("element_size")) c.element_size = r.positive(j, {"element_size"});
    if (j.contains("radii")) {
        c.radii = r.numbers(j, {"radii"});
        require_sorted(r, c.radii, {"radii"});
        if (!c.radii.empty() && !(c.radii.front() > 0)) r.fail({"radii"}, "must be positive");
    }
    if (j.contains("s0")) c.s0 = r.positive(j, {"s0"});
    if (j.contains("iterate")) {
        const json& it = j["iterate"];
        r.check_keys(it, {"iterate"}, {"s", "u"});
        c.iterate_s = r.positive(it, {"iterate", "s"});
        c.iterate_u = r.positive(it, {"iterate", "u"});
    }
    if (j.contains("z_max")) c.z_max = r.positive(j, {"z_max"});
    if (j.contains("render")) {
        const json& re = j["render"];
        r.check_keys(re, {"render"}, {"format", "stroke_by_birth", "input"});
        if (re.contains("format")) c.render.format = r.string(re, {"render", "format"});
        if (c.render.format != "svg" && c.render.format != "ply") r.fail({"render", "format"}, "must be svg or ply");
        if (re.contains("stroke_by_birth")) c.render.stroke_by_birth = r.boolean(re, {"render", "stroke_by_birth"});
        if (re.contains("input")) c.render.input = r.string(re, {"render", "input"});
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        r.check_keys(o, {"output"}, {"prefix"});
        if (o.contains("prefix")) c.output_prefix = r.string(o, {"output", "prefix"});
        if (c.output_prefix.find_first_of("/\\") != std::string::npos)
            r.fail({"output", "prefix"}, "must be a plain file name prefix");
    }

    // Experiment-specific requirements.
    bool iso = c.measure.kind == MeasureKind::Isotropic;
    switch (c.kind) {
        case ExperimentKind::Verify:
        case ExperimentKind::IterateTest:
            if (c.replicates < 2) r.fail({"replicates"}, "needs at least 2 replicates");
            break;
        case ExperimentKind::Clt2d:
        case ExperimentKind::Clt3d:
        case ExperimentKind::Increment: {
            int need = c.kind == ExperimentKind::Clt3d ? 3 : 2;
            if (c.kind != ExperimentKind::Increment && d != need)
                r.fail({"dimension"}, "must be " + std::to_string(need) + " for this experiment");
            if (d < 2) r.fail({"dimension"}, "must be at least 2 for this experiment");
            if (c.radii.empty()) r.fail({"radii"}, "needs at least one window scaling");
            if (c.replicates < 8) r.fail({"replicates"}, "needs at least 8 replicates");
            if (c.kind == ExperimentKind::Increment) {
                if (c.t != 1) r.fail({"t"}, "the increment experiment runs to time 1");
                if (!(c.s0 < c.t)) r.fail({"s0"}, "must be below t");
            }
            break;
        }
        case ExperimentKind::Compare:
            if (d != 2 && d != 3) r.fail({"dimension"}, "must be 2 or 3 for compare");
            if (!iso) r.fail({"measure", "type"}, "compare needs the isotropic measure");
            if (c.r_grid.empty()) r.fail({"r_grid"}, "needs at least one radius");
            if (c.replicates < 2) r.fail({"replicates"}, "needs at least 2 replicates");
            for (double R : c.radii)
                if (!(R > 1)) r.fail({"radii"}, "table radii must exceed 1");
            break;
        case ExperimentKind::Render:
            if (c.render.input.empty() && d == 1) r.fail({"dimension"}, "rendering needs d = 2 or 3");
            break;
        case ExperimentKind::Simulate: break;
    }
    if (!c.r_grid.empty() && d < 2) r.fail({"r_grid"}, "K-function estimation needs d >= 2");

    try {
        c.measure_spec();
        c.build_window();
    } catch (const Error& e) {
        r.fail({"window"}, e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = io::read_text(path);
    } catch (const std::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(text, path.string());
}

std::string serialize_config(const ExperimentConfig& c) {
    const int d = c.dimension;
    json j;
    j["experiment"] = to_string(c.kind);
    j["dimension"] = d;
    json w;
    switch (c.window.type) {
        case WindowConfig::Type::Ball:
            w = {{"type", "ball"}, {"radius", c.window.radius}, {"center", point_json(c.window.center, d)}};
            break;
        case WindowConfig::Type::Box:
            w = {{"type", "box"}, {"lo", point_json(c.window.lo, d)}, {"hi", point_json(c.window.hi, d)}};
            break;
        case WindowConfig::Type::Polytope: {
            json vs = json::array();
            for (const auto& p : c.window.vertices) vs.push_back(point_json(p, d));
            w = {{"type", "polytope"}, {"vertices", vs}};
            break;
        }
    }
    j["window"] = w;
    json m;
    switch (c.measure.kind) {
        case MeasureKind::Isotropic: m = {{"type", "isotropic"}}; break;
        case MeasureKind::AxisCounting: m = {{"type", "axis"}}; break;
        case MeasureKind::DiscreteDirectional: {
            json ds = json::array();
            for (const auto& e : c.measure.directions)
                ds.push_back({{"direction", point_json(e.direction, d)}, {"weight", e.weight}});
            m = {{"type", "discrete"}, {"directions", ds}};
            break;
        }
    }
    j["measure"] = m;
    j["t"] = c.t;
    j["replicates"] = c.replicates;
    j["seed"] = c.seed;
    j["checkpoints"] = c.checkpoints;
    if (c.erosion) j["erosion"] = *c.erosion;
    j["r_grid"] = c.r_grid;
    if (c.element_size) j["element_size"] = *c.element_size;
    j["radii"] = c.radii;
    j["s0"] = c.s0;
    j["iterate"] = {{"s", c.iterate_s}, {"u", c.iterate_u}};
    j["z_max"] = c.z_max;
    j["render"] = {{"format", c.render.format}, {"stroke_by_birth", c.render.stroke_by_birth}};
    if (!c.render.input.empty()) j["render"]["input"] = c.render.input;
    if (!c.output_prefix.empty()) j["output"] = {{"prefix", c.output_prefix}};
    return j.dump(2) + "\n";
}

}  // namespace stitlab::cli
