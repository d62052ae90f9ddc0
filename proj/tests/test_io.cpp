#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "stitlab/config.hpp"
#include "stitlab/errors.hpp"
#include "stitlab/io.hpp"
#include "stitlab/mnw.hpp"
#include "stitlab/random.hpp"

using namespace stitlab;
using namespace stitlab::cli;

namespace {

const char* kVerify = R"({
  "experiment": "verify",
  "dimension": 2,
  "window": {"type": "box", "lo": [0, 0], "hi": [3, 2]},
  "measure": {"type": "isotropic"},
  "t": 2,
  "replicates": 10,
  "seed": 5,
  "checkpoints": [0.5, 1]
})";

std::string error_of(const std::string& text) {
    try {
        parse_config(text, "cfg.json");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    auto p = s.find(from);
    REQUIRE(p != std::string::npos);
    return s.replace(p, from.size(), to);
}

// Random valid configs for the round-trip property.
ExperimentConfig random_config(std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(0.1, 5);
    ExperimentConfig c;
    c.kind = ExperimentKind::Simulate;
    c.dimension = 1 + static_cast<int>(g() % 3);
    int d = c.dimension;
    switch (g() % 3) {
        case 0:
            c.window.type = WindowConfig::Type::Ball;
            c.window.radius = u(g);
            for (int i = 0; i < d; ++i) c.window.center[i] = u(g) - 2.5;
            break;
        case 1:
            c.window.type = WindowConfig::Type::Box;
            for (int i = 0; i < d; ++i) {
                c.window.lo[i] = -u(g);
                c.window.hi[i] = u(g);
            }
            break;
        default:
            // Simplex plus a far corner so the hull is full-dimensional.
            c.window.type = WindowConfig::Type::Polytope;
            c.window.vertices.push_back({0, 0, 0});
            for (int i = 0; i < d; ++i) {
                Vec3 v{0, 0, 0};
                v[i] = u(g);
                c.window.vertices.push_back(v);
            }
            break;
    }
    if (d >= 2 && g() % 2) {
        c.measure.kind = measures::MeasureKind::DiscreteDirectional;
        for (int k = 0; k < d; ++k) {
            Vec3 v{0, 0, 0};
            v[k] = 1;
            v[(k + 1) % d] = u(g) / 10;
            c.measure.directions.push_back({v, u(g)});
        }
    } else if (d >= 2 && g() % 2) {
        c.measure.kind = measures::MeasureKind::AxisCounting;
    }
    c.t = u(g);
    c.replicates = 1 + g() % 50;
    c.seed = g();
    c.checkpoints = {c.t / 3, c.t / 2};
    if (g() % 2) c.erosion = u(g) / 10;
    if (d >= 2 && g() % 2) c.r_grid = {0.01, 0.02};
    c.z_max = 3 + u(g);
    if (g() % 2) c.output_prefix = "run" + std::to_string(g() % 100);
    return c;
}

mnw::Tessellation small(int d, double t, std::uint64_t seed, bool keep_cells = true) {
    Rng rng(seed);
    mnw::RunOptions o;
    o.keep_cells = keep_cells;
    Window w = d == 3 ? Window::ball(3, 1) : Window::ball(d, 1.5, {0.2, -0.1, 0});
    std::vector<double> cps{t / 2};
    return mnw::run(measures::HyperplaneMeasureSpec::isotropic(d), t, w, cps, rng, o);
}

std::size_t count(const std::string& s, const std::string& what) {
    std::size_t n = 0;
    for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("config parsing") {
    auto c = parse_config(kVerify);
    CHECK(c.kind == ExperimentKind::Verify);
    CHECK(c.dimension == 2);
    CHECK(c.window.hi[0] == 3);
    CHECK(c.replicates == 10);
    CHECK(c.z_max == 4);
    CHECK(c.prefix() == "verify");
    CHECK(c.build_window().volume() == doctest::Approx(6));
    CHECK(c.build_window(2).volume() == doctest::Approx(24));
}

TEST_CASE("config diagnostics name the line and field") {
    auto e = error_of(replace(kVerify, "\"t\": 2", "\"t\": -2"));
    CHECK(e.find("cfg.json:6: field 't'") == 0);
    e = error_of(replace(kVerify, "\"seed\": 5", "\"seed\": 5, \"colour\": 1"));
    CHECK(e.find("field 'colour': unknown field") != std::string::npos);
    CHECK(e.find("cfg.json:8:") == 0);
    e = error_of(replace(kVerify, "[0.5, 1]", "[1, 0.5]"));
    CHECK(e.find("cfg.json:9: field 'checkpoints'") == 0);
    e = error_of(replace(kVerify, "\"hi\": [3, 2]", "\"hi\": [3, -2]"));
    CHECK(e.find("field 'window.hi'") != std::string::npos);
    e = error_of(replace(kVerify, "\"replicates\": 10", "\"replicates\": 1"));
    CHECK(e.find("field 'replicates'") != std::string::npos);
    e = error_of(replace(kVerify, "\"verify\"", "\"clt3d\""));
    CHECK(e.find("field 'dimension'") != std::string::npos);
    e = error_of(replace(kVerify, "\"isotropic\"", "\"gaussian\""));
    CHECK(e.find("cfg.json:5: field 'measure.type'") == 0);
    e = error_of(replace(kVerify, "  \"t\": 2,\n", ""));
    CHECK(e.find("field 't': missing") != std::string::npos);
    CHECK(error_of("{not json").find("cfg.json") == 0);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config round trip") {
    std::mt19937_64 g(17);
    for (int k = 0; k < 200; ++k) {
        auto c = random_config(g);
        auto text = serialize_config(c);
        auto back = parse_config(text);
        CHECK(back == c);
        CHECK(serialize_config(back) == text);
    }
}

TEST_CASE("shipped configs parse") {
    for (const auto& e : std::filesystem::directory_iterator(STITLAB_CONFIG_DIR)) {
        CAPTURE(e.path().string());
        CHECK_NOTHROW(load_config(e.path()));
    }
}

TEST_CASE("format_double reads back exactly") {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int k = 0; k < 1000; ++k) {
        double x = u(g) * std::pow(10.0, static_cast<int>(g() % 40) - 20);
        CHECK(std::stod(io::format_double(x)) == x);
    }
}

TEST_CASE("tessellation round trip") {
    for (int d = 1; d <= 3; ++d) {
        CAPTURE(d);
        auto y = small(d, d == 3 ? 2.0 : 4.0, 100 + d);
        auto j = io::tessellation_to_json(y);
        auto back = io::tessellation_from_json(j);
        CHECK(io::tessellation_to_json(back) == j);
        CHECK(back.facets.size() == y.facets.size());
        CHECK(back.cells.size() == y.cells.size());
        CHECK(back.total_surface == y.total_surface);
        for (std::size_t i = 0; i < y.facets.size(); ++i) {
            CHECK(back.facets[i].birth_time == y.facets[i].birth_time);
            CHECK(back.facets[i].facet.area == y.facets[i].facet.area);
        }
        for (std::size_t i = 0; i < y.cells.size(); ++i) CHECK(back.cells[i].death_time == y.cells[i].death_time);
    }
    // Discrete directions survive bit-exactly.
    Rng rng(9);
    auto spec = measures::HyperplaneMeasureSpec::discrete(2, {{{1, 0.3, 0}, 2.0}, {{0.1, 1, 0}, 0.7}});
    auto y = mnw::run(spec, 3, Window::ball(2, 1), {}, rng);
    auto back = io::tessellation_from_json(io::tessellation_to_json(y));
    REQUIRE(back.spec.directions.size() == y.spec.directions.size());
    for (std::size_t i = 0; i < y.spec.directions.size(); ++i) {
        CHECK(back.spec.directions[i].direction == y.spec.directions[i].direction);
        CHECK(back.spec.directions[i].weight == y.spec.directions[i].weight);
    }

    auto path = std::filesystem::temp_directory_path() / "stitlab-test" / "y.json";
    io::write_tessellation(path, y);
    CHECK(io::tessellation_to_json(io::read_tessellation(path)) == io::tessellation_to_json(y));
    io::write_text(path, "{\"dim\": 2}");
    CHECK_THROWS_AS(io::read_tessellation(path), ConfigError);
}

TEST_CASE("rendering") {
    SUBCASE("empty tessellation draws the outline only") {
        Rng rng(1);
        auto box = Window::polytope(geometry::ConvexPolytope::box(2, {0, 0, 0}, {2, 1, 0}));
        auto y = mnw::run(measures::HyperplaneMeasureSpec::isotropic(2), 1e-12, box, {}, rng);
        REQUIRE(y.facets.empty());
        auto svg = io::render_svg(y);
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(count(svg, "<path") == 0);
        CHECK(count(svg, "<polygon") == 1);
        auto disk = mnw::run(measures::HyperplaneMeasureSpec::isotropic(2), 1e-12, Window::ball(2, 1), {}, rng);
        CHECK(count(io::render_svg(disk), "<circle") == 1);

        auto y3 = mnw::run(measures::HyperplaneMeasureSpec::isotropic(3), 1e-12, Window::ball(3, 1), {}, rng);
        auto ply = io::render_ply(y3);
        CHECK(ply.find("element face 0\n") != std::string::npos);
        CHECK(ply.find("element edge 12\n") != std::string::npos);
    }
    SUBCASE("one path per visible segment") {
        auto y = small(2, 5, 4);
        auto svg = io::render_svg(y);
        CHECK(count(svg, "<path") > 0);
        CHECK(count(svg, "<path") <= y.facets.size());
        CHECK(io::render_svg(y) == svg);
        io::RenderOptions o;
        o.stroke_by_birth = true;
        CHECK(io::render_svg(y, o) != svg);
    }
    SUBCASE("PLY face count equals the facet count") {
        auto y = small(3, 3, 8, false);
        auto ply = io::render_ply(y);
        CHECK(ply.find("element face " + std::to_string(y.facets.size()) + "\n") != std::string::npos);
        std::istringstream in(ply);
        std::string line;
        std::size_t nv = 0, nf = 0, ne = 0;
        while (std::getline(in, line) && line != "end_header") {
            std::sscanf(line.c_str(), "element vertex %zu", &nv);
            std::sscanf(line.c_str(), "element face %zu", &nf);
            std::sscanf(line.c_str(), "element edge %zu", &ne);
        }
        std::size_t body = 0;
        while (std::getline(in, line)) ++body;
        CHECK(body == nv + nf + ne);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(io::render_svg(small(3, 1, 2, false)), Unsupported);
        CHECK_THROWS_AS(io::render_ply(small(2, 1, 2, false)), Unsupported);
    }
}
