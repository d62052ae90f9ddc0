#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stitlab/measures.hpp"
#include "stitlab/vec.hpp"
#include "stitlab/window.hpp"

namespace stitlab::cli {

enum class ExperimentKind { Simulate, Verify, Clt2d, Clt3d, Increment, IterateTest, Compare, Render };

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

struct WindowConfig {
    enum class Type { Ball, Box, Polytope };
    Type type = Type::Box;
    double radius = 1;
    Vec3 center{0, 0, 0};
    Vec3 lo{0, 0, 0};
    Vec3 hi{0, 0, 0};
    std::vector<Vec3> vertices;  // convex hull is taken; unused coordinates stay 0

    bool operator==(const WindowConfig&) const = default;
};

// Raw measure description as written by the user; directions are
// normalized only when the measure is built.
struct MeasureConfig {
    measures::MeasureKind kind = measures::MeasureKind::Isotropic;
    std::vector<measures::WeightedDirection> directions;

    bool operator==(const MeasureConfig& o) const;
};

struct RenderConfig {
    std::string format = "svg";
    bool stroke_by_birth = false;
    std::string input;  // serialized tessellation; empty simulates replicate 0

    bool operator==(const RenderConfig&) const = default;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Verify;
    int dimension = 2;
    WindowConfig window;
    MeasureConfig measure;
    double t = 1;
    std::size_t replicates = 1;
    std::uint64_t seed = 0;
    std::vector<double> checkpoints;
    std::optional<double> erosion;  // default: 2 × mean I-facet diameter
    std::vector<double> r_grid;
    std::optional<double> element_size;
    std::vector<double> radii;  // window scalings R for clt, increment and compare
    double s0 = 0.5;            // increment start time
    double iterate_s = 1, iterate_u = 1;
    double z_max = 4;
    RenderConfig render;
    std::string output_prefix;  // default: the experiment name

    bool operator==(const ExperimentConfig&) const = default;

    std::string prefix() const { return output_prefix.empty() ? to_string(kind) : output_prefix; }
    measures::HyperplaneMeasureSpec measure_spec() const;
    // The window scaled by R about the origin.
    Window build_window(double R = 1) const;
};

// Throws ConfigError naming the source, line and field on any problem.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& c);

}  // namespace stitlab::cli
