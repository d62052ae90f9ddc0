#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "stitlab/mnw.hpp"

// Serialization of tessellations and their parts, and SVG/PLY rendering.
namespace stitlab::io {

using nlohmann::json;

// Shortest text that reads back to the same double (%.17g).
std::string format_double(double x);

json polytope_to_json(const geometry::ConvexPolytope& p);
geometry::ConvexPolytope polytope_from_json(const json& j);

// {"type": "isotropic" | "axis" | "discrete", "directions": [{"direction": [...], "weight": w}]}
json measure_to_json(const measures::HyperplaneMeasureSpec& m);
measures::HyperplaneMeasureSpec measure_from_json(const json& j, int dim);

json window_to_json(const Window& w);
Window window_from_json(const json& j);

json tessellation_to_json(const mnw::Tessellation& y);
mnw::Tessellation tessellation_from_json(const json& j);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
void write_tessellation(const std::filesystem::path& path, const mnw::Tessellation& y);
mnw::Tessellation read_tessellation(const std::filesystem::path& path);

struct RenderOptions {
    // Older facets drawn thicker: width scales from 1 at birth 0 down to 0.25
    // at t_end, times the base width.
    bool stroke_by_birth = false;
    double stroke_width = 0;  // 0 picks 1/400 of the window size
    double pixels = 800;
};

// d = 2: segments clipped to the observation region plus its outline.
std::string render_svg(const mnw::Tessellation& y, const RenderOptions& options = {});
// d = 3: ASCII PLY with one face per I-facet and the window frame as edges.
std::string render_ply(const mnw::Tessellation& y);

}  // namespace stitlab::io
