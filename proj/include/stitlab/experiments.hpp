#pragma once

#include <filesystem>
#include <string>

#include "stitlab/config.hpp"
#include "stitlab/io.hpp"
#include "stitlab/report.hpp"

namespace stitlab::cli {

struct RunContext {
    unsigned threads = 1;
    std::filesystem::path out_dir = ".";
    // When false nothing is written; the report is only returned.
    bool write_files = true;
};

// Minus-sampling erosion when the config gives none: twice the mean
// I-segment length for d = 2, the mean I-facet perimeter (at least twice the
// mean diameter) for d = 3, and the mean spacing 1/t for d = 1.
double default_erosion(int d, double t);

StatReport cmd_simulate(const ExperimentConfig& c, const RunContext& ctx);
// First- and second-order battery against the formulas.
StatReport cmd_verify(const ExperimentConfig& c, const RunContext& ctx);
// clt2d, clt3d and increment.
StatReport cmd_clt(const ExperimentConfig& c, const RunContext& ctx);
StatReport cmd_iterate_test(const ExperimentConfig& c, const RunContext& ctx);
StatReport cmd_compare(const ExperimentConfig& c, const RunContext& ctx);
// Renders render.input, or replicate 0 of the config when no input is given.
StatReport cmd_render(const ExperimentConfig& c, const RunContext& ctx);

// Dispatches on the experiment kind and writes the report files.
StatReport run_experiment(const ExperimentConfig& c, const RunContext& ctx);

// Renders a serialized tessellation to SVG (d = 2) or PLY (d = 3).
void render_file(const std::filesystem::path& input, const std::string& format, const std::filesystem::path& output,
                 const io::RenderOptions& options = {});

// The formula catalog as CSV: id, parameters, value, provenance.
std::string formulas_dump_csv();

}  // namespace stitlab::cli
