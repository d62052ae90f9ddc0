#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "stitlab/errors.hpp"
#include "stitlab/experiments.hpp"
#include "stitlab/parallel.hpp"

using namespace stitlab;
using namespace stitlab::cli;

namespace {

// 0: every check passed, 1: some check failed, 2: bad input, 3: runtime failure.
enum Exit { Ok = 0, ChecksFailed = 1, BadInput = 2, Failure = 3 };

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string out = ".";
};

void add_common(CLI::App* app, Common& c, bool config_required = true) {
    auto* opt = app->add_option("--config", c.config, "experiment config (JSON)");
    if (config_required) opt->required();
    app->add_option("--seed", c.seed, "overrides the config seed");
    app->add_option("--threads", c.threads, "worker threads (default: STITLAB_THREADS, then all cores)");
    app->add_option("--out", c.out, "output directory");
}

int run(const Common& o, const std::set<ExperimentKind>& allowed, const std::string& command) {
    auto cfg = load_config(o.config);
    if (!allowed.count(cfg.kind))
        throw ConfigError(o.config + ": field 'kind': '" + to_string(cfg.kind) + "' cannot run under '" + command + "'");
    if (o.seed) cfg.seed = *o.seed;
    RunContext ctx;
    ctx.threads = resolve_threads(o.threads);
    ctx.out_dir = o.out;
    auto rep = run_experiment(cfg, ctx);
    std::cout << summary_text(rep);
    return rep.all_pass() ? Ok : ChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and verification of STIT tessellations"};
    app.require_subcommand(1);

    Common sim, ver, clt, cmp, ren, itr;
    add_common(app.add_subcommand("simulate", "simulate replicates and save replicate 0"), sim);
    add_common(app.add_subcommand("verify", "Monte Carlo checks against the analytic formulas"), ver);
    add_common(app.add_subcommand("clt", "clt2d, clt3d and increment experiments"), clt);
    add_common(app.add_subcommand("compare", "STIT against Poisson hyperplanes"), cmp);
    add_common(app.add_subcommand("iterate-test", "iteration against direct simulation"), itr);

    auto* render = app.add_subcommand("render", "render a tessellation to SVG (d=2) or PLY (d=3)");
    add_common(render, ren, false);
    std::string input, format = "svg", output;
    bool by_birth = false;
    render->add_option("--input", input, "serialized tessellation; replaces --config");
    render->add_option("--format", format, "svg or ply")->check(CLI::IsMember({"svg", "ply"}));
    render->add_option("--output", output, "output file (with --input)");
    render->add_flag("--stroke-by-birth", by_birth, "thinner strokes for younger segments");

    auto* formulas = app.add_subcommand("formulas", "formula catalog");
    auto* dump = formulas->add_subcommand("dump", "print the catalog as CSV");
    formulas->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : BadInput;
    }

    try {
        if (*dump) {
            std::cout << formulas_dump_csv();
            return Ok;
        }
        if (*render) {
            if (!input.empty()) {
                if (output.empty()) output = (std::filesystem::path(ren.out) / ("render." + format)).string();
                io::RenderOptions ro;
                ro.stroke_by_birth = by_birth;
                render_file(input, format, output, ro);
                std::cout << output << '\n';
                return Ok;
            }
            if (ren.config.empty()) throw ConfigError("render needs --config or --input");
            return run(ren, {ExperimentKind::Render}, "render");
        }
        if (*app.get_subcommand("simulate")) return run(sim, {ExperimentKind::Simulate}, "simulate");
        if (*app.get_subcommand("verify")) return run(ver, {ExperimentKind::Verify}, "verify");
        if (*app.get_subcommand("clt"))
            return run(clt, {ExperimentKind::Clt2d, ExperimentKind::Clt3d, ExperimentKind::Increment}, "clt");
        if (*app.get_subcommand("compare")) return run(cmp, {ExperimentKind::Compare}, "compare");
        if (*app.get_subcommand("iterate-test")) return run(itr, {ExperimentKind::IterateTest}, "iterate-test");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return BadInput;
    } catch (const Unsupported& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return BadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Failure;
    }
    return BadInput;
}
