#include "stitlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "stitlab/compare.hpp"
#include "stitlab/errors.hpp"
#include "stitlab/estimators.hpp"
#include "stitlab/formulas.hpp"
#include "stitlab/mnw.hpp"
#include "stitlab/parallel.hpp"

namespace stitlab::cli {

using estimators::KFunctionOptions;
using estimators::KSums;
using measures::MeasureKind;
using stats::EstimateWithError;

namespace {

constexpr double kPi = std::numbers::pi;
// One-sided 1% normal quantile.
constexpr double kZ99 = 2.3263478740408408;

std::string params(std::initializer_list<std::pair<const char*, double>> kv) {
    std::string s;
    for (auto [k, v] : kv) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%s%s=%.6g", s.empty() ? "" : ";", k, v);
        s += buf;
    }
    return s;
}

// Two-sided tail of |z| > z_max; p-value checks use it so they match the z rows.
double alpha_for(double z_max) { return std::erfc(z_max / std::sqrt(2.0)); }

// Total mass of the direction distribution: E Σ(Y(t, W)) = t · mass · Vol(W).
double direction_mass(const measures::HyperplaneMeasureSpec& m) {
    return m.kind == MeasureKind::AxisCounting ? m.dim : 1.0;
}

Rng stream(const ExperimentConfig& c, std::size_t i) { return Rng(derive_stream_seed(c.seed, i)); }

std::vector<double> column(const std::vector<estimators::ReplicateSummary>& s, double estimators::ReplicateSummary::*f) {
    std::vector<double> v;
    for (const auto& x : s) v.push_back(x.*f);
    return v;
}

EstimateWithError with_target(EstimateWithError e, std::optional<double> target) {
    e.target = target;
    return e;
}

EstimateWithError scaled(EstimateWithError e, double k) {
    e.estimate *= k;
    e.se *= k;
    return e;
}

// Exact Var Σ(Y(t, W_R)) when a closed route exists for the window and measure.
std::optional<double> exact_variance(const ExperimentConfig& c, double t, double R) {
    const int d = c.dimension;
    // Points of a Poisson process: Var = mean = t L.
    if (d == 1) return t * c.build_window(R).volume();
    if (c.measure.kind == MeasureKind::Isotropic) {
        if (c.window.type == WindowConfig::Type::Ball) return formulas::variance_exact_ball(d, t, R * c.window.radius);
        if (c.window.type == WindowConfig::Type::Box) {
            std::array<double, 3> e{0, 0, 0};
            for (int i = 0; i < d; ++i) e[i] = R * (c.window.hi[i] - c.window.lo[i]);
            return formulas::variance_exact_box(d, t, e);
        }
        return std::nullopt;
    }
    if (c.measure.kind == MeasureKind::AxisCounting && d == 3 && c.window.type == WindowConfig::Type::Box) {
        for (int i = 0; i < 3; ++i)
            if (c.window.hi[i] - c.window.lo[i] != 1) return std::nullopt;
        // Var Σ(Y(t, R C)) = R⁴ Var Σ(Y(tR, C)).
        return std::pow(R, 4) * formulas::xi_variance_axis_cube(t * R);
    }
    return std::nullopt;
}

void set_cells(StatReport& r, const std::vector<std::size_t>& cells) {
    r.metrics.replicates = cells.size();
    double sum = 0;
    for (auto x : cells) {
        sum += static_cast<double>(x);
        r.metrics.max_cells = std::max(r.metrics.max_cells, x);
    }
    r.metrics.mean_cells = cells.empty() ? 0 : sum / cells.size();
}

// Expected shell estimate of g between r1 and r2: (K(r2) - K(r1)) / (κ_d (r2^d - r1^d)).
double shell_g(int d, double r1, double r2, double (*K)(int, double, double), double t) {
    return (K(d, t, r2) - K(d, t, r1)) / (formulas::kappa(d) * (std::pow(r2, d) - std::pow(r1, d)));
}

void k_rows(StatReport& rep, const std::string& model, std::span<const KSums> sums, const KFunctionOptions& ko, int d,
            double (*K)(int, double, double), double t) {
    auto k = estimators::pool_k_function(sums, ko);
    for (const auto& p : k) {
        double target = K(d, t, p.r);
        EstimateWithError e{p.value, p.se, sums.size(), target};
        rep.z_row(model + "_K", params({{"r", p.r}, {"t", t}}), e);
        rep.curves.push_back({model, "K", p.r, p.value, p.se, target});
    }
    auto g = estimators::pool_pair_correlation(sums, ko, d);
    for (std::size_t i = 0; i < g.size(); ++i)
        rep.curves.push_back(
            {model, "g", g[i].r, g[i].value, g[i].se, shell_g(d, ko.r_grid[i], ko.r_grid[i + 1], K, t)});
}

KFunctionOptions k_options(const ExperimentConfig& c, double erosion) {
    KFunctionOptions ko;
    ko.r_grid = c.r_grid;
    ko.erosion = erosion;
    ko.element_size = c.element_size.value_or(0);
    ko.t = c.t;
    if (!ko.r_grid.empty() && ko.r_grid.back() > erosion)
        throw ConfigError("field 'r_grid': largest radius exceeds the erosion " + std::to_string(erosion));
    return ko;
}

double stit_K(int d, double t, double r) { return formulas::K_function(d, t, r); }
double pht_K(int d, double t, double r) { return formulas::pht_K(d, t, r); }

}  // namespace

double default_erosion(int d, double t) {
    if (!(t > 0)) throw DomainError("t must be positive");
    switch (d) {
        case 1: return 1 / t;
        case 2: return 2 * formulas::mean_vol_Ik(2, 1, t);
        case 3: return 12 / t;
    }
    throw DomainError("dimension must be 1, 2 or 3");
}

StatReport cmd_simulate(const ExperimentConfig& c, const RunContext& ctx) {
    StatReport rep;
    rep.config = c;
    auto spec = c.measure_spec();
    auto w = c.build_window();
    struct Out {
        double total;
        std::vector<double> cps;
        std::size_t cells;
        std::optional<mnw::Tessellation> y;
    };
    auto outs = run_replicates(c.replicates, ctx.threads, [&](std::size_t i) {
        Rng rng = stream(c, i);
        mnw::RunOptions o;
        o.keep_facets = i == 0;
        auto y = mnw::run(spec, c.t, w, c.checkpoints, rng, o);
        Out out{y.total_surface, y.checkpoint_totals, y.final_cell_count, std::nullopt};
        if (i == 0) out.y = std::move(y);
        return out;
    });
    std::vector<double> totals;
    std::vector<std::size_t> cells;
    for (const auto& o : outs) {
        totals.push_back(o.total);
        cells.push_back(o.cells);
    }
    set_cells(rep, cells);
    double mass = direction_mass(spec), vol = w.volume();
    auto p = params({{"t", c.t}});
    if (totals.size() >= 2) {
        rep.z_row("total_surface_mean", p, stats::aggregate(totals, c.t * mass * vol));
        for (std::size_t k = 0; k < c.checkpoints.size(); ++k) {
            std::vector<double> v;
            for (const auto& o : outs) v.push_back(o.cps[k]);
            rep.z_row("checkpoint_total_mean", params({{"s", c.checkpoints[k]}}),
                      stats::aggregate(v, c.checkpoints[k] * mass * vol));
        }
    } else {
        rep.info_row("total_surface", p, totals[0], 0, 1, c.t * mass * vol);
    }
    rep.info_row("facets_replicate0", "", static_cast<double>(outs[0].y->facets.size()));
    if (ctx.write_files) {
        auto path = ctx.out_dir / (c.prefix() + "-tessellation.json");
        io::write_tessellation(path, *outs[0].y);
        rep.files.push_back(path.filename().string());
    }
    return rep;
}

StatReport cmd_verify(const ExperimentConfig& c, const RunContext& ctx) {
    StatReport rep;
    rep.config = c;
    const int d = c.dimension;
    const double t = c.t;
    auto spec = c.measure_spec();
    auto w = c.build_window();
    const bool iso = spec.kind == MeasureKind::Isotropic;
    const double delta = c.erosion.value_or(default_erosion(d, t));
    const bool want_k = !c.r_grid.empty() && iso;
    KFunctionOptions ko = want_k ? k_options(c, delta) : KFunctionOptions{};

    struct Out {
        estimators::ReplicateSummary s;
        std::optional<KSums> k;
        std::size_t cells;
    };
    auto outs = run_replicates(c.replicates, ctx.threads, [&](std::size_t i) {
        Rng rng = stream(c, i);
        auto y = mnw::run(spec, t, w, c.checkpoints, rng);
        Out out{estimators::summarize(y, i, d >= 2 ? delta : -1.0), std::nullopt, y.final_cell_count};
        if (want_k) out.k = estimators::k_function_sums(y, ko);
        return out;
    });
    std::vector<estimators::ReplicateSummary> s;
    std::vector<std::size_t> cells;
    for (auto& o : outs) {
        s.push_back(o.s);
        cells.push_back(o.cells);
    }
    set_cells(rep, cells);

    const std::size_t n = s.size();
    const double vol = w.volume(), mass = direction_mass(spec);
    const double alpha = alpha_for(c.z_max);
    auto p = params({{"t", t}});
    auto totals = column(s, &estimators::ReplicateSummary::total_surface);
    rep.z_row("total_surface_mean", p, stats::aggregate(totals, t * mass * vol));
    for (std::size_t k = 0; k < c.checkpoints.size(); ++k) {
        std::vector<double> v;
        for (const auto& x : s) v.push_back(x.checkpoint_totals[k]);
        rep.z_row("checkpoint_total_mean", params({{"s", c.checkpoints[k]}}),
                  stats::aggregate(v, c.checkpoints[k] * mass * vol));
    }
    if (auto v = exact_variance(c, t, 1)) rep.z_row("total_surface_variance", p, stats::variance_estimate(totals, *v));

    if (d == 1) {
        // Exact Poisson checks: every count is Poisson(n t L).
        double mu = n * t * vol;
        for (auto [name, field] : {std::pair{"vertex_intensity", &estimators::ReplicateSummary::vertex_count},
                                   std::pair{"facet_intensity", &estimators::ReplicateSummary::facet_count}}) {
            double total = 0;
            for (const auto& x : s) total += x.*field;
            rep.pvalue_row(name, p, total / (n * vol), stats::poisson_two_sided_pvalue(total, mu), alpha, n, t);
        }
        double total = 0;
        for (double x : totals) total += x;
        rep.pvalue_row("total_surface_exact", p, total / n, stats::poisson_two_sided_pvalue(total, mu), alpha, n,
                       t * vol);
        return rep;
    }
    if (!iso) return rep;

    std::vector<double> vert, fac, anchored;
    for (const auto& x : s) {
        vert.push_back(x.vertex_count / vol);
        fac.push_back(x.facet_count / vol);
        anchored.push_back(x.facet_count);
    }
    rep.z_row("vertex_intensity", p, stats::aggregate(vert, formulas::intensity_NkI(d, 0, t)));
    rep.z_row("facet_intensity", p, stats::aggregate(fac, formulas::intensity_NkI(d, d - 1, t)));
    const double mean_size = formulas::mean_vol_Ik(d, d - 1, t);
    rep.z_row("mean_facet_size_ratio", p, stats::ratio_estimate(totals, anchored, mean_size));

    // Minus-sampled sizes, Horvitz-Thompson weighted, pooled over replicates.
    std::vector<double> xs, ws, pooled, pooled_w;
    bool weighted = true;
    for (const auto& x : s) {
        double a = 0, b = 0;
        for (std::size_t k = 0; k < x.facets.sizes.size(); ++k) {
            a += x.facets.weights[k] * x.facets.sizes[k];
            b += x.facets.weights[k];
            pooled.push_back(x.facets.sizes[k]);
            pooled_w.push_back(x.facets.weights[k]);
        }
        if (!x.facets.sizes.empty()) weighted = weighted && x.facets.weighted;
        xs.push_back(a);
        ws.push_back(b);
    }
    auto pd = params({{"t", t}, {"delta", delta}});
    if (pooled.size() >= 2) {
        auto ms = stats::ratio_estimate(xs, ws, mean_size);
        if (weighted) rep.z_row("mean_facet_size_minus_sampled", pd, ms);
        else rep.info_row("mean_facet_size_minus_sampled_unweighted", pd, ms.estimate, ms.se, ms.n, mean_size);
        if (d == 2) {
            auto ks = stats::ks_test(pooled, pooled_w, [t](double x) { return formulas::isegment_cdf(2, t, x); });
            auto& row = rep.bound_row("isegment_length_ks", pd, ks.statistic, Check::AtMost, ks.critical_01, pooled.size());
            row.pvalue = ks.pvalue;
        }
        // Segments longer than the eroded box can never be sampled, and the
        // tail P(L > x) ~ 1/x² keeps that loss visible; these rows use the
        // exact law of the segments that fit.
        if (d == 2 && c.window.type == WindowConfig::Type::Box) {
            double a = c.window.hi[0] - c.window.lo[0] - 2 * delta, b = c.window.hi[1] - c.window.lo[1] - 2 * delta;
            if (weighted && a > 0 && b > 0) {
                rep.z_row("mean_facet_size_minus_sampled_fitted", pd,
                          stats::ratio_estimate(xs, ws, formulas::isegment_box_conditional_mean(t, a, b)));
                auto ks = stats::ks_test(pooled, pooled_w,
                                         [&](double x) { return formulas::isegment_box_conditional_cdf(t, a, b, x); });
                auto& row = rep.bound_row("isegment_length_ks_fitted", pd, ks.statistic, Check::AtMost, ks.critical_01,
                                          pooled.size());
                row.pvalue = ks.pvalue;
            }
        }
    } else {
        // The eroded window holds too few facets; nothing to test.
        rep.info_row("minus_sampled_facets", pd, static_cast<double>(pooled.size()), 0, n);
    }

    if (want_k) {
        std::vector<KSums> sums;
        for (auto& o : outs) sums.push_back(std::move(*o.k));
        k_rows(rep, "STIT", sums, ko, d, stit_K, t);
    }
    return rep;
}

StatReport cmd_clt(const ExperimentConfig& c, const RunContext& ctx) {
    StatReport rep;
    rep.config = c;
    const int d = c.dimension;
    const double t = c.t;
    auto spec = c.measure_spec();
    const bool iso = spec.kind == MeasureKind::Isotropic;
    const double mass = direction_mass(spec);
    const double vol1 = c.build_window().volume();
    const double R_top = c.radii.back();
    std::vector<std::size_t> cells;
    std::size_t offset = 0;

    for (double R : c.radii) {
        auto w = c.build_window(R);
        const double vol = w.volume();
        std::vector<double> cps;
        if (c.kind == ExperimentKind::Increment) cps = {c.s0, t};
        struct Out {
            double total, start;
            std::size_t cells;
        };
        // Streams are offset per R so every window gets fresh replicates.
        auto outs = run_replicates(c.replicates, ctx.threads, [&](std::size_t i) {
            Rng rng = stream(c, offset + i);
            mnw::RunOptions o;
            o.keep_facets = false;
            auto y = mnw::run(spec, t, w, cps, rng, o);
            return Out{y.total_surface, cps.empty() ? 0.0 : y.checkpoint_totals[0], y.final_cell_count};
        });
        offset += c.replicates;
        for (const auto& o : outs) cells.push_back(o.cells);
        const bool top = R == R_top;
        auto p = params({{"t", t}, {"R", R}});

        if (c.kind == ExperimentKind::Increment) {
            // S = [Σ(1) - Σ(s0)] / R^{d/2}, centered.
            const double norm = std::pow(R, 0.5 * d);
            std::vector<double> inc;
            for (const auto& o : outs) inc.push_back((o.total - o.start - (t - c.s0) * mass * vol) / norm);
            rep.z_row("increment_mean", p, stats::aggregate(inc, 0.0));
            auto var = stats::variance_estimate(inc);
            if (auto v1 = exact_variance(c, t, R)) {
                auto v0 = exact_variance(c, c.s0, R);
                rep.z_row("increment_variance_exact", p, with_target(var, (*v1 - *v0) / std::pow(R, d)));
            }
            if (iso) {
                double integral = d == 2 ? std::log(t / c.s0) : (std::pow(c.s0, 2.0 - d) - std::pow(t, 2.0 - d)) / (d - 2);
                double target = formulas::clt_variance_factor(d, vol1) * integral;
                rep.z_row("increment_variance_asymptotic", p, with_target(var, target));
            }
            auto nd = stats::normality_diagnostics(inc);
            rep.info_row("increment_skewness", p, nd.skewness, nd.skewness_se, nd.n);
            rep.pvalue_row("increment_ks_normal", p, nd.ks_statistic, nd.ks_pvalue, 0.01, nd.n);
            continue;
        }

        std::vector<double> totals;
        for (const auto& o : outs) totals.push_back(o.total);
        rep.z_row("total_surface_mean", p, stats::aggregate(totals, t * mass * vol));
        if (d == 2 && !(R > 1)) throw ConfigError("field 'radii': clt2d needs R > 1");
        const double norm = d == 2 ? R * R * std::log(R) : std::pow(R, 2.0 * (d - 1));
        auto var = scaled(stats::variance_estimate(totals), 1 / norm);
        if (auto v = exact_variance(c, t, R)) rep.z_row("variance_normalized_exact", p, with_target(var, *v / norm));
        if (d == 2 && iso) {
            double target = kPi * vol1;
            if (top) rep.relative_row("variance_normalized_asymptotic", p, var.estimate, var.se, target, 0.15, var.n);
            else rep.info_row("variance_normalized_asymptotic", p, var.estimate, var.se, var.n, target);
        } else if (d >= 3) {
            std::optional<double> limit;
            if (iso && c.window.type == WindowConfig::Type::Ball)
                limit = formulas::variance_asymptotic(
                            d, formulas::chord_power_ball(d) * std::pow(c.window.radius, 2.0 * (d - 1)), R) /
                        norm;
            if (!iso && exact_variance(c, t, R)) limit = formulas::xi_variance_axis_cube();
            rep.info_row("variance_normalized_limit", p, var.estimate, var.se, var.n, limit);
        }

        auto nd = stats::normality_diagnostics(totals);
        rep.info_row("skewness", p, nd.skewness, nd.skewness_se, nd.n);
        rep.info_row("excess_kurtosis", p, nd.excess_kurtosis, 0, nd.n);
        rep.info_row("ks_normal_pvalue", p, nd.ks_pvalue, 0, nd.n);
        if (top && c.kind == ExperimentKind::Clt2d)
            rep.bound_row("abs_skewness", p, std::fabs(nd.skewness), Check::AtMost, 0.2, nd.n);
        if (top && c.kind == ExperimentKind::Clt3d) {
            auto& row = rep.bound_row("skewness_z", p, nd.skewness / nd.skewness_se, Check::AtLeast, kZ99, nd.n);
            row.pvalue = 0.5 * std::erfc(row.estimate / std::sqrt(2.0));
        }
    }
    set_cells(rep, cells);
    return rep;
}

StatReport cmd_iterate_test(const ExperimentConfig& c, const RunContext& ctx) {
    StatReport rep;
    rep.config = c;
    const int d = c.dimension;
    auto spec = c.measure_spec();
    auto w = c.build_window();
    const double s = c.iterate_s, u = c.iterate_u, vol = w.volume(), mass = direction_mass(spec);
    struct Out {
        double direct, iterated;
        std::size_t cells;
    };
    auto outs = run_replicates(c.replicates, ctx.threads, [&](std::size_t i) {
        Rng a = stream(c, 2 * i), b = stream(c, 2 * i + 1);
        auto y = mnw::run(spec, s + u, w, {}, a);
        mnw::RunOptions keep;
        keep.keep_cells = true;
        auto y1 = mnw::run(spec, s, w, {}, b, keep);
        auto y2 = mnw::iterate(y1, spec, u, b);
        return Out{y.total_surface, y2.total_surface, y.final_cell_count};
    });
    std::vector<double> direct, iterated;
    std::vector<std::size_t> cells;
    for (const auto& o : outs) {
        direct.push_back(o.direct);
        iterated.push_back(o.iterated);
        cells.push_back(o.cells);
    }
    set_cells(rep, cells);
    const std::size_t n = outs.size();
    auto p = params({{"s", s}, {"u", u}});
    const double mean_target = (s + u) * mass * vol;
    rep.z_row("direct_mean", p, stats::aggregate(direct, mean_target));
    rep.z_row("iterated_mean", p, stats::aggregate(iterated, mean_target));
    auto md = stats::aggregate(direct), mi = stats::aggregate(iterated);
    rep.z_row("mean_difference", p, {mi.estimate - md.estimate, std::hypot(mi.se, md.se), n, 0.0}, TargetSource::Mc);
    auto vd = stats::variance_estimate(direct), vi = stats::variance_estimate(iterated);
    rep.z_row("variance_difference", p, {vi.estimate - vd.estimate, std::hypot(vi.se, vd.se), n, 0.0},
              TargetSource::Mc);
    if (auto v = exact_variance(c, s + u, 1)) {
        rep.z_row("direct_variance", p, with_target(vd, *v));
        rep.z_row("iterated_variance", p, with_target(vi, *v));
    }
    if (d == 1) {
        // Superposition of independent Poisson processes is Poisson.
        const double alpha = alpha_for(c.z_max), mu = n * (s + u) * vol;
        double a = 0, b = 0;
        for (std::size_t i = 0; i < n; ++i) {
            a += direct[i];
            b += iterated[i];
        }
        rep.pvalue_row("direct_count_exact", p, a / n, stats::poisson_two_sided_pvalue(a, mu), alpha, n,
                       (s + u) * vol);
        rep.pvalue_row("iterated_count_exact", p, b / n, stats::poisson_two_sided_pvalue(b, mu), alpha, n,
                       (s + u) * vol);
    }
    return rep;
}

StatReport cmd_compare(const ExperimentConfig& c, const RunContext& ctx) {
    StatReport rep;
    rep.config = c;
    const int d = c.dimension;
    const double t = c.t;
    auto spec = c.measure_spec();
    auto w = c.build_window();
    const double vol = w.volume();
    const double erosion = c.erosion.value_or(std::max(c.r_grid.back(), default_erosion(d, t)));
    auto ko = k_options(c, erosion);
    struct Out {
        KSums stit, pht;
        double stit_total, pht_total;
        std::size_t cells;
    };
    auto outs = run_replicates(c.replicates, ctx.threads, [&](std::size_t i) {
        Rng a = stream(c, 2 * i), b = stream(c, 2 * i + 1);
        auto y = mnw::run(spec, t, w, {}, a);
        auto ph = compare::run_pht(spec, t, w, b);
        return Out{estimators::k_function_sums(y, ko), estimators::k_function_sums(ph.facets, w, ko), y.total_surface,
                   ph.total_surface, y.final_cell_count};
    });
    std::vector<KSums> stit, pht;
    std::vector<double> st, pt;
    std::vector<std::size_t> cells;
    for (auto& o : outs) {
        stit.push_back(std::move(o.stit));
        pht.push_back(std::move(o.pht));
        st.push_back(o.stit_total);
        pt.push_back(o.pht_total);
        cells.push_back(o.cells);
    }
    set_cells(rep, cells);
    auto p = params({{"t", t}});
    k_rows(rep, "STIT", stit, ko, d, stit_K, t);
    k_rows(rep, "PHT", pht, ko, d, pht_K, t);
    rep.z_row("STIT_total_surface_mean", p, stats::aggregate(st, t * vol));
    rep.z_row("PHT_total_surface_mean", p, stats::aggregate(pt, t * vol));
    if (auto v = exact_variance(c, t, 1)) rep.z_row("STIT_total_surface_variance", p, stats::variance_estimate(st, *v));
    auto pv = stats::variance_estimate(pt);
    if (c.window.type == WindowConfig::Type::Ball) {
        rep.z_row("PHT_total_surface_variance", p, with_target(pv, t * formulas::pht_J_ball(d, c.window.radius)));
    } else {
        // Campbell integral by Monte Carlo on its own stream.
        Rng rng = stream(c, 2 * c.replicates);
        auto cv = compare::campbell_variance(spec, t, w, 20000, rng);
        rep.z_row("PHT_total_surface_variance", p,
                  {pv.estimate - cv.estimate, std::hypot(pv.se, cv.se), pv.n, 0.0}, TargetSource::Mc);
        rep.info_row("PHT_campbell_variance", p, cv.estimate, cv.se, cv.n);
    }
    if (!c.radii.empty()) {
        for (const auto& row : compare::comparison_table(d, t, c.radii)) {
            std::string pr = params({{"t", row.t}, {"R", row.R}}) + ";growth=" + row.growth;
            rep.info_row("asymptotic_variance_" + row.model, pr, row.variance, 0, 0, std::nullopt,
                         source_of(row.provenance));
        }
    }
    return rep;
}

StatReport cmd_render(const ExperimentConfig& c, const RunContext& ctx) {
    StatReport rep;
    rep.config = c;
    mnw::Tessellation y;
    if (!c.render.input.empty()) {
        y = io::read_tessellation(c.render.input);
    } else {
        Rng rng = stream(c, 0);
        y = mnw::run(c.measure_spec(), c.t, c.build_window(), c.checkpoints, rng);
        rep.metrics.replicates = 1;
        rep.metrics.mean_cells = static_cast<double>(y.final_cell_count);
        rep.metrics.max_cells = y.final_cell_count;
    }
    const bool svg = c.render.format == "svg";
    if (svg && y.window.dim() != 2) throw Unsupported("SVG rendering needs d = 2");
    if (!svg && y.window.dim() != 3) throw Unsupported("PLY rendering needs d = 3");
    io::RenderOptions ro;
    ro.stroke_by_birth = c.render.stroke_by_birth;
    std::string text = svg ? io::render_svg(y, ro) : io::render_ply(y);
    rep.info_row("facets", "", static_cast<double>(y.facets.size()));
    rep.info_row("total_surface", "", y.total_surface);
    if (ctx.write_files) {
        auto name = c.prefix() + (svg ? ".svg" : ".ply");
        io::write_text(ctx.out_dir / name, text);
        rep.files.push_back(name);
        if (c.render.input.empty()) {
            auto tname = c.prefix() + "-tessellation.json";
            io::write_tessellation(ctx.out_dir / tname, y);
            rep.files.push_back(tname);
        }
    }
    return rep;
}

StatReport run_experiment(const ExperimentConfig& c, const RunContext& ctx) {
    auto start = std::chrono::steady_clock::now();
    StatReport rep;
    switch (c.kind) {
        case ExperimentKind::Simulate: rep = cmd_simulate(c, ctx); break;
        case ExperimentKind::Verify: rep = cmd_verify(c, ctx); break;
        case ExperimentKind::Clt2d:
        case ExperimentKind::Clt3d:
        case ExperimentKind::Increment: rep = cmd_clt(c, ctx); break;
        case ExperimentKind::IterateTest: rep = cmd_iterate_test(c, ctx); break;
        case ExperimentKind::Compare: rep = cmd_compare(c, ctx); break;
        case ExperimentKind::Render: rep = cmd_render(c, ctx); break;
    }
    rep.metrics.threads = ctx.threads;
    rep.metrics.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ctx.write_files) write_report(rep, ctx.out_dir);
    return rep;
}

void render_file(const std::filesystem::path& input, const std::string& format, const std::filesystem::path& output,
                 const io::RenderOptions& options) {
    auto y = io::read_tessellation(input);
    if (format == "svg") io::write_text(output, io::render_svg(y, options));
    else if (format == "ply") io::write_text(output, io::render_ply(y));
    else throw Unsupported("unknown render format '" + format + "'");
}

std::string formulas_dump_csv() {
    std::ostringstream s;
    s << "id,parameters,value,provenance\n";
    for (const auto& row : formulas::catalog()) {
        std::string p = row.parameters;
        if (p.find(',') != std::string::npos) p = "\"" + p + "\"";
        s << row.id << ',' << p << ',' << io::format_double(row.value) << ',' << formulas::to_string(row.provenance)
          << '\n';
    }
    return s.str();
}

}  // namespace stitlab::cli
