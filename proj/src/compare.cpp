#include "stitlab/compare.hpp"

#include <cmath>
#include <optional>

#include "stitlab/errors.hpp"

namespace stitlab::compare {

using geometry::FacetPolygon;
using geometry::Hyperplane;

namespace {

constexpr int kMaxRejections = 1'000'000;

bool hits_region(const Window& w, const Hyperplane& h) {
    switch (w.region) {
        case Window::Region::Frame: return true;
        case Window::Region::Ball: return std::fabs(h.signed_distance(w.center)) < w.radius;
        case Window::Region::Polytope: {
            auto [lo, hi] = w.observed->projection(h.normal);
            return lo < h.offset && h.offset < hi;
        }
    }
    return false;
}

// Λ restricted to [frame] and conditioned on hitting the observation region.
Hyperplane sample_region(const measures::HyperplaneMeasureSpec& spec, const Window& w, Rng& rng) {
    for (int i = 0; i < kMaxRejections; ++i) {
        Hyperplane h = measures::sample_hitting(spec, w.frame, rng);
        if (hits_region(w, h)) return h;
    }
    throw RejectionOverflow("hyperplane sampling for the observation region exceeded the rejection limit");
}

// Section of the frame and its measure inside the observation region.
std::pair<std::optional<FacetPolygon>, double> section(const Window& w, const Hyperplane& h) {
    auto attempt = geometry::try_split(w.frame, h, w.eps_geom(), w.eps_vol());
    if (attempt.status != geometry::SplitStatus::Ok) return {std::nullopt, 0.0};
    FacetPolygon f = attempt.result->facet;
    double m = w.facet_measure(f);
    return {std::move(f), m};
}

}  // namespace

PoissonTessellation run_pht(const measures::HyperplaneMeasureSpec& spec, double t, const Window& window, Rng& rng) {
    if (!(t > 0)) throw DomainError("t must be positive");
    if (spec.dim != window.dim()) throw DomainError("measure and window dimensions differ");
    PoissonTessellation p;
    p.window = window;
    p.spec = spec;
    p.t = t;
    auto n = rng.poisson(t * window.hitting_measure(spec));
    for (std::uint64_t i = 0; i < n; ++i) {
        Hyperplane h = sample_region(spec, window, rng);
        auto [facet, m] = section(window, h);
        p.hyperplanes.push_back(h);
        if (facet) p.facets.push_back(std::move(*facet));
        p.section_measures.push_back(m);
        p.total_surface += m;
    }
    return p;
}

stats::EstimateWithError campbell_variance(const measures::HyperplaneMeasureSpec& spec, double t,
                                           const Window& window, std::size_t samples, Rng& rng) {
    if (samples < 2) throw DomainError("need at least two samples");
    double scale = t * window.hitting_measure(spec);
    std::vector<double> v(samples);
    for (auto& x : v) {
        double m = section(window, sample_region(spec, window, rng)).second;
        x = scale * m * m;
    }
    return stats::aggregate(v);
}

std::vector<ComparisonRow> comparison_table(int d, double t, const std::vector<double>& radii) {
    if (d != 2 && d != 3) throw Unsupported("comparison table needs d in {2, 3}");
    if (!(t > 0)) throw DomainError("t must be positive");
    std::vector<ComparisonRow> rows;
    const double pi = std::acos(-1.0);
    for (double R : radii) {
        if (!(R > 1)) throw DomainError("radii must exceed 1");
        if (d == 2) {
            auto tau = formulas::pvt_tau1_planar();
            rows.push_back({"PVT", d, t, R, pi * tau.value * R * R, "R^2", tau.provenance});
            rows.push_back({"STIT", d, t, R, formulas::variance_asymptotic(2, pi, R), "R^2 log R",
                            formulas::Provenance::Analytic});
        } else {
            rows.push_back({"STIT", d, t, R, formulas::variance_asymptotic(3, formulas::chord_power_ball(3), R), "R^4",
                            formulas::Provenance::Analytic});
        }
        rows.push_back({"PHT", d, t, R, t * formulas::pht_J_ball(d, R), d == 2 ? "R^3" : "R^5",
                        formulas::Provenance::Analytic});
    }
    return rows;
}

}  // namespace stitlab::compare
