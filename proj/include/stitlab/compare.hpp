#pragma once

#include <string>
#include <vector>

#include "stitlab/formulas.hpp"
#include "stitlab/geometry.hpp"
#include "stitlab/measures.hpp"
#include "stitlab/random.hpp"
#include "stitlab/stats.hpp"
#include "stitlab/window.hpp"

// Poisson hyperplane tessellations in a window, for side-by-side comparison
// with STIT. Cells are never built; only the sections H ∩ W are kept.
namespace stitlab::compare {

struct PoissonTessellation {
    Window window;
    measures::HyperplaneMeasureSpec spec;
    double t = 0;
    std::vector<geometry::Hyperplane> hyperplanes;
    // H ∩ frame for every hyperplane whose section is not degenerate.
    std::vector<geometry::FacetPolygon> facets;
    // Vol_{d-1}(H ∩ observation region), one per hyperplane.
    std::vector<double> section_measures;
    double total_surface = 0;
};

PoissonTessellation run_pht(const measures::HyperplaneMeasureSpec& spec, double t, const Window& window, Rng& rng);

// t ∫_{[W]} Vol_{d-1}(H ∩ W)² Λ(dH) by Monte Carlo over hitting hyperplanes.
stats::EstimateWithError campbell_variance(const measures::HyperplaneMeasureSpec& spec, double t,
                                           const Window& window, std::size_t samples, Rng& rng);

struct ComparisonRow {
    std::string model;  // "PVT", "STIT" or "PHT"
    int dim = 2;
    double t = 1;
    double R = 1;
    double variance = 0;  // leading term of Var Vol_{d-1}(·, B_R^d)
    std::string growth;
    formulas::Provenance provenance = formulas::Provenance::Analytic;
};

// Asymptotic surface-total variances in the ball B_R^d. PVT rows exist only
// for d = 2, where the published constant is available.
std::vector<ComparisonRow> comparison_table(int d, double t, const std::vector<double>& radii);

}  // namespace stitlab::compare
