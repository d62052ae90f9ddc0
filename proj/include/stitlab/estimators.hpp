#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stitlab/mnw.hpp"
#include "stitlab/stats.hpp"

namespace stitlab::estimators {

using stats::EstimateWithError;

struct FacetSample {
    std::vector<double> sizes;
    // Horvitz-Thompson weights 1 / Vol(A ⊖ (F - ι(F))); all ones when
    // weighting is unavailable (three-dimensional ball windows).
    std::vector<double> weights;
    std::vector<double> birth_times;
    bool weighted = true;
};

struct ReplicateSummary {
    std::size_t index = 0;
    double total_surface = 0;
    double vertex_count = 0;
    double facet_count = 0;
    double window_volume = 0;
    std::vector<double> checkpoint_totals;
    FacetSample facets;
};

// Σ of facet (d-1)-volumes inside the observation region.
double total_surface(const mnw::Tessellation& y);
// Facets whose lowest vertex lies strictly inside the window: an unbiased
// count of facets per unit volume even though facets are chopped at ∂W.
std::size_t anchored_facet_count(const mnw::Tessellation& y);
// Facet vertices strictly inside the window. Every tessellation vertex is a
// polygon vertex of exactly one I-facet (the youngest one through it).
std::size_t interior_vertex_count(const mnw::Tessellation& y);
double vertex_intensity(const mnw::Tessellation& y);
double facet_intensity(const mnw::Tessellation& y);

// Minus-sampling: facets entirely inside the window eroded by delta.
// Throws EmptySample if none qualifies.
FacetSample isegment_sample(const mnw::Tessellation& y, double delta);

struct KFunctionOptions {
    std::vector<double> r_grid;
    double erosion = 0;
    double element_size = 0;  // 0 selects r_min / 10
    double t = 1;             // known surface intensity
};

// Raw K-function sums for one replicate: numerator[i] is
// Σ_p w(p) Vol_{d-1}(Y ∩ B(p, r_i)) over discretized facet elements p in the
// eroded window, and eroded_volume is Vol(W ⊖ δ). K̂(r) = numerator / (t² Vol).
struct KSums {
    std::vector<double> numerator;
    double eroded_volume = 0;
};

KSums k_function_sums(const mnw::Tessellation& y, const KFunctionOptions& options);
// Same estimator on an explicit facet list (used for Poisson hyperplanes).
KSums k_function_sums(const std::vector<geometry::FacetPolygon>& facets, const Window& window,
                      const KFunctionOptions& options);

struct CurvePoint {
    double r = 0;
    double value = 0;
    double se = 0;
};

// Pools per-replicate sums into K̂ with replicate-level standard errors
// (ratio estimator over replicates).
std::vector<CurvePoint> pool_k_function(std::span<const KSums> reps, const KFunctionOptions& options);
// ĝ on shells between consecutive grid radii, reported at shell midpoints.
std::vector<CurvePoint> pool_pair_correlation(std::span<const KSums> reps, const KFunctionOptions& options, int dim);

ReplicateSummary summarize(const mnw::Tessellation& y, std::size_t index, double minus_sampling_delta = -1);

}  // namespace stitlab::estimators
