#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stitlab::stats {

struct EstimateWithError {
    double estimate = 0;
    double se = 0;
    std::size_t n = 0;
    std::optional<double> target;

    // (estimate - target) / se; 0 when both the SE and the discrepancy vanish.
    double z() const;
};

double mean(std::span<const double> x);
// Unbiased sample variance.
double variance(std::span<const double> x);

// Mean with its standard error.
EstimateWithError aggregate(std::span<const double> x, std::optional<double> target = std::nullopt);
// Sample variance with the SE of the variance estimator (fourth moment).
EstimateWithError variance_estimate(std::span<const double> x, std::optional<double> target = std::nullopt);
// Σx / Σy with a delta-method SE over the paired replicates.
EstimateWithError ratio_estimate(std::span<const double> x, std::span<const double> y,
                                 std::optional<double> target = std::nullopt);

struct NormalityDiagnostics {
    std::size_t n = 0;
    bool defined = false;  // false when the sample has zero spread
    double skewness = 0;   // adjusted Fisher-Pearson G1
    double skewness_se = 0;
    double excess_kurtosis = 0;
    double ks_statistic = 0;
    double ks_pvalue = 1;
};

NormalityDiagnostics normality_diagnostics(std::span<const double> x);

struct KsResult {
    double statistic = 0;
    double n_effective = 0;
    double pvalue = 1;
    double critical_01 = 0;
};

// Kolmogorov-Smirnov distance between a (weighted) empirical distribution
// and a continuous CDF; n_effective = (Σw)² / Σw².
KsResult ks_test(std::span<const double> x, std::span<const double> w, const std::function<double(double)>& cdf);
KsResult ks_test(std::span<const double> x, const std::function<double(double)>& cdf);

// Two-sided exact Poisson test of an observed total against mean mu.
double poisson_two_sided_pvalue(double observed, double mu);

}  // namespace stitlab::stats
