#include "stitlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stitlab/errors.hpp"
#include "stitlab/numerics.hpp"

namespace stitlab::stats {

double EstimateWithError::z() const {
    if (!target) return 0;
    double diff = estimate - *target;
    if (se > 0) return diff / se;
    return diff == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
}

double mean(std::span<const double> x) {
    if (x.empty()) throw DomainError("mean of an empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    if (x.size() < 2) throw DomainError("variance needs at least two values");
    double m = mean(x), s = 0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

EstimateWithError aggregate(std::span<const double> x, std::optional<double> target) {
    EstimateWithError e;
    e.n = x.size();
    e.estimate = mean(x);
    e.se = x.size() >= 2 ? std::sqrt(variance(x) / static_cast<double>(x.size())) : 0.0;
    e.target = target;
    return e;
}

EstimateWithError variance_estimate(std::span<const double> x, std::optional<double> target) {
    const double n = static_cast<double>(x.size());
    if (x.size() < 4) throw DomainError("variance estimate needs at least four values");
    double m = mean(x), m2 = 0, m4 = 0;
    for (double v : x) {
        double d = (v - m) * (v - m);
        m2 += d;
        m4 += d * d;
    }
    m2 /= n;
    m4 /= n;
    EstimateWithError e;
    e.n = x.size();
    e.estimate = m2 * n / (n - 1);
    double s4 = e.estimate * e.estimate;
    e.se = std::sqrt(std::max(0.0, (m4 - (n - 3) / (n - 1) * s4) / n));
    e.target = target;
    return e;
}

EstimateWithError ratio_estimate(std::span<const double> x, std::span<const double> y, std::optional<double> target) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("ratio estimate needs paired samples");
    const double n = static_cast<double>(x.size());
    double sx = std::accumulate(x.begin(), x.end(), 0.0);
    double sy = std::accumulate(y.begin(), y.end(), 0.0);
    if (sy == 0) throw EmptySample("ratio estimate with zero denominator");
    double r = sx / sy, ybar = sy / n, s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - r * y[i]) * (x[i] - r * y[i]);
    EstimateWithError e;
    e.n = x.size();
    e.estimate = r;
    e.se = std::sqrt(s / (n * (n - 1))) / ybar;
    e.target = target;
    return e;
}

NormalityDiagnostics normality_diagnostics(std::span<const double> x) {
    NormalityDiagnostics d;
    d.n = x.size();
    if (x.size() < 3) return d;
    const double n = static_cast<double>(x.size());
    double m = mean(x), m2 = 0, m3 = 0, m4 = 0;
    for (double v : x) {
        double c = v - m;
        m2 += c * c;
        m3 += c * c * c;
        m4 += c * c * c * c;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (!(m2 > 0)) return d;
    d.defined = true;
    double g1 = m3 / std::pow(m2, 1.5);
    d.skewness = std::sqrt(n * (n - 1)) / (n - 2) * g1;
    d.skewness_se = std::sqrt(6 * n * (n - 1) / ((n - 2) * (n + 1) * (n + 3)));
    d.excess_kurtosis = m4 / (m2 * m2) - 3;
    double sd = std::sqrt(m2 * n / (n - 1));
    auto ks = ks_test(x, [&](double v) { return numerics::normal_cdf((v - m) / sd); });
    d.ks_statistic = ks.statistic;
    d.ks_pvalue = ks.pvalue;
    return d;
}

KsResult ks_test(std::span<const double> x, std::span<const double> w, const std::function<double(double)>& cdf) {
    if (x.empty() || x.size() != w.size()) throw EmptySample("KS test needs a non-empty weighted sample");
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    double total = 0, total2 = 0;
    for (double v : w) {
        total += v;
        total2 += v * v;
    }
    double acc = 0, dmax = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        double f = cdf(x[order[k]]);
        dmax = std::max(dmax, f - acc / total);
        acc += w[order[k]];
        dmax = std::max(dmax, acc / total - f);
    }
    KsResult r;
    r.statistic = dmax;
    r.n_effective = total * total / total2;
    r.pvalue = numerics::kolmogorov_pvalue(dmax, r.n_effective);
    r.critical_01 = numerics::kolmogorov_critical(0.01, r.n_effective);
    return r;
}

KsResult ks_test(std::span<const double> x, const std::function<double(double)>& cdf) {
    std::vector<double> w(x.size(), 1.0);
    return ks_test(x, w, cdf);
}

double poisson_two_sided_pvalue(double observed, double mu) {
    // P(X <= k) = Q(k+1, mu), P(X >= k) = P(k, mu).
    double k = std::round(observed);
    double lower = numerics::gamma_q(k + 1, mu);
    double upper = k <= 0 ? 1.0 : numerics::gamma_p(k, mu);
    return std::min(1.0, 2 * std::min(lower, upper));
}

}  // namespace stitlab::stats
