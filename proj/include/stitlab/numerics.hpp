#pragma once

#include <functional>

namespace stitlab::numerics {

// Adaptive Gauss-Kronrod (7/15) quadrature on a finite interval with an
// absolute error target. Throws NonConvergence past recursion depth 50.
double quad_1d(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

// Lower incomplete gamma γ(a,x) and its regularized forms.
double lower_incomplete_gamma(double a, double x);
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// E1(x) = ∫_1^∞ e^{-xy}/y dy.
double exp_integral_e1(double x);

double normal_cdf(double z);
double normal_quantile(double p);
// Upper tail of the chi-square distribution with k degrees of freedom.
double chi2_sf(double x, double k);
// Asymptotic Kolmogorov p-value for a statistic D from n samples.
double kolmogorov_pvalue(double d, double n);
// Critical value of D at level alpha for n samples.
double kolmogorov_critical(double alpha, double n);

}  // namespace stitlab::numerics
