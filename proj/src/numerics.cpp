#include "stitlab/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "stitlab/errors.hpp"

namespace stitlab::numerics {

namespace {

constexpr std::array<double, 8> kXk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                       0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                       0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                       0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                       0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                       0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                       0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void gauss_kronrod(const std::function<double(double)>& f, double a, double b, double& kronrod, double& gauss) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    kronrod = kWk[7] * fc;
    gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = h * kXk[i];
        double s = f(c - dx) + f(c + dx);
        kronrod += kWk[i] * s;
        if (i % 2 == 1) gauss += kWg[i / 2] * s;
    }
    kronrod *= h;
    gauss *= h;
}

struct Piece {
    double a, b, value, error;
    int depth;
    bool operator<(const Piece& o) const { return error < o.error; }
};

Piece evaluate(const std::function<double(double)>& f, double a, double b, int depth) {
    double k, g;
    gauss_kronrod(f, a, b, k, g);
    if (!std::isfinite(k) || !std::isfinite(g)) throw NonConvergence("quad_1d: non-finite integrand value");
    return {a, b, k, std::fabs(k - g), depth};
}

double gamma_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 100000; ++n) {
        ap += 1;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1 - a, c = 1 / tiny, d = 1 / b, h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -i * (i - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double ks_tail(double lambda) {
    if (lambda < 0.2) return 1.0;
    double sum = 0, sign = 1;
    for (int k = 1; k <= 200; ++k) {
        double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::fabs(term) < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2 * sum, 0.0, 1.0);
}

double ks_scale(double n) {
    double sn = std::sqrt(n);
    return sn + 0.12 + 0.11 / sn;
}

}  // namespace

double quad_1d(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0;
    if (b < a) return -quad_1d(f, b, a, tol);
    // Global adaptive bisection of the interval with the largest error.
    std::priority_queue<Piece> pieces;
    Piece first = evaluate(f, a, b, 0);
    double value = first.value, error = first.error;
    pieces.push(first);
    while (error > tol && error > 4 * std::numeric_limits<double>::epsilon() * std::fabs(value)) {
        Piece p = pieces.top();
        pieces.pop();
        if (p.depth >= 50) throw NonConvergence("quad_1d: recursion depth limit reached");
        double m = 0.5 * (p.a + p.b);
        Piece l = evaluate(f, p.a, m, p.depth + 1), r = evaluate(f, m, p.b, p.depth + 1);
        value += l.value + r.value - p.value;
        error += l.error + r.error - p.error;
        pieces.push(l);
        pieces.push(r);
    }
    // Re-sum to shed the rounding accumulated in the running totals.
    double sum = 0;
    while (!pieces.empty()) {
        sum += pieces.top().value;
        pieces.pop();
    }
    return sum;
}

double gamma_p(double a, double x) {
    if (a <= 0 || x < 0 || std::isnan(x)) throw DomainError("incomplete gamma requires a > 0 and x >= 0");
    if (x == 0) return 0;
    if (std::isinf(x)) return 1;
    return x < a + 1 ? gamma_series(a, x) : 1 - gamma_cf(a, x);
}

double gamma_q(double a, double x) {
    if (a <= 0 || x < 0 || std::isnan(x)) throw DomainError("incomplete gamma requires a > 0 and x >= 0");
    if (x == 0) return 1;
    if (std::isinf(x)) return 0;
    return x < a + 1 ? 1 - gamma_series(a, x) : gamma_cf(a, x);
}

double lower_incomplete_gamma(double a, double x) { return std::tgamma(a) * gamma_p(a, x); }

double exp_integral_e1(double x) {
    if (x < 0 || std::isnan(x)) throw DomainError("E1 requires x >= 0");
    if (x == 0) return std::numeric_limits<double>::infinity();
    if (x <= 1) {
        double sum = 0, term = 1;
        for (int k = 1; k < 200; ++k) {
            term *= -x / k;
            double add = term / k;
            sum += add;
            if (std::fabs(add) < 1e-18) break;
        }
        return -std::numbers::egamma - std::log(x) - sum;
    }
    const double tiny = 1e-300;
    double b = x + 1, c = 1 / tiny, d = 1 / b, h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -static_cast<double>(i) * i;
        b += 2;
        d = 1 / (an * d + b);
        c = b + an / c;
        double del = c * d;
        h *= del;
        if (std::fabs(del - 1) < 1e-16) break;
    }
    return h * std::exp(-x);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (p <= 0 || p >= 1) throw DomainError("normal quantile requires 0 < p < 1");
    // Acklam's rational approximation followed by one Halley step.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                               1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                               6.680131188771972e+01,  -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                               -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                               3.754408661907416e+00};
    double x;
    if (p < 0.02425) {
        double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= 1 - 0.02425) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        double q = std::sqrt(-2 * std::log(1 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    double e = normal_cdf(x) - p;
    double u = e * std::sqrt(2 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1 + 0.5 * x * u);
}

double chi2_sf(double x, double k) { return x <= 0 ? 1.0 : gamma_q(0.5 * k, 0.5 * x); }

double kolmogorov_pvalue(double d, double n) { return ks_tail(ks_scale(n) * d); }

double kolmogorov_critical(double alpha, double n) {
    double lo = 0.2, hi = 5.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (ks_tail(mid) > alpha) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi) / ks_scale(n);
}

}  // namespace stitlab::numerics
