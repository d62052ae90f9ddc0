#include "stitlab/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stitlab/errors.hpp"
#include "stitlab/geometry.hpp"
#include "stitlab/numerics.hpp"

namespace stitlab::formulas {

namespace {

const double kPi = std::numbers::pi;

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

void require_t(double t) { require(t > 0, "intensity t must be positive"); }

FormulaResult finite(double v) { return {v, true, Provenance::Analytic}; }
FormulaResult divergent() { return {kInfinity, false, Provenance::Analytic}; }

// Σ_{n>=0} (-z)^n / (n! (a + n)) = γ(a, z) / z^a, stable for small z.
double gamma_ratio_series(double a, double z) {
    double term = 1, sum = 1 / a;
    for (int n = 1; n < 200; ++n) {
        term *= -z / n;
        double add = term / (a + n);
        sum += add;
        if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
}

double gamma_ratio(double a, double z) {
    if (z < 1) return gamma_ratio_series(a, z);
    return numerics::lower_incomplete_gamma(a, z) / std::pow(z, a);
}

}  // namespace

std::string to_string(Provenance p) {
    return p == Provenance::Analytic ? "analytic" : "literature-constant";
}

double kappa(int j) {
    require(j >= 0, "kappa needs j >= 0");
    return std::pow(kPi, 0.5 * j) / std::tgamma(1 + 0.5 * j);
}

double lambda_k(int d, int k) {
    require(1 <= k && k <= d, "lambda_k needs 1 <= k <= d");
    return std::tgamma(0.5 * (k + 1)) * std::tgamma(0.5 * d) / (std::tgamma(0.5 * k) * std::tgamma(0.5 * (d + 1)));
}

double shape_constant(int d) { return d * kappa(d) / kappa(d - 1); }

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double intensity_NkI(int d, int k, double t) {
    require(0 <= k && k < d, "intensity_NkI needs 0 <= k < d");
    require_t(t);
    return (d - k) * std::pow(2.0, d - k - 1) * kappa(d) / d * binomial(d, k) *
           std::pow(kappa(d - 1) / (d * kappa(d)), d) * std::pow(t, d);
}

double intrinsic_density(int d, int k, int j, double t) {
    require(0 <= j && j <= k && k < d, "intrinsic_density needs 0 <= j <= k < d");
    require_t(t);
    return std::pow(2.0, d - k - 1) * (d - k) / static_cast<double>(d - j) * binomial(d - j, d - k) * binomial(d, j) *
           std::pow(kappa(d - 1) / (d * kappa(d)), d - j) * kappa(d) / kappa(j) * std::pow(t, d - j);
}

double intensity_SV(int d, int k, double t) {
    require(0 <= k && k < d, "intensity_SV needs 0 <= k < d");
    require_t(t);
    return std::pow(2.0, d - k - 1) * binomial(d, k) * kappa(d) / kappa(k) *
           std::pow(kappa(d - 1) / (d * kappa(d)), d - k) * std::pow(t, d - k);
}

double mean_vol_Ik(int d, int k, double t) {
    require(0 <= k && k < d, "mean_vol_Ik needs 0 <= k < d");
    require_t(t);
    return d / ((d - k) * kappa(k)) * std::pow(shape_constant(d), k) / std::pow(t, k);
}

std::vector<double> f_vector(int k) {
    require(k >= 1, "f_vector needs k >= 1");
    std::vector<double> f;
    for (int j = 0; j < k; ++j) f.push_back(std::pow(2.0, k - j) * binomial(k, j));
    return f;
}

double mean_intrinsic(int d, int k, int j, double t) {
    require(0 <= j && j <= k && k < d, "mean_intrinsic needs 0 <= j <= k < d");
    require_t(t);
    return d / ((d - j) * kappa(j)) * binomial(k, j) * std::pow(shape_constant(d), j) / std::pow(t, j);
}

double isegment_density(int d, double t, double x) {
    require(d >= 1, "dimension must be positive");
    require_t(t);
    if (x <= 0) return 0;
    double l = lambda_k(d, 1) * t;
    return d * l * gamma_ratio(d + 1, l * x);
}

double isegment_cdf(int d, double t, double x) {
    require(d >= 1, "dimension must be positive");
    require_t(t);
    if (x <= 0) return 0;
    double z = lambda_k(d, 1) * t * x;
    if (z < 1) {
        // 1 - d Σ (-z)^n/(n!(d+n)) with the n = 0 term cancelled.
        double term = 1, sum = 0;
        for (int n = 1; n < 200; ++n) {
            term *= -z / n;
            double add = term / (d + n);
            sum += add;
            if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
        }
        return -d * sum;
    }
    return 1 - d * gamma_ratio(d, z);
}

double isegment_box_fit_fraction(double a, double b, double L) {
    require(a > 0 && b > 0, "box extents must be positive");
    if (L <= std::min(a, b)) return 1;
    double lo = std::acos(std::min(1.0, a / L)), hi = std::asin(std::min(1.0, b / L));
    return std::max(0.0, hi - lo) * 2 / kPi;
}

namespace {

// ∫_0^x L^k q(L) f(L) dL, split where q changes form.
double fitted_moment(double t, double a, double b, double x, int k) {
    auto g = [&](double L) { return std::pow(L, k) * isegment_box_fit_fraction(a, b, L) * isegment_density(2, t, L); };
    double m = std::min(a, b), M = std::max(a, b), D = std::hypot(a, b);
    x = std::min(x, D);
    double sum = 0, from = 0;
    for (double to : {m, M, D}) {
        double hi = std::min(to, x);
        if (hi > from) sum += numerics::quad_1d(g, from, hi, 1e-13);
        from = std::max(from, to);
    }
    return sum;
}

}  // namespace

double isegment_box_conditional_cdf(double t, double a, double b, double x) {
    require_t(t);
    if (x <= 0) return 0;
    return std::min(1.0, fitted_moment(t, a, b, x, 0) / fitted_moment(t, a, b, kInfinity, 0));
}

double isegment_box_conditional_mean(double t, double a, double b) {
    require_t(t);
    return fitted_moment(t, a, b, kInfinity, 1) / fitted_moment(t, a, b, kInfinity, 0);
}

FormulaResult isegment_moment(int d, int n, double t) {
    require(d >= 1 && n >= 0, "isegment_moment needs d >= 1, n >= 0");
    require_t(t);
    if (n == 0) return finite(1);
    if (n >= d) return divergent();
    return finite(d * std::tgamma(n + 1.0) / (d - n) * std::pow(1 / lambda_k(d, 1), n) / std::pow(t, n));
}

FormulaResult moments_volk(int d, int k, int n, double t) {
    require(1 <= k && k < d, "moments_volk needs 1 <= k < d");
    require(n >= 1 && n <= 3, "moments_volk supports n = 1, 2, 3");
    require_t(t);
    double c = shape_constant(d);
    switch (n) {
        case 1: return finite(mean_vol_Ik(d, k, t));
        case 2:
            if (d - 2 * k <= 0) return divergent();
            return finite(static_cast<double>(d) / (d - 2 * k) * std::tgamma(k + 1.0) / std::pow(2.0, k) *
                          std::pow(c, 2 * k) / std::pow(t, 2 * k));
        default:
            if (d - 3 * k <= 0) return divergent();
            return finite(static_cast<double>(d) / (d - 3 * k) * std::pow(2.0, 2 * k) * std::pow(kPi, 0.5 * (k - 3)) *
                          std::pow(c, 3 * k) * std::tgamma(1 + 0.5 * k) * std::tgamma(k + 1.5) *
                          std::pow(std::tgamma(0.5 * (k + 1)), 3) / std::tgamma(1.5 * (k + 1)) / std::pow(t, 3 * k));
    }
}

FormulaResult boundary_second_moment(int d, int k, double t) {
    require(d >= 3 && 2 <= k && k < d, "boundary_second_moment needs d >= 3 and 2 <= k < d");
    require_t(t);
    if (d + 2 - 2 * k <= 0) return divergent();
    double q = k * kappa(k) / (2 * kappa(k - 1));
    return finite(static_cast<double>(d) / (d + 2 - 2 * k) * std::tgamma(k + 1.0) / std::pow(2.0, k - 2) *
                  std::pow(shape_constant(d), 2 - 2 * k) * (1 + q * q) / std::pow(t, 2 * k - 2));
}

FormulaResult perimeter_second_moment_3d(double t) {
    require_t(t);
    return {0.75 * (1 + kPi * kPi / 4) / (t * t), true, Provenance::LiteratureConstant};
}

JFaceRelations jface_relations(int d, int k, int j, double t) {
    require(0 <= j && j < k && k < d, "jface_relations needs 0 <= j < k < d");
    require_t(t);
    JFaceRelations r;
    r.N_kJ = d * (d - k + 1.0) / (d - k) * intensity_NkI(d, k, t);
    r.N_Jk0 = std::pow(2.0, k) / ((d - k + 1) * binomial(d, k));
    r.N_Ikj = (d - j) * binomial(d, j) / ((d - k) * binomial(d, k)) * std::pow(2.0, k - j);
    r.EVj_Jk = (d - j) / static_cast<double>(d) * mean_intrinsic(d, k, j, t);
    return r;
}

double variance_exact(int d, double t, const std::function<double(double)>& gbar, double r_max, double tol) {
    require(d >= 2, "variance_exact needs d >= 2");
    require_t(t);
    double c = 2 * kappa(d - 1) / (d * kappa(d));
    auto f = [&](double r) { return gbar(r) * std::pow(r, d - 3) * -std::expm1(-c * t * r); };
    return d * (d - 1) * kappa(d) / 2 * numerics::quad_1d(f, 0, r_max, tol);
}

double variance_exact_ball(int d, double t, double R, double tol) {
    require(d == 2 || d == 3, "ball set covariance available for d = 2, 3");
    require(R > 0, "radius must be positive");
    auto gbar = [d, R](double r) { return geometry::set_covariance_ball(d, R, r); };
    // Relative tolerance on the scale of the result.
    double scale = std::pow(R, 2 * d - 2);
    return variance_exact(d, t, gbar, 2 * R, tol * scale);
}

namespace {

// ∫_0^{π/2} (a - r cos θ)₊ (b - r sin θ)₊ dθ.
double box2_angle_integral(double a, double b, double r) {
    if (r <= 0) return kPi / 2 * a * b;
    double lo = r > a ? std::acos(a / r) : 0.0;
    double hi = r > b ? std::asin(b / r) : kPi / 2;
    if (hi <= lo) return 0;
    auto F = [&](double th) {
        double c = std::cos(th), s = std::sin(th);
        return a * b * th - a * r * (1 - c) - b * r * s + 0.5 * r * r * s * s;
    };
    return F(hi) - F(lo);
}

}  // namespace

double set_covariance_box_iso(int d, const std::array<double, 3>& extents, double r) {
    require(d >= 1 && d <= 3, "box covariance needs d in {1, 2, 3}");
    for (int i = 0; i < d; ++i) require(extents[i] > 0, "box extents must be positive");
    require(r >= 0, "distance must be non-negative");
    const double a = extents[0], b = extents[1], c = extents[2];
    if (d == 1) return std::max(0.0, a - r);
    if (d == 2) return 2 / kPi * box2_angle_integral(a, b, r);
    if (r >= std::sqrt(a * a + b * b + c * c)) return 0;
    // Octant average: (2/π) ∫ sin θ (c - r cos θ)₊ ∫ (a - ρ cos φ)₊ (b - ρ sin φ)₊ dφ dθ, ρ = r sin θ.
    double lower = r > c ? std::acos(c / r) : 0.0;
    auto f = [&](double th) {
        return std::sin(th) * (c - r * std::cos(th)) * box2_angle_integral(a, b, r * std::sin(th));
    };
    return 2 / kPi * numerics::quad_1d(f, lower, kPi / 2, 1e-13 * a * b * c);
}

double variance_exact_box(int d, double t, const std::array<double, 3>& extents, double tol) {
    require(d == 2 || d == 3, "box variance available for d = 2, 3");
    double diag2 = 0, vol = 1;
    for (int i = 0; i < d; ++i) {
        diag2 += extents[i] * extents[i];
        vol *= extents[i];
    }
    auto gbar = [d, &extents](double r) { return set_covariance_box_iso(d, extents, r); };
    return variance_exact(d, t, gbar, std::sqrt(diag2), tol * vol * std::pow(vol, (d - 2.0) / d));
}

double variance_exact_ball3_closed(double t, double R) {
    require_t(t);
    require(R > 0, "radius must be positive");
    double a = t * R;
    return 4 * kPi * kPi / (3 * std::pow(t, 4)) * (a * a * (12 - 8 * a + 3 * a * a) + 24 * (1 + a) * std::exp(-a) - 24);
}

double chord_power_ball(int d) {
    require(d >= 2, "chord_power_ball needs d >= 2");
    return d * std::pow(2.0, d - 2) * kappa(d) * kappa(2 * d - 2) / kappa(d - 1);
}

FormulaResult chord_power_cube3() {
    // The printed closed form does not reproduce this number; see energy2_cube3.
    return {3.7557, true, Provenance::LiteratureConstant};
}

double energy2_cube3() {
    // 48 ∫∫_{0≤b≤a≤1} ∫_0^1 (1-r)(1-ar)(1-br) dr / (1+a²+b²), with z = r(1,a,b).
    return 48 * numerics::quad_1d(
                    [](double a) {
                        return numerics::quad_1d(
                            [a](double b) { return (0.5 - (a + b) / 6 + a * b / 12) / (1 + a * a + b * b); }, 0, a,
                            1e-14);
                    },
                    0, 1, 1e-13);
}

double energy2_from_chord_power(int d, double chord_power) {
    require(d >= 3, "2-energy is finite only for d >= 3");
    return 2 * chord_power / ((d - 1.0) * (d - 2.0));
}

double energy2_ball(int d) { return energy2_from_chord_power(d, chord_power_ball(d)); }

double variance_asymptotic(int d, double w, double R) {
    require(d >= 2, "variance_asymptotic needs d >= 2");
    require(R > 1, "asymptotic variance needs R > 1");
    if (d == 2) return kPi * w * R * R * std::log(R);
    return std::pow(R, 2 * (d - 1)) * w / (d - 2);
}

double pair_correlation(int d, double t, double r) {
    require(d >= 2, "pair_correlation needs d >= 2");
    require_t(t);
    require(r > 0, "radius must be positive");
    double c = 2 * kappa(d - 1) / (d * kappa(d));
    return 1 + (d - 1) / (2 * t * t * r * r) * -std::expm1(-c * t * r);
}

double K_function(int d, double t, double r) {
    require_t(t);
    require(r > 0, "radius must be positive");
    if (d == 2) {
        double z = 2 * t * r / kPi;
        return kPi * r * r + kPi / (t * t) * (std::numbers::egamma + std::log(z) + numerics::exp_integral_e1(z));
    }
    if (d == 3) {
        double a = t * r;
        // 3a - 6 + 6e^{-a/2}, expanded for small a to avoid cancellation.
        double tail = a < 1e-3 ? 0.75 * a * a - 0.125 * a * a * a : 3 * a - 6 + 6 * std::exp(-0.5 * a);
        return 4 * kPi / 3 * r * r * r + 4 * kPi / (3 * t * t * t) * tail;
    }
    throw Unsupported("K-function available for d = 2, 3");
}

double clt_variance_factor(int d, double vol) {
    require(d >= 2, "clt_variance_factor needs d >= 2");
    return vol * std::pow(2.0, d - 1) * std::pow(kPi, d - 1.5) * std::pow(std::tgamma(0.5 * (d + 1)), d - 1) *
           std::pow(std::tgamma(0.5 * d), 2 - d);
}

double xi_variance_axis_cube(double R) {
    require(R > 0, "time must be positive");
    // Σ over three axes of ∫∫_{[0,1]^4} g(|a|+|b|); the pair weight of the
    // coordinate sum s = |a|+|b| is 4 w(s).
    auto w = [](double s) {
        if (s <= 1) return s - s * s + s * s * s / 6;
        double u = s - 1;
        return (1 - s) * (2 - s) + s * (1 - u * u) / 2 - (1 - u * u * u) / 3;
    };
    auto g = [R](double s) { return std::isinf(R) ? 1 / s : -std::expm1(-R * s) / s; };
    auto f = [&](double s) { return w(s) * g(s); };
    return 12 * (numerics::quad_1d(f, 0, 1, 1e-13) + numerics::quad_1d(f, 1, 2, 1e-13));
}

double xi_variance_iso_ball(int d, double s) {
    require(s > 0, "radius must be positive");
    return (d - 1) / 2.0 * energy2_ball(d) * std::pow(s, 2 * d - 2);
}

stats::EstimateWithError xi_variance_mc(const measures::HyperplaneMeasureSpec& spec,
                                        const geometry::ConvexPolytope& window, std::size_t samples, Rng& rng,
                                        double R) {
    if (spec.dim != 3 || window.dim() != 3) throw Unsupported("xi_variance_mc is implemented for d = 3");
    if (samples < 2) throw DomainError("need at least two samples");
    const double mass = measures::measure_hitting(spec, window);
    const double eps = 1e-12 * window.diameter();
    const auto& hs = window.halfspaces();
    std::vector<double> values;
    values.reserve(samples);
    while (values.size() < samples) {
        auto h = measures::sample_hitting(spec, window, rng);
        auto split = geometry::try_split(window, h, eps, 0.0);
        if (split.status != geometry::SplitStatus::Ok) continue;
        const auto& f = split.result->facet;
        // Uniform point on the section polygon by fan triangulation.
        const auto& v = f.vertices;
        std::vector<double> cum;
        double area = 0;
        for (std::size_t k = 1; k + 1 < v.size(); ++k) {
            area += 0.5 * norm(cross(v[k] - v[0], v[k + 1] - v[0]));
            cum.push_back(area);
        }
        double pick = rng.uniform() * area;
        std::size_t tri = std::lower_bound(cum.begin(), cum.end(), pick) - cum.begin();
        tri = std::min(tri, cum.size() - 1);
        double a = rng.uniform(), b = rng.uniform();
        if (a + b > 1) {
            a = 1 - a;
            b = 1 - b;
        }
        Vec3 x = v[0] + a * (v[tri + 1] - v[0]) + b * (v[tri + 2] - v[0]);
        Vec3 e1, e2;
        plane_basis(h.normal, e1, e2);
        double phi = 2 * kPi * rng.uniform();
        Vec3 u = std::cos(phi) * e1 + std::sin(phi) * e2;
        double ell = kInfinity;
        for (const auto& s : hs) {
            double du = dot(s.normal, u);
            if (du > 1e-15) ell = std::min(ell, std::max(0.0, (s.bound - dot(s.normal, x)) / du));
        }
        double m = measures::segment_measure(spec, {0, 0, 0}, u);
        // ∫_0^ℓ g(ρ) ρ dρ with g(ρ) = (1 - e^{-Rρm}) / (ρm).
        double radial = std::isinf(R) ? ell / m : (ell + std::expm1(-R * ell * m) / (R * m)) / m;
        values.push_back(mass * area * 2 * kPi * radial);
    }
    return stats::aggregate(values);
}

double pht_K(int d, double t, double r) {
    require(d >= 2, "pht_K needs d >= 2");
    require_t(t);
    return kappa(d - 1) / t * std::pow(r, d - 1) + kappa(d) * std::pow(r, d);
}

double pht_g(int d, double t, double r) {
    require(d >= 2, "pht_g needs d >= 2");
    require_t(t);
    require(r > 0, "radius must be positive");
    return 1 + (d - 1) * kappa(d - 1) / (d * kappa(d) * t * r);
}

double pht_J_ball(int d, double R) {
    require(d >= 2, "pht_J_ball needs d >= 2");
    double a = std::tgamma(static_cast<double>(d)) * kappa(d - 1);
    return a * a * std::pow(2 * R, 2 * d - 1) / std::tgamma(2.0 * d);
}

PhtFormulas pht_formulas(int d, double t, double r, double R) {
    PhtFormulas p;
    p.K = pht_K(d, t, r);
    p.g = pht_g(d, t, r);
    p.J_ball = pht_J_ball(d, R);
    p.var_asym = t * p.J_ball;
    return p;
}

FormulaResult pvt_tau1_planar() { return {1.0445685, true, Provenance::LiteratureConstant}; }

std::vector<CatalogRow> catalog() {
    std::vector<CatalogRow> rows;
    auto add = [&](std::string id, std::string params, double v, Provenance p = Provenance::Analytic) {
        rows.push_back({std::move(id), std::move(params), v, p});
    };
    auto add_result = [&](std::string id, std::string params, const FormulaResult& r) {
        rows.push_back({std::move(id), std::move(params), r.value, r.provenance});
    };
    auto params = [](std::initializer_list<std::pair<const char*, double>> kv) {
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, v] : kv) {
            if (!first) os << ';';
            first = false;
            os << k << '=' << v;
        }
        return os.str();
    };
    const double t = 1;
    for (int j = 0; j <= 4; ++j) add("kappa", params({{"j", j}}), kappa(j));
    for (int d = 2; d <= 3; ++d) {
        for (int k = 1; k <= d; ++k) add("lambda_k", params({{"d", d}, {"k", k}}), lambda_k(d, k));
        for (int k = 0; k < d; ++k) {
            add("intensity_NkI", params({{"d", d}, {"k", k}, {"t", t}}), intensity_NkI(d, k, t));
            add("intensity_SV", params({{"d", d}, {"k", k}, {"t", t}}), intensity_SV(d, k, t));
            add("mean_vol_Ik", params({{"d", d}, {"k", k}, {"t", t}}), mean_vol_Ik(d, k, t));
            for (int j = 0; j <= k; ++j)
                add("mean_intrinsic", params({{"d", d}, {"k", k}, {"j", j}, {"t", t}}), mean_intrinsic(d, k, j, t));
        }
        for (int k = 1; k < d; ++k)
            for (int j = 0; j < k; ++j) {
                auto r = jface_relations(d, k, j, t);
                auto p = params({{"d", d}, {"k", k}, {"j", j}, {"t", t}});
                add("N_kJ", p, r.N_kJ);
                add("N_Jk0", p, r.N_Jk0);
                add("N_Ikj", p, r.N_Ikj);
                add("EVj_Jk", p, r.EVj_Jk);
            }
        for (int n = 1; n <= 3; ++n)
            add_result("isegment_moment", params({{"d", d}, {"n", n}, {"t", t}}), isegment_moment(d, n, t));
        for (double x : {0.1, 1.0, 10.0}) {
            add("isegment_density", params({{"d", d}, {"t", t}, {"x", x}}), isegment_density(d, t, x));
            add("isegment_cdf", params({{"d", d}, {"t", t}, {"x", x}}), isegment_cdf(d, t, x));
        }
        for (double r : {0.25, 0.5, 1.0}) {
            add("pair_correlation", params({{"d", d}, {"t", t}, {"r", r}}), pair_correlation(d, t, r));
            add("K_function", params({{"d", d}, {"t", t}, {"r", r}}), K_function(d, t, r));
            add("pht_K", params({{"d", d}, {"t", t}, {"r", r}}), pht_K(d, t, r));
            add("pht_g", params({{"d", d}, {"t", t}, {"r", r}}), pht_g(d, t, r));
        }
        add("clt_variance_factor_unit_ball", params({{"d", d}}), clt_variance_factor(d, kappa(d)));
        add("pht_J_ball", params({{"d", d}, {"R", 1}}), pht_J_ball(d, 1));
        add("variance_exact_ball", params({{"d", d}, {"t", t}, {"R", 1}}), variance_exact_ball(d, t, 1));
    }
    for (int k = 2; k <= 3; ++k) {
        auto f = f_vector(k);
        for (int j = 0; j < k; ++j) add("f_vector", params({{"k", k}, {"j", j}}), f[j]);
    }
    for (int d = 2; d <= 4; ++d)
        for (int k = 1; k < d; ++k)
            for (int n = 2; n <= 3; ++n)
                add_result("moments_volk", params({{"d", d}, {"k", k}, {"n", n}, {"t", t}}), moments_volk(d, k, n, t));
    add_result("perimeter_second_moment_3d", params({{"t", t}}), perimeter_second_moment_3d(t));
    add_result("boundary_second_moment", params({{"d", 3}, {"k", 2}, {"t", t}}), boundary_second_moment(3, 2, t));
    add("variance_exact_ball3_closed", params({{"t", t}, {"R", 1}}), variance_exact_ball3_closed(t, 1));
    add("chord_power_ball", params({{"d", 3}}), chord_power_ball(3));
    add_result("chord_power_cube3", "", chord_power_cube3());
    add("energy2_ball", params({{"d", 3}}), energy2_ball(3));
    add("energy2_cube3", "", energy2_cube3());
    add("variance_asymptotic_ball", params({{"d", 2}, {"R", 64}}), variance_asymptotic(2, kPi, 64));
    add("variance_asymptotic_ball", params({{"d", 3}, {"R", 64}}), variance_asymptotic(3, chord_power_ball(3), 64));
    add("xi_variance_iso_ball", params({{"d", 3}, {"s", 1}}), xi_variance_iso_ball(3, 1));
    add("xi_variance_axis_cube", "", xi_variance_axis_cube());
    add_result("pvt_tau1_planar", "", pvt_tau1_planar());
    return rows;
}

}  // namespace stitlab::formulas
