#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "stitlab/measures.hpp"
#include "stitlab/random.hpp"
#include "stitlab/stats.hpp"

// Closed-form mean values, moments, variances and second-order functions of
// stationary isotropic STIT tessellations with surface intensity t.
namespace stitlab::formulas {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Provenance { Analytic, LiteratureConstant };
std::string to_string(Provenance p);

struct FormulaResult {
    double value = 0;
    bool exists = true;  // false exactly when value is +inf
    Provenance provenance = Provenance::Analytic;
};

double kappa(int j);
// Sectional intensity factor: a k-flat section of Y(t) is Y(λ_k t).
double lambda_k(int d, int k);
// d κ_d / κ_{d-1} = 2√π Γ((d+1)/2) / Γ(d/2).
double shape_constant(int d);
double binomial(int n, int k);

double intensity_NkI(int d, int k, double t);
double intensity_SV(int d, int k, double t);
// Density of the j-th intrinsic volume of the k-skeleton.
double intrinsic_density(int d, int k, int j, double t);
double mean_vol_Ik(int d, int k, double t);

std::vector<double> f_vector(int k);
double mean_intrinsic(int d, int k, int j, double t);

double isegment_density(int d, double t, double x);
double isegment_cdf(int d, double t, double x);
FormulaResult isegment_moment(int d, int n, double t);
// Planar isotropic I-segments can only be minus-sampled when they fit in the
// eroded a × b box. fit_fraction is the share of directions for which a
// segment of length L fits; the conditional law below is the length law
// reweighted by it, which is what the weighted minus-sampled sample follows.
double isegment_box_fit_fraction(double a, double b, double L);
double isegment_box_conditional_cdf(double t, double a, double b, double x);
double isegment_box_conditional_mean(double t, double a, double b);
FormulaResult moments_volk(int d, int k, int n, double t);
// Second moment of Vol_{k-1} of the boundary of the typical k-face.
FormulaResult boundary_second_moment(int d, int k, double t);
// The published d = 3 perimeter value, kept as printed.
FormulaResult perimeter_second_moment_3d(double t);

struct JFaceRelations {
    double N_kJ = 0;
    double N_Jk0 = 0;
    double N_Ikj = 0;
    double EVj_Jk = 0;
};
JFaceRelations jface_relations(int d, int k, int j, double t);

// Var Vol_{d-1}(Y(t, W)) for a window with isotropized set covariance
// gbar supported on [0, r_max].
double variance_exact(int d, double t, const std::function<double(double)>& gbar, double r_max, double tol = 1e-9);
double variance_exact_ball(int d, double t, double R, double tol = 1e-9);
double variance_exact_ball3_closed(double t, double R);
// Direction-averaged Vol_d(B ∩ (B + r u)) for a box with the given extents.
double set_covariance_box_iso(int d, const std::array<double, 3>& extents, double r);
double variance_exact_box(int d, double t, const std::array<double, 3>& extents, double tol = 1e-9);

// Chord power integral I_{d-1} and 2-energy of windows.
double chord_power_ball(int d);
// Published unit cube value, kept as printed.
FormulaResult chord_power_cube3();
// E_2 of the unit cube, by exact reduction to a smooth double integral.
double energy2_cube3();
double energy2_ball(int d);
double energy2_from_chord_power(int d, double chord_power);

// Leading term of Var Vol_{d-1}(Y(t, R W)). For d = 2 pass Vol_2(W), for
// d >= 3 pass I_{d-1}(W).
double variance_asymptotic(int d, double window_functional, double R);

double pair_correlation(int d, double t, double r);
double K_function(int d, double t, double r);

double clt_variance_factor(int d, double window_volume);

// Var Ξ(W) and its finite-time analogue Var Vol_{d-1}(Y(R, W)) for the
// axis-counting measure on the unit cube, by nested quadrature.
double xi_variance_axis_cube(double R = kInfinity);
// Isotropic balls: ((d-1)/2) E_2(B_s^d).
double xi_variance_iso_ball(int d, double s);
// Monte Carlo over hitting hyperplanes and polar pairs on H ∩ W. A finite R
// gives the variance of the total surface of Y(R, W) instead of Var Ξ(W).
stats::EstimateWithError xi_variance_mc(const measures::HyperplaneMeasureSpec& spec,
                                        const geometry::ConvexPolytope& window, std::size_t samples, Rng& rng,
                                        double R = kInfinity);

struct PhtFormulas {
    double K = 0;
    double g = 0;
    double J_ball = 0;
    double var_asym = 0;  // t J(B_R^d)
};
PhtFormulas pht_formulas(int d, double t, double r, double R);
double pht_K(int d, double t, double r);
double pht_g(int d, double t, double r);
double pht_J_ball(int d, double R);

// Planar Poisson-Voronoi variance constant (published numerical value).
FormulaResult pvt_tau1_planar();

struct CatalogRow {
    std::string id;
    std::string parameters;
    double value = 0;
    Provenance provenance = Provenance::Analytic;
};
std::vector<CatalogRow> catalog();

}  // namespace stitlab::formulas
