#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "stitlab/compare.hpp"
#include "stitlab/errors.hpp"
#include "stitlab/estimators.hpp"
#include "stitlab/formulas.hpp"
#include "stitlab/stats.hpp"

using namespace stitlab;
using geometry::ConvexPolytope;
using measures::HyperplaneMeasureSpec;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("hyperplane count and total length in the unit disk") {
    auto spec = HyperplaneMeasureSpec::isotropic(2);
    auto w = Window::ball(2, 1);
    Rng rng(101);
    const int reps = 3000;
    double count = 0;
    std::vector<double> totals;
    for (int i = 0; i < reps; ++i) {
        auto p = compare::run_pht(spec, 3, w, rng);
        count += p.hyperplanes.size();
        totals.push_back(p.total_surface);
        for (double m : p.section_measures) {
            CHECK(m > 0);
            CHECK(m <= 2 + 1e-12);
        }
    }
    // Λ([B_1]) = 2, so the total count is Poisson(6 reps).
    CHECK(stats::poisson_two_sided_pvalue(count, 6.0 * reps) > 1e-3);
    // Each line contributes a chord with mean Vol_2 / (half the mean width).
    auto mean = stats::aggregate(totals, 3 * kPi);
    CHECK(std::fabs(mean.z()) < 3);
    // Campbell: Var = t J(B_1).
    auto var = stats::variance_estimate(totals, 3 * formulas::pht_J_ball(2, 1));
    CHECK(std::fabs(var.z()) < 3);
}

TEST_CASE("Campbell variance cross-check") {
    Rng rng(102);
    // Ball windows: Monte Carlo against t J(B_R).
    for (int d : {2, 3}) {
        auto spec = HyperplaneMeasureSpec::isotropic(d);
        auto c = compare::campbell_variance(spec, 2, Window::ball(d, 1.5), 20000, rng);
        double exact = 2 * formulas::pht_J_ball(d, 1.5);
        CHECK(std::fabs(c.estimate - exact) < 3 * c.se);
        CHECK(c.se < 0.02 * exact);
    }
    // A box and a non-isotropic measure: Monte Carlo against replicate variance.
    auto spec = HyperplaneMeasureSpec::discrete(
        2, {{{1, 0, 0}, 1}, {{0, 1, 0}, 2}, {{1, 1, 0}, 1}});
    auto w = Window::polytope(ConvexPolytope::box(2, {0, 0, 0}, {2, 1, 0}));
    auto c = compare::campbell_variance(spec, 4, w, 40000, rng);
    std::vector<double> totals;
    for (int i = 0; i < 4000; ++i) totals.push_back(compare::run_pht(spec, 4, w, rng).total_surface);
    auto v = stats::variance_estimate(totals);
    CHECK(std::fabs(v.estimate - c.estimate) < 3 * std::hypot(v.se, c.se));
    // Mean total surface is t Vol(W) for every normalized measure.
    CHECK(std::fabs(stats::aggregate(totals, 8.0).z()) < 3);
}

TEST_CASE("d = 3 sections are polygons on their planes") {
    auto spec = HyperplaneMeasureSpec::isotropic(3);
    auto w = Window::polytope(ConvexPolytope::box(3, {0, 0, 0}, {1, 2, 1}));
    Rng rng(103);
    auto p = compare::run_pht(spec, 5, w, rng);
    REQUIRE(!p.hyperplanes.empty());
    CHECK(p.facets.size() <= p.hyperplanes.size());
    double total = 0;
    for (const auto& f : p.facets) {
        CHECK(f.vertices.size() >= 3);
        for (const auto& v : f.vertices) CHECK(std::fabs(f.carrier.signed_distance(v)) < 1e-9);
        total += f.area;
    }
    CHECK(total == doctest::Approx(p.total_surface).epsilon(1e-12));
}

TEST_CASE("same seed reproduces the Poisson tessellation") {
    auto spec = HyperplaneMeasureSpec::isotropic(2);
    auto w = Window::ball(2, 2);
    Rng a(7), b(7);
    auto p = compare::run_pht(spec, 4, w, a), q = compare::run_pht(spec, 4, w, b);
    REQUIRE(p.hyperplanes.size() == q.hyperplanes.size());
    for (std::size_t i = 0; i < p.hyperplanes.size(); ++i) {
        CHECK(p.hyperplanes[i].offset == q.hyperplanes[i].offset);
        CHECK(p.section_measures[i] == q.section_measures[i]);
    }
    CHECK(p.total_surface == q.total_surface);
}

TEST_CASE("K-function of the Poisson line tessellation") {
    auto spec = HyperplaneMeasureSpec::isotropic(2);
    auto w = Window::polytope(ConvexPolytope::box(2, {0, 0, 0}, {5, 5, 0}));
    const double t = 2;
    estimators::KFunctionOptions o{.r_grid = {0.25, 0.5, 1.0}, .erosion = 1.0, .element_size = 0, .t = t};
    Rng rng(104);
    std::vector<estimators::KSums> sums;
    for (int i = 0; i < 200; ++i) {
        auto p = compare::run_pht(spec, t, w, rng);
        sums.push_back(estimators::k_function_sums(p.facets, w, o));
    }
    auto k = estimators::pool_k_function(sums, o);
    for (const auto& c : k) {
        double target = formulas::pht_K(2, t, c.r);
        CHECK(target == doctest::Approx(kPi * c.r * c.r + 2 * c.r / t).epsilon(1e-14));
        CHECK(std::fabs(c.value - target) < 3 * c.se);
    }
}

TEST_CASE("comparison table") {
    std::vector<double> radii{10, 1000};
    auto rows = compare::comparison_table(2, 1.5, radii);
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
        if (r.model == "PHT") CHECK(r.variance == doctest::Approx(1.5 * 16.0 / 3 * r.R * r.R * r.R).epsilon(1e-12));
        if (r.model == "STIT") CHECK(r.variance == doctest::Approx(kPi * kPi * r.R * r.R * std::log(r.R)).epsilon(1e-12));
        if (r.model == "PVT") CHECK(r.provenance == formulas::Provenance::LiteratureConstant);
    }
    // Growth ordering PVT < STIT < PHT at large R.
    CHECK(rows[3].model == "PVT");
    CHECK(rows[3].variance < rows[4].variance);
    CHECK(rows[4].variance < rows[5].variance);

    auto rows3 = compare::comparison_table(3, 1, {50});
    REQUIRE(rows3.size() == 2);
    CHECK(rows3[0].variance == doctest::Approx(4 * kPi * kPi * std::pow(50.0, 4)).epsilon(1e-12));
    CHECK(rows3[0].variance < rows3[1].variance);
    CHECK_THROWS_AS(compare::comparison_table(4, 1, {10}), Unsupported);
}
