#include <doctest.h>

#include <cmath>

#include "hardcount/exact.hpp"
#include "hardcount/generate.hpp"
#include "hardcount/lclt.hpp"

using namespace hardcount;

TEST_CASE("lclt error on a single vertex") {
    IntPolynomial single{{1, 1}};
    auto rep = lclt_error(single, 1.0, 1, "single");
    // sigma = 1/2; sup over {0,1} of |2 N(1) - 1/2| = |0.48394 - 0.5|.
    CHECK(rep.sup_error == doctest::Approx(0.0161).epsilon(0.01));
    CHECK(rep.sup_error >= 0.0);
    CHECK(rep.sigma2 == doctest::Approx(0.25));
}

TEST_CASE("clt distance fixtures") {
    IntPolynomial single{{1, 1}};
    const double d = clt_distance(single, 1.0);
    // Jump at x = -1: the CDF rises to 1/2 while Phi(-1) = 0.1587, so the
    // Kolmogorov sup is |1/2 - Phi(-1)|.
    CHECK(d == doctest::Approx(0.5 - normal_cdf(-1.0)).epsilon(1e-6));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
}

TEST_CASE("clt distance decreases along the cycle family") {
    double prev = 1.0;
    for (int n : {40, 100, 260}) {
        auto poly = cycle_polynomial_transfer(n);
        const double d = clt_distance(poly, 1.0);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("fourier profile") {
    auto poly = cycle_polynomial_transfer(100);
    FourierProfile prof = fourier_profile(poly, 0.5, 100, {0.1, 0.5, 1.0, 2.0, 3.0});
    CHECK(prof.fitted_c > 0.0);
    for (const auto& row : prof.rows) {
        CHECK(row.modulus <= 1.0 + 1e-12);
        // Fitted c is the largest making the bound hold on the grid.
        CHECK(row.modulus <= row.bound * (1 + 1e-9) + 1e-13);
    }
    // Modulus at t = 0 is 1.
    CHECK(std::abs(characteristic_function(poly, 0.5, 0.0)) == doctest::Approx(1.0));
}

TEST_CASE("variance bounds on fixtures") {
    IntPolynomial single{{1, 1}};
    auto vc = variance_bound_check(single, 1.0, 1, 3);
    CHECK(vc.lower_ok); // 1/4 >= 1/128
    CHECK(vc.lower_bound == doctest::Approx(1.0 / 128));

    for (int n : {8, 14, 20}) {
        auto poly = cycle_polynomial_transfer(n);
        for (double lambda : {0.1, 0.6, 1.4}) {
            auto v = variance_bound_check(poly, lambda, n, 2);
            CHECK(v.lower_ok);
        }
    }
    // Ratio Var/(lambda n) bounded along the family at lambda = 1.
    for (int n : {60, 120, 240}) {
        auto poly = cycle_polynomial_transfer(n);
        auto v = variance_bound_check(poly, 1.0, n, 2);
        CHECK(v.ratio_to_lambda_n < 1.0);
        CHECK(v.ratio_to_lambda_n > 0.05);
    }
}

TEST_CASE("both error-rate regimes computed with the min reported") {
    // Moderate lambda: variance is order n and the polylog regime wins.
    auto big = lclt_error(cycle_polynomial_transfer(300), 1.0, 300, "cycle");
    CHECK(big.regime_min == std::min(big.regime_polylog, big.regime_binomial));
    CHECK(big.regime_min == big.regime_polylog);
    // Tiny lambda: sigma^2 = O(1) flips the minimum to the binomial regime.
    auto small = lclt_error(cycle_polynomial_transfer(300), 0.005, 300, "cycle");
    CHECK(small.regime_min == small.regime_binomial);
}

TEST_CASE("low-phase gap profile is recorded and finite") {
    auto rows = low_phase_profile(cycle_polynomial_transfer(120), 1.0, {0.25, 0.5, 1.0, 2.0});
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(r.gap_times_sigma >= 0.0);
        CHECK(std::isfinite(r.gap_times_sigma));
    }
}

TEST_CASE("cycle sweep: normalized LCLT error stays bounded and CSV is stable") {
    auto reports = cycle_sweep({60, 120, 240}, 1.0, par::Mode::serial);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
        CHECK(r.sup_error >= 0.0);
        CHECK(r.fitted_c > 0.0);
    }
    // No upward trend beyond a factor 2 of the first point.
    for (const auto& r : reports) CHECK(r.normalized <= 2.0 * reports.front().normalized + 1e-12);

    const std::string csv = reports_to_csv(reports);
    CHECK(csv.rfind("family,n,lambda,sigma2,sup_error,normalized,clt_kolmogorov,fitted_c\n", 0) == 0);
    CHECK(csv == reports_to_csv(cycle_sweep({60, 120, 240}, 1.0, par::Mode::serial)));
}
