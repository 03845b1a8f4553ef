#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "shellrec/dispersion.hpp"

using namespace shellrec;

TEST_CASE("eval_b basics") {
    CHECK(eval_b(DispersionSpec::zero(), 7.0) == 0.0);
    CHECK(eval_b(DispersionSpec::cubic(0.5), 2.0) == doctest::Approx(4.0));
    // b3 = d0/(2c) with d0 = c = 1
    CHECK(eval_b(DispersionSpec::cubic(1.0 / 2.0), 1.0) == doctest::Approx(0.5));
    // cubic with b3 = 0 reduces to the zero law
    CHECK(eval_b(DispersionSpec::cubic(0.0), 3.3) == 0.0);
}

TEST_CASE("exact multiplier phase") {
    const DispersionSpec zero = DispersionSpec::zero(2.0);
    CHECK(exact_multiplier_phase(zero, 0.0, 5.0) == 0.0);
    CHECK(exact_multiplier_phase(zero, 1.5, 2.0) == doctest::Approx(2.0 * 1.5 * 2.0));

    const DispersionSpec full = DispersionSpec::full_sqrt(1.0, 1.0, 0.1);
    const double k = 1.3, t = 7.0;
    const double expect = std::sqrt(k * k + 0.01 * std::pow(k, 4)) * t;
    CHECK(exact_multiplier_phase(full, k, t) == doctest::Approx(expect).epsilon(1e-14));

    CHECK_THROWS_AS(exact_multiplier_phase(zero, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(exact_multiplier_phase(zero, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("multiplier has modulus one") {
    const DispersionSpec full = DispersionSpec::full_sqrt(1.0, 2.0, 0.2);
    for (double k : {0.0, 0.3, 1.0, 2.7}) {
        const double phi = exact_multiplier_phase(full, k, 123.4);
        const auto m = std::polar(1.0, -phi);
        CHECK(std::abs(m) == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("full square-root law approaches the cubic law quadratically in eps") {
    // |sqrt(c^2k^2+eps^2 d0 k^4) tau/eps^2 - (c k tau/eps^2 + (d0 k^3/2c) tau)|
    // shrinks like eps^2: successive ratios approach 4
    const double c = 1.0, d0 = 1.0, tau = 1.0, k = 1.2;
    const DispersionSpec cubic = DispersionSpec::cubic(d0 / (2.0 * c), c);
    double prev = 0.0;
    std::vector<double> gaps;
    for (double eps : {0.2, 0.1, 0.05}) {
        const double t = tau / (eps * eps);
        const DispersionSpec full = DispersionSpec::full_sqrt(c, d0, eps);
        const DispersionSpec cube = cubic.with_epsilon(eps);
        const double gap =
            std::abs(exact_multiplier_phase(full, k, t) - exact_multiplier_phase(cube, k, t));
        gaps.push_back(gap);
        if (prev > 0.0) {
            const double ratio = prev / gap;
            CHECK(ratio > 3.2); // 4 +- 20%
            CHECK(ratio < 4.8);
        }
        prev = gap;
    }
    CHECK(gaps.back() < gaps.front());
}

TEST_CASE("invalid constants are rejected") {
    CHECK_THROWS_AS(DispersionSpec::zero(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(DispersionSpec::full_sqrt(1.0, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(DispersionSpec::full_sqrt(1.0, 1.0, -0.1), std::invalid_argument);
}
