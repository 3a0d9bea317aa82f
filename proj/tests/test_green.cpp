#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "effham/green.hpp"

using namespace effham;

TEST_CASE("scaled kernel examples") {
    CHECK(green_scaled(0.5, 0.25, 1.0).imag == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(green_scaled(0.25, 0.5, 1.0).imag == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(green_scaled(0.3, 0.3, 1.0).imag == 0.0);
    CHECK(green_scaled(0.0, 0.0, 2.5).imag == 0.0);
    CHECK_THROWS_AS(green_scaled(1.5, 0.5, 1.0), std::out_of_range);
}

TEST_CASE("antisymmetry is exact in floating point") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        double hbar = 0.5 + u(rng);
        double t1 = u(rng) * hbar, t2 = u(rng) * hbar;
        CHECK(green_scaled(t1, t2, hbar).imag == -green_scaled(t2, t1, hbar).imag);
    }
}

TEST_CASE("unscaled kernel and the scaling identity") {
    // (hbar*beta/2, hbar*beta/4) -> hbar/4 for any beta
    for (double beta : {0.3, 1.0, 10.0}) {
        double hbar = 1.0;
        double v = green_unscaled(hbar * beta / 2, hbar * beta / 4, beta, hbar).imag;
        CHECK(v == doctest::Approx(hbar / 4).epsilon(1e-14));
    }
    CHECK(green_unscaled(0.7, 0.7, 1.3, 1.0).imag == 0.0);
    CHECK_THROWS_AS(green_unscaled(0.1, 0.1, -1.0, 1.0), std::domain_error);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        double hbar = 0.5 + 2.0 * u(rng);
        double beta = 0.1 + 5.0 * u(rng);
        double t1 = u(rng) * hbar, t2 = u(rng) * hbar;
        double unscaled = green_unscaled(beta * t1, beta * t2, beta, hbar).imag;
        double scaled = green_scaled(t1, t2, hbar).imag;
        CHECK(std::abs(unscaled - scaled) < 1e-12);
    }
}

TEST_CASE("beta independence of the scaled form") {
    double a = green_unscaled(1.0 * 0.6, 1.0 * 0.1, 1.0, 1.0).imag;
    double b = green_unscaled(10.0 * 0.6, 10.0 * 0.1, 10.0, 1.0).imag;
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
}

TEST_CASE("Matsubara partial sums") {
    CHECK(green_matsubara_partial(0.4, 0.4, 1.0, 1).imag == 0.0);
    CHECK(green_matsubara_partial(0.4, 0.4, 1.0, 5000).imag == 0.0);

    double v = green_matsubara_partial(0.5, 0.25, 1.0, 10000).imag;
    CHECK(std::abs(v - 0.25) < 1e-3);

    // odd under argument swap for every cutoff
    for (int m_max : {1, 3, 17, 200}) {
        double fwd = green_matsubara_partial(0.7, 0.2, 1.0, m_max).imag;
        double bwd = green_matsubara_partial(0.2, 0.7, 1.0, m_max).imag;
        CHECK(fwd == -bwd);
    }
    CHECK_THROWS_AS(green_matsubara_partial(0.5, 0.25, 1.0, 0), std::domain_error);
}

TEST_CASE("Matsubara converges to the piecewise form at interior points") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int i = 0; i < 50; ++i) {
        double t1 = u(rng), t2 = u(rng);
        if (std::abs(t1 - t2) < 0.05) continue;
        double exact = green_scaled(t1, t2, 1.0).imag;
        double m200 = green_matsubara_partial(t1, t2, 1.0, 200).imag;
        double m2000 = green_matsubara_partial(t1, t2, 1.0, 2000).imag;
        CHECK(std::abs(m2000 - exact) < std::abs(m200 - exact) + 1e-3);
        CHECK(std::abs(m2000 - exact) < 2e-2);
    }
}
