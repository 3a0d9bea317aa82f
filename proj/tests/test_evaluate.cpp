#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "effham/contraction.hpp"
#include "effham/evaluate.hpp"

using namespace effham;

namespace {

Polynomial hbar_term(Rational c, int power) {
    Monomial m;
    m[Symbol::Hbar] = static_cast<int16_t>(power);
    return Polynomial::term(c, m);
}

}  // namespace

TEST_CASE("single edge integrates to zero") {
    DiagramValue v = integrate_simplex(1, {{0, 1, 1}}, 2);
    CHECK(v.value.is_zero());
    CHECK(v.backend == Backend::Simplex);
}

TEST_CASE("k=1 loop: -hbar^4/12 exactly") {
    auto [coeff, edges] = loop_monomial(1);
    CHECK(coeff == Rational(1));
    DiagramValue v = integrate_simplex(coeff, edges, 2);
    CHECK(v.value == hbar_term(Rational(-1, 12), 4));
}

TEST_CASE("loop closed form values") {
    CHECK(loop_value_closed(1).value == hbar_term(Rational(-1, 12), 4));
    CHECK(loop_value_closed(2).value == hbar_term(Rational(1, 720), 8));
    CHECK(loop_value_closed(3).value == hbar_term(Rational(-1, 30240), 12));
    CHECK(loop_value_closed(1).backend == Backend::Matsubara);
    CHECK_THROWS_AS(loop_value_closed(0), std::domain_error);
}

TEST_CASE("simplex backend equals the closed form for k = 1, 2, 3") {
    for (unsigned k = 1; k <= 3; ++k) {
        auto [coeff, edges] = loop_monomial(k);
        DiagramValue simplex = integrate_simplex(coeff, edges, static_cast<int>(2 * k));
        CHECK(simplex.value == loop_value_closed(k).value);
    }
}

TEST_CASE("chains vanish: closed form and simplex agree") {
    CHECK_THROWS_AS(chain_value(1), std::domain_error);
    for (int len = 2; len <= 5; ++len) {
        CHECK(chain_value(len).value.is_zero());
        auto [coeff, edges] = chain_monomial(len);
        CHECK(integrate_simplex(coeff, edges, len).value.is_zero());
    }
}

TEST_CASE("a pendant edge kills any diagram (simplex check)") {
    // triangle-free "lollipop": double edge 0-1 plus pendant 1-2
    DiagramValue v = integrate_simplex(1, {{0, 1, 2}, {1, 2, 1}}, 3);
    CHECK(v.value.is_zero());
}

TEST_CASE("odd G count integrates to zero") {
    DiagramValue v3 = integrate_simplex(1, {{0, 1, 3}}, 2);
    CHECK(v3.value.is_zero());
    DiagramValue v1 = integrate_simplex(-2, {{0, 1, 1}}, 2);
    CHECK(v1.value.is_zero());
}

TEST_CASE("capacity limit") {
    CHECK_THROWS_AS(integrate_simplex(1, {{0, 1, 1}}, 9), CapacityError);
}

TEST_CASE("matsubara numeric loop values") {
    CHECK(matsubara_loop_numeric(1, 1) == doctest::Approx(-1.0 / (2.0 * M_PI * M_PI)).epsilon(1e-15));
    CHECK(std::abs(matsubara_loop_numeric(1, 10000) - (-1.0 / 12.0)) < 1e-4);
    CHECK(std::abs(matsubara_loop_numeric(2, 100) - (1.0 / 720.0)) < 1e-6);
    // hbar scaling: value goes as hbar^(4k)
    CHECK(matsubara_loop_numeric(1, 50, 2.0) ==
          doctest::Approx(16.0 * matsubara_loop_numeric(1, 50, 1.0)).epsilon(1e-13));
    CHECK_THROWS_AS(matsubara_loop_numeric(0, 10), std::domain_error);
    CHECK_THROWS_AS(matsubara_loop_numeric(1, 0), std::domain_error);
}

TEST_CASE("hbar power counts labels plus G factors") {
    auto [coeff, edges] = loop_monomial(2);
    DiagramValue v = integrate_simplex(coeff, edges, 4);
    REQUIRE(v.value.term_count() == 1);
    CHECK(v.value.terms().begin()->first[Symbol::Hbar] == 8);  // n=4, E=4

    // scaling property value(lambda hbar) = lambda^(n+E) value(hbar)
    double at1 = v.value.eval({{Symbol::Hbar, 1.0}});
    double at2 = v.value.eval({{Symbol::Hbar, 2.0}});
    CHECK(at2 == doctest::Approx(std::pow(2.0, 8) * at1).epsilon(1e-13));
}

TEST_CASE("fast path agrees with raw simplex integration on random integrands") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> nv(2, 5);
    std::uniform_int_distribution<int> ne(1, 5);
    std::uniform_int_distribution<int> mult(1, 2);
    std::uniform_int_distribution<int> cur(0, 2);
    std::uniform_int_distribution<long long> num(-6, 6);

    for (int trial = 0; trial < 40; ++trial) {
        int n = nv(rng);
        std::uniform_int_distribution<int> vx(0, n - 1);
        ContractionPoly integrand;
        int terms = 1 + ne(rng) % 3;
        for (int t = 0; t < terms; ++t) {
            ContractionKey key;
            key.x0_pow = static_cast<uint16_t>(cur(rng));
            key.p0_pow = static_cast<uint16_t>(cur(rng));
            std::map<std::pair<int, int>, int> mm;
            int edges = ne(rng);
            for (int e = 0; e < edges; ++e) {
                int a = vx(rng), b = vx(rng);
                if (a == b) continue;
                mm[{std::min(a, b), std::max(a, b)}] += mult(rng);
            }
            for (const auto& [ab, m] : mm)
                key.edges.push_back({static_cast<uint8_t>(ab.first),
                                     static_cast<uint8_t>(ab.second), static_cast<uint16_t>(m)});
            Rational c(num(rng), 1);
            if (c.is_zero()) c = 1;
            integrand.add_term(key, c);
        }
        Polynomial fast = integrate_contraction(integrand, n, IntegrationMode::FastPath);
        Polynomial slow = integrate_contraction(integrand, n, IntegrationMode::SimplexOnly);
        CHECK(fast == slow);
    }
}

TEST_CASE("integrate_contraction handles currents and idle labels") {
    // term x0^2 p0 with no edges over 3 labels: hbar^3 x0^2 p0
    ContractionPoly integrand;
    ContractionKey key;
    key.x0_pow = 2;
    key.p0_pow = 1;
    integrand.add_term(key, Rational(3));
    Polynomial out = integrate_contraction(integrand, 3);
    Monomial m;
    m[Symbol::X0] = 2;
    m[Symbol::P0] = 1;
    m[Symbol::Hbar] = 3;
    CHECK(out == Polynomial::term(3, m));
}

TEST_CASE("disconnected product factorizes") {
    // two independent k=1 loops on labels (0,1) and (2,3):
    // value = (-hbar^4/12)^2 relative to the i^E bookkeeping
    DiagramValue v = integrate_simplex(1, {{0, 1, 2}, {2, 3, 2}}, 4);
    CHECK(v.value == hbar_term(Rational(1, 144), 8));

    ContractionPoly integrand;
    ContractionKey key;
    key.edges = {{0, 1, 2}, {2, 3, 2}};
    integrand.add_term(key, Rational(1));
    CHECK(integrate_contraction(integrand, 4) == hbar_term(Rational(1, 144), 8));
}
