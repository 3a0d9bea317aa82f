#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "effham/polynomial.hpp"
#include "effham/rational.hpp"
#include "effham/zeta.hpp"

using namespace effham;

namespace {

std::mt19937 rng(20240817);

Rational random_rational() {
    std::uniform_int_distribution<long long> num(-50, 50);
    std::uniform_int_distribution<long long> den(1, 50);
    return Rational(num(rng), den(rng));
}

Polynomial random_polynomial() {
    std::uniform_int_distribution<int> nterms(0, 5);
    std::uniform_int_distribution<int> expo(0, 3);
    std::uniform_int_distribution<int> mexpo(-2, 3);
    Polynomial p;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Monomial m;
        for (int s = 0; s < kNumSymbols; ++s)
            m.exp[s] = static_cast<int16_t>(static_cast<Symbol>(s) == Symbol::M ? mexpo(rng)
                                                                                : expo(rng));
        p.add_term(m, random_rational());
    }
    return p;
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4).numerator() == -1);
    CHECK(Rational(-2, 4).denominator() == 2);
    CHECK(Rational(3, -6) == Rational(-1, 2));  // denominator normalized positive
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3).to_string() == "1/3");
    CHECK(Rational(-6, 3).to_string() == "-2");
    CHECK(Rational(2).pow(-3) == Rational(1, 8));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational field axioms hold on random samples") {
    for (int i = 0; i < 1000; ++i) {
        Rational a = random_rational(), b = random_rational(), c = random_rational();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(3) == Rational(0));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(5) == Rational(0));
    CHECK(bernoulli(6) == Rational(1, 42));
    CHECK(bernoulli(8) == Rational(-1, 30));
    CHECK(bernoulli(10) == Rational(5, 66));
    CHECK(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("zeta even coefficients") {
    CHECK(zeta_even_coeff(1) == Rational(1, 6));
    CHECK(zeta_even_coeff(2) == Rational(1, 90));
    CHECK(zeta_even_coeff(3) == Rational(1, 945));
    CHECK(zeta_even_coeff(4) == Rational(1, 9450));
    CHECK_THROWS_AS(zeta_even_coeff(0), std::domain_error);
}

TEST_CASE("zeta reduction matches partial sums within the truncation bound") {
    const long long N = 1000000;
    for (unsigned k = 1; k <= 5; ++k) {
        double partial = 0.0;
        for (long long m = N; m >= 1; --m) partial += std::pow(static_cast<double>(m), -2.0 * k);
        double closed = zeta_even_coeff(k).to_double() * std::pow(M_PI, 2.0 * k);
        double bound = 1.0 / (2.0 * k - 1.0) / std::pow(static_cast<double>(N), 2.0 * k - 1.0);
        CHECK(std::abs(closed - partial) <= bound + 1e-14);
    }
}

TEST_CASE("polynomial ring axioms hold on random samples") {
    for (int i = 0; i < 1000; ++i) {
        Polynomial a = random_polynomial(), b = random_polynomial(), c = random_polynomial();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("polynomial rendering is canonical") {
    Polynomial p;  // beta hbar^2 w^2 / 24
    Monomial m;
    m[Symbol::Beta] = 1;
    m[Symbol::Hbar] = 2;
    m[Symbol::W] = 2;
    p.add_term(m, Rational(1, 24));
    CHECK(p.to_string() == "1/24 * hbar^2 * beta * w^2");
    CHECK(Polynomial().to_string() == "0");

    Polynomial q = Polynomial::symbol(Symbol::X0, 2) + Polynomial::symbol(Symbol::P0);
    CHECK(q.to_string() == "1 * p0 + 1 * x0^2");  // graded-lex: degree 1 before degree 2

    Monomial inv_m;
    inv_m[Symbol::P0] = 2;
    inv_m[Symbol::M] = -1;
    CHECK(Polynomial::term(Rational(1, 2), inv_m).to_string() == "1/2 * p0^2 * M^-1");
}

TEST_CASE("negative exponents only for M") {
    Monomial bad;
    bad[Symbol::W] = -1;
    CHECK_THROWS_AS(Polynomial::term(1, bad), std::domain_error);
}

TEST_CASE("poly_eval") {
    Polynomial p = Polynomial::symbol(Symbol::X0, 2);
    CHECK(p.eval({{Symbol::X0, 2.0}}) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(Polynomial().eval({}) == 0.0);

    Polynomial t;
    Monomial m;
    m[Symbol::Beta] = 1;
    m[Symbol::Hbar] = 2;
    m[Symbol::W] = 2;
    t.add_term(m, Rational(1, 24));
    double v = t.eval({{Symbol::Beta, 1.0}, {Symbol::Hbar, 1.0}, {Symbol::W, 2.0}});
    CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

    CHECK_THROWS_WITH_AS(p.eval({{Symbol::P0, 1.0}}),
                         "Polynomial::eval: unbound symbol x0", std::invalid_argument);
}

TEST_CASE("divide by symbol power") {
    Polynomial p = Polynomial::symbol(Symbol::Hbar, 3) * Polynomial(Rational(5));
    Polynomial q = p.divide_by_symbol_power(Symbol::Hbar, 2);
    CHECK(q == Polynomial::symbol(Symbol::Hbar, 1) * Polynomial(Rational(5)));
    CHECK_THROWS_AS(p.divide_by_symbol_power(Symbol::W, 1), std::domain_error);
}
