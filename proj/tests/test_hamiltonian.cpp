#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "effham/hamiltonian.hpp"

using namespace effham;

namespace {

Polynomial coeff_mono(std::initializer_list<std::pair<Symbol, int16_t>> exps, Rational c) {
    Monomial m;
    for (auto [s, e] : exps) m[s] = e;
    return Polynomial::term(c, m);
}

}  // namespace

TEST_CASE("harmonic oscillator parses into two vertices, standard form") {
    Hamiltonian h = parse_hamiltonian("p^2/(2*M) + (M*w^2/2)*x^2");
    REQUIRE(h.vertices().size() == 2);
    CHECK(h.standard_form());

    const Vertex& kin = h.vertices()[0];
    CHECK(kin.p_power == 2);
    CHECK(kin.x_power == 0);
    CHECK(kin.coefficient == coeff_mono({{Symbol::M, -1}}, Rational(1, 2)));

    const Vertex& pot = h.vertices()[1];
    CHECK(pot.p_power == 0);
    CHECK(pot.x_power == 2);
    CHECK(pot.coefficient == coeff_mono({{Symbol::M, 1}, {Symbol::W, 2}}, Rational(1, 2)));
}

TEST_CASE("quartic and free particle") {
    Hamiltonian q = parse_hamiltonian("p^2/(2*M) + g*x^4");
    REQUIRE(q.vertices().size() == 2);
    CHECK(q.standard_form());
    CHECK(q.vertices()[1].x_power == 4);
    CHECK(q.vertices()[1].coefficient == coeff_mono({{Symbol::G, 1}}, Rational(1)));

    Hamiltonian f = parse_hamiltonian("p^2/(2*M)");
    REQUIRE(f.vertices().size() == 1);
    CHECK(f.standard_form());
    CHECK(f.kinetic_index() == 0);
}

TEST_CASE("mixed monomial is not standard form") {
    Hamiltonian h = parse_hamiltonian("g*p*x");
    REQUIRE(h.vertices().size() == 1);
    CHECK(h.vertices()[0].p_power == 1);
    CHECK(h.vertices()[0].x_power == 1);
    CHECK(!h.standard_form());
    CHECK(h.kinetic_index() == -1);
}

TEST_CASE("vertex order: kinetic first, then ascending x power") {
    Hamiltonian h = parse_hamiltonian("g*x^4 + p^2/(2*M) + w*x^2");
    REQUIRE(h.vertices().size() == 3);
    CHECK(h.vertices()[0].p_power == 2);
    CHECK(h.vertices()[1].x_power == 2);
    CHECK(h.vertices()[2].x_power == 4);
}

TEST_CASE("like terms merge; cancellations drop the vertex") {
    Hamiltonian h = parse_hamiltonian("x^2 + x^2");
    REQUIRE(h.vertices().size() == 1);
    CHECK(h.vertices()[0].coefficient == Polynomial(Rational(2)));

    Hamiltonian z = parse_hamiltonian("x^2 - x^2");
    CHECK(z.empty());
}

TEST_CASE("grammar coverage") {
    // decimals become exact rationals
    Hamiltonian h = parse_hamiltonian("0.5*M*w^2*x^2");
    CHECK(h.vertices()[0].coefficient ==
          coeff_mono({{Symbol::M, 1}, {Symbol::W, 2}}, Rational(1, 2)));

    // unary minus and nested parentheses
    Hamiltonian m = parse_hamiltonian("-(x^2) + 2*x^2");
    CHECK(m.vertices()[0].coefficient == Polynomial(Rational(1)));

    // M^-1 and division forms agree
    CHECK(parse_hamiltonian("p^2/(2*M)") == parse_hamiltonian("1/2 * M^-1 * p^2"));
    CHECK(parse_hamiltonian("p^2/2/M") == parse_hamiltonian("p^2/(2*M)"));

    // exponent with parenthesized negative
    CHECK(parse_hamiltonian("M^(-1)*p^2") == parse_hamiltonian("p^2/M"));
}

TEST_CASE("errors carry positions; unsupported forms are flagged") {
    CHECK_THROWS_AS(parse_hamiltonian(""), ParseError);
    CHECK_THROWS_AS(parse_hamiltonian("p^2 +"), ParseError);
    CHECK_THROWS_AS(parse_hamiltonian("q*x"), ParseError);
    CHECK_THROWS_AS(parse_hamiltonian("(x^2"), ParseError);
    CHECK_THROWS_AS(parse_hamiltonian("x^2)"), ParseError);

    try {
        parse_hamiltonian("p^2 + &x");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 6);
    }

    CHECK_THROWS_AS(parse_hamiltonian("x^0.5"), UnsupportedFormError);
    CHECK_THROWS_AS(parse_hamiltonian("1/x"), UnsupportedFormError);
    CHECK_THROWS_AS(parse_hamiltonian("x^2/(1+M)"), UnsupportedFormError);
    CHECK_THROWS_AS(parse_hamiltonian("x^2/w"), UnsupportedFormError);
    CHECK_THROWS_AS(parse_hamiltonian("p^(-2)"), UnsupportedFormError);
}

TEST_CASE("round trip: parse(render(H)) == H") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> power(0, 4);
    std::uniform_int_distribution<int> mexp(-1, 2);
    std::uniform_int_distribution<int> sexp(0, 2);
    std::uniform_int_distribution<long long> num(-20, 20);
    std::uniform_int_distribution<long long> den(1, 20);

    int built = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Vertex> vertices;
        std::set<std::pair<int, int>> seen;
        int nv = 1 + coin(rng) + coin(rng);
        for (int i = 0; i < nv; ++i) {
            int pp = power(rng), xp = power(rng);
            if (!seen.insert({pp, xp}).second) continue;
            Monomial m;
            m[Symbol::M] = static_cast<int16_t>(mexp(rng));
            m[Symbol::W] = static_cast<int16_t>(sexp(rng));
            m[Symbol::G] = static_cast<int16_t>(sexp(rng));
            m[Symbol::Hbar] = static_cast<int16_t>(sexp(rng));
            Rational c(num(rng), den(rng));
            if (c.is_zero()) continue;
            Polynomial coeff = Polynomial::term(c, m);
            if (coin(rng)) coeff += Polynomial(Rational(num(rng), den(rng)));
            if (coeff.is_zero()) continue;
            vertices.push_back(Vertex{coeff, pp, xp});
        }
        if (vertices.empty()) continue;
        Hamiltonian h{vertices};
        Hamiltonian reparsed = parse_hamiltonian(h.to_string());
        CHECK(reparsed == h);
        ++built;
    }
    CHECK(built > 100);
}
