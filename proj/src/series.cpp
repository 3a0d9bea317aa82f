#include "effham/series.hpp"

#include <cmath>
#include <functional>

#include <json.hpp>

#include "effham/contraction.hpp"
#include "effham/zeta.hpp"

namespace effham {

double EffectiveSeries::eval(const std::map<Symbol, double>& bindings) const {
    auto it = bindings.find(Symbol::Beta);
    if (it == bindings.end()) throw std::invalid_argument("EffectiveSeries::eval: beta unbound");
    double beta = it->second;
    double sum = 0.0;
    for (const auto& term : terms) sum += std::pow(beta, term.order - 1) * term.coefficient.eval(bindings);
    return sum;
}

double WeakCouplingSeries::eval(const std::map<Symbol, double>& bindings) const {
    double coupling_value = coupling.eval(bindings);
    double sum = 0.0;
    for (const auto& term : terms)
        sum += std::pow(coupling_value, term.g_power) * term.coefficient.eval(bindings);
    return sum;
}

namespace {

/// Visits every multiset of vertex indices of the given size as a count
/// vector, together with the multinomial n!/prod(counts!).
void for_each_multiset(int num_types, int size,
                       const std::function<void(const std::vector<int>&, const Rational&)>& visit) {
    if (num_types == 0) {
        if (size == 0) visit({}, Rational(1));
        return;
    }
    std::vector<int> counts(num_types, 0);
    std::function<void(int, int)> recurse = [&](int type, int remaining) {
        if (type == num_types - 1) {
            counts[type] = remaining;
            Rational multinomial = Rational(factorial(static_cast<unsigned>(size)));
            for (int c : counts) multinomial /= Rational(factorial(static_cast<unsigned>(c)));
            visit(counts, multinomial);
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[type] = c;
            recurse(type + 1, remaining - c);
        }
    };
    recurse(0, size);
}

/// Integrated cumulant of one vertex multiset, including the vertex
/// coefficient product and the multinomial assignment count.
Polynomial multiset_contribution(const std::vector<Vertex>& vertices, const std::vector<int>& counts,
                                 const Rational& multinomial, IntegrationMode mode) {
    std::vector<VertexShape> shapes;
    Polynomial coeff_product = Rational(1);
    for (std::size_t t = 0; t < vertices.size(); ++t) {
        for (int c = 0; c < counts[t]; ++c) shapes.push_back({vertices[t].p_power, vertices[t].x_power});
        if (counts[t] > 0) coeff_product *= vertices[t].coefficient.pow(counts[t]);
    }
    ContractionPoly cum = cumulant_mobius(shapes);
    Polynomial integrated = integrate_contraction(cum, static_cast<int>(shapes.size()), mode);
    integrated *= multinomial;
    return coeff_product * integrated;
}

Rational order_sign(int n) { return (n % 2 == 1) ? Rational(1) : Rational(-1); }

}  // namespace

EffectiveSeries heff_high_t(const Hamiltonian& hamiltonian, int max_order, IntegrationMode mode) {
    if (max_order < 1) throw std::invalid_argument("heff_high_t: max_order must be >= 1");
    if (max_order > kMaxSimplexLabels)
        throw CapacityError("heff_high_t supports max_order <= " +
                            std::to_string(kMaxSimplexLabels));

    const auto& vertices = hamiltonian.vertices();
    EffectiveSeries series;
    series.hamiltonian_text = hamiltonian.to_string();
    for (int n = 1; n <= max_order; ++n) {
        Polynomial coefficient;
        for_each_multiset(static_cast<int>(vertices.size()), n,
                          [&](const std::vector<int>& counts, const Rational& multinomial) {
                              coefficient +=
                                  multiset_contribution(vertices, counts, multinomial, mode);
                          });
        coefficient *= order_sign(n) / Rational(factorial(static_cast<unsigned>(n)));
        coefficient = coefficient.divide_by_symbol_power(Symbol::Hbar, n);
        series.terms.push_back({n, std::move(coefficient)});
    }
    return series;
}

Polynomial ho_series_coefficient(unsigned k) {
    if (k == 0) throw std::domain_error("ho_series_coefficient: k must be >= 1");
    // beta^(2k-1) (-1)^(k+1)/k (hbar w / 2pi)^(2k) zeta(2k), pi cancelling
    Rational c = zeta_even_coeff(k) * Rational(2).pow(-2 * static_cast<int>(k)) /
                 Rational(static_cast<long long>(k));
    if (k % 2 == 0) c = -c;
    Monomial m;
    m[Symbol::Beta] = static_cast<int16_t>(2 * k - 1);
    m[Symbol::Hbar] = static_cast<int16_t>(2 * k);
    m[Symbol::W] = static_cast<int16_t>(2 * k);
    return Polynomial::term(c, m);
}

WeakCouplingSeries reorder_weak_coupling(const EffectiveSeries& series,
                                         const Hamiltonian& hamiltonian) {
    if (!hamiltonian.standard_form())
        throw FormError("reorder_weak_coupling requires the standard form p^2/2M + g V(x)");

    const int max_order = static_cast<int>(series.terms.size());
    const auto& vertices = hamiltonian.vertices();
    const int kinetic = hamiltonian.kinetic_index();

    std::vector<Vertex> potentials;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (static_cast<int>(i) != kinetic) potentials.push_back(vertices[i]);

    // coupling identification
    bool all_carry_g = !potentials.empty();
    for (const auto& v : potentials) {
        for (const auto& [m, c] : v.coefficient.terms())
            if (m[Symbol::G] < 1) all_carry_g = false;
    }
    Polynomial coupling;
    if (all_carry_g)
        coupling = Polynomial::symbol(Symbol::G);
    else if (potentials.size() == 1 && potentials[0].coefficient.term_count() == 1)
        coupling = potentials[0].coefficient;
    else
        coupling = Rational(1);

    const bool divide_out = coupling != Polynomial(Rational(1));
    const Monomial coupling_mono =
        coupling.term_count() == 1 ? coupling.terms().begin()->first : Monomial{};
    const Rational coupling_coeff =
        coupling.term_count() == 1 ? coupling.terms().begin()->second : Rational(1);

    WeakCouplingSeries result;
    result.coupling = coupling;
    for (int k = 0; k <= max_order; ++k) {
        Polynomial coefficient;
        for (int n_kin = 0; n_kin + k <= max_order; ++n_kin) {
            int total = n_kin + k;
            if (total < 1) continue;
            // multisets of potential insertions of size k
            for_each_multiset(
                static_cast<int>(potentials.size()), k,
                [&](const std::vector<int>& pot_counts, const Rational&) {
                    std::vector<int> counts(vertices.size(), 0);
                    if (kinetic >= 0) counts[kinetic] = n_kin;
                    int pi = 0;
                    for (std::size_t i = 0; i < vertices.size(); ++i)
                        if (static_cast<int>(i) != kinetic) counts[i] = pot_counts[pi++];
                    Rational multinomial = Rational(factorial(static_cast<unsigned>(total)));
                    for (int c : counts) multinomial /= Rational(factorial(static_cast<unsigned>(c)));
                    Polynomial lump = multiset_contribution(vertices, counts, multinomial,
                                                            IntegrationMode::FastPath);
                    lump *= order_sign(total) / Rational(factorial(static_cast<unsigned>(total)));
                    lump = lump.divide_by_symbol_power(Symbol::Hbar, total);
                    // attach the beta^(total-1) power explicitly
                    Polynomial beta_power =
                        Polynomial::term(1, Monomial::of(Symbol::Beta, static_cast<int16_t>(total - 1)));
                    coefficient += beta_power * lump;
                });
        }
        if (divide_out && k > 0 && !coefficient.is_zero()) {
            // strip coupling^k monomial-wise (the factor is literally present)
            Polynomial stripped;
            for (const auto& [m, c] : coefficient.terms()) {
                Monomial q = m;
                for (int s = 0; s < kNumSymbols; ++s) {
                    int16_t delta = static_cast<int16_t>(coupling_mono.exp[s] * k);
                    q.exp[s] = static_cast<int16_t>(q.exp[s] - delta);
                    if (q.exp[s] < 0 && static_cast<Symbol>(s) != Symbol::M)
                        throw FormError("reorder_weak_coupling: coupling does not divide term");
                }
                stripped.add_term(q, c / coupling_coeff.pow(k));
            }
            coefficient = std::move(stripped);
        }
        result.terms.push_back({k, std::move(coefficient)});
    }
    return result;
}

double ho_closed_form(double p0, double x0, double beta, double mass, double omega, double hbar) {
    if (beta <= 0 || mass <= 0 || omega <= 0 || hbar <= 0)
        throw std::domain_error("ho_closed_form: beta, M, omega, hbar must be positive");
    double x = hbar * omega * beta;
    double classical = p0 * p0 / (2.0 * mass) + 0.5 * mass * omega * omega * x0 * x0;
    return classical - std::log(x / (2.0 * std::sinh(x / 2.0))) / beta;
}

QuadraticHeff ho_quadratic_heff(double beta, double mass, double omega, double hbar) {
    if (beta <= 0 || mass <= 0 || omega <= 0 || hbar <= 0)
        throw std::domain_error("ho_quadratic_heff: beta, M, omega, hbar must be positive");
    QuadraticHeff q;
    q.a_pp = 1.0 / (2.0 * mass);
    q.a_xx = 0.5 * mass * omega * omega;
    double x = hbar * omega * beta;
    q.c = -std::log(x / (2.0 * std::sinh(x / 2.0))) / beta;
    return q;
}

double partition_function_quadratic(const QuadraticHeff& heff, double beta, double hbar) {
    if (beta <= 0 || hbar <= 0)
        throw std::domain_error("partition_function_quadratic: beta and hbar must be positive");
    // H = (1/2) v^T Q v + b.v + c with Q = [[2 a_pp, a_px], [a_px, 2 a_xx]]
    double det = 4.0 * heff.a_pp * heff.a_xx - heff.a_px * heff.a_px;
    if (heff.a_pp <= 0.0 || det <= 0.0)
        throw DivergenceError("partition_function_quadratic: quadratic form not positive definite");
    // b^T Q^{-1} b = (2 a_xx b_p^2 - 2 a_px b_p b_x + 2 a_pp b_x^2) / det
    double bqb =
        (2.0 * heff.a_xx * heff.b_p * heff.b_p - 2.0 * heff.a_px * heff.b_p * heff.b_x +
         2.0 * heff.a_pp * heff.b_x * heff.b_x) /
        det;
    return std::exp(beta * (0.5 * bqb - heff.c)) / (beta * hbar * std::sqrt(det));
}

std::string series_to_json(const EffectiveSeries& series) {
    nlohmann::ordered_json j;
    j["hamiltonian"] = series.hamiltonian_text;
    j["orders"] = nlohmann::ordered_json::array();
    for (const auto& term : series.terms) {
        nlohmann::ordered_json o;
        o["n"] = term.order;
        o["beta_power"] = term.order - 1;
        o["coefficient"] = term.coefficient.to_string();
        j["orders"].push_back(std::move(o));
    }
    return j.dump(2);
}

}  // namespace effham
