#ifndef EFFHAM_SERIES_HPP
#define EFFHAM_SERIES_HPP

#include <map>
#include <string>
#include <vector>

#include "effham/evaluate.hpp"
#include "effham/hamiltonian.hpp"
#include "effham/polynomial.hpp"

namespace effham {

/// Requested operation needs the standard form p^2/2M + (x-only potential).
class FormError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Raised by the Gaussian phase-space integral when the quadratic form is
/// not positive definite.
class DivergenceError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// High-temperature series sum_n beta^(n-1) coefficient_n; coefficients are
/// polynomials in x0, p0, hbar, M, w, g. Vanishing orders are stored as
/// explicit zero terms so "order 3 vanishes" is an assertable fact.
struct EffectiveSeries {
    struct Term {
        int order = 0;            // n
        Polynomial coefficient;   // beta excluded; full value is beta^(n-1) * coefficient
    };
    std::string hamiltonian_text;
    std::vector<Term> terms;  // orders 1..max_order in ascending order

    /// Numeric truncated value; bindings must cover beta and every symbol
    /// appearing in the coefficients.
    double eval(const std::map<Symbol, double>& bindings) const;
};

/// The same series regrouped by powers of the potential coupling. Term k
/// collects every contribution with exactly k potential insertions, with
/// coupling^k divided out; its coefficient keeps the beta powers.
struct WeakCouplingSeries {
    struct Term {
        int g_power = 0;
        Polynomial coefficient;
    };
    Polynomial coupling;  // identified g: the symbol g, a literal coefficient, or 1
    std::vector<Term> terms;

    double eval(const std::map<Symbol, double>& bindings) const;
};

/// Assembles the high-temperature expansion to max_order (1..8): for each n
/// the Wick cumulant of n Hamiltonian insertions is integrated exactly and
/// weighted by (-1)^(n+1) / (hbar^n n!).
EffectiveSeries heff_high_t(const Hamiltonian& hamiltonian, int max_order,
                            IntegrationMode mode = IntegrationMode::FastPath);

/// k-th harmonic-oscillator correction term, zeta-reduced:
///   beta^(2k-1) (-1)^(k+1)/k (hbar w / 2 pi)^(2k) zeta(2k).
Polynomial ho_series_coefficient(unsigned k);

/// Regroups the double sum by powers of the coupling (requires standard
/// form). For a single potential term without a literal g, the coupling is
/// identified with its full coefficient (g = M w^2/2 for the oscillator).
WeakCouplingSeries reorder_weak_coupling(const EffectiveSeries& series, const Hamiltonian& hamiltonian);

/// Resummed oscillator Hamiltonian:
///   p0^2/2M + M w^2 x0^2 / 2 - (1/beta) ln[hw b / (2 sinh(hw b / 2))].
double ho_closed_form(double p0, double x0, double beta, double mass, double omega, double hbar);

/// H = a_pp p0^2 + a_xx x0^2 + a_px p0 x0 + b_p p0 + b_x x0 + c.
struct QuadraticHeff {
    double a_pp = 0, a_xx = 0, a_px = 0;
    double b_p = 0, b_x = 0;
    double c = 0;
};

/// The oscillator's closed-form effective Hamiltonian as a quadratic.
QuadraticHeff ho_quadratic_heff(double beta, double mass, double omega, double hbar);

/// Exact Gaussian phase-space integral of exp(-beta H)/(2 pi hbar) for a
/// positive-definite quadratic H.
double partition_function_quadratic(const QuadraticHeff& heff, double beta, double hbar);

/// Fixed-field-order JSON rendering of a series:
/// {"hamiltonian": ..., "orders": [{"n", "beta_power", "coefficient"}]}.
std::string series_to_json(const EffectiveSeries& series);

}  // namespace effham

#endif  // EFFHAM_SERIES_HPP
