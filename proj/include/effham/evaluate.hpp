#ifndef EFFHAM_EVALUATE_HPP
#define EFFHAM_EVALUATE_HPP

#include <stdexcept>
#include <vector>

#include "effham/contraction.hpp"
#include "effham/polynomial.hpp"

namespace effham {

/// Raised when a request exceeds the exact integrator's n <= 8 budget.
class CapacityError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

enum class Backend { Simplex, Matsubara };

/// Exact value of one integrated diagram: rational coefficients times a
/// power of hbar (possibly times currents when a full integrand was given).
struct DiagramValue {
    Polynomial value;
    Backend backend = Backend::Simplex;
};

inline constexpr int kMaxSimplexLabels = 8;

/// Exactly integrates coeff * prod G(a,b)^mult over [0,hbar]^n by splitting
/// the cube into n! order simplices; on each, every Theta resolves and the
/// integrand is a polynomial. The even-count i^E from the G factors is
/// folded in (odd counts integrate to zero by time reflection).
DiagramValue integrate_simplex(const Rational& coeff, const std::vector<EdgePower>& edges, int n);

/// Loop of 2k mixed propagators, evaluated in Fourier space:
///   2 (-1)^k (hbar^2 / 2 pi)^(2k) zeta(2k),
/// zeta-reduced so the result is rational times hbar^(4k).
DiagramValue loop_value_closed(unsigned k);

/// Chain diagrams vanish identically (the propagator has no zero Matsubara
/// mode); `length` counts the chain's vertices.
DiagramValue chain_value(int length);

/// Partial Matsubara mode sum for the 2k-loop; converges to
/// loop_value_closed(k) at rate O(m_max^(1-2k)).
double matsubara_loop_numeric(unsigned k, long long m_max, double hbar = 1.0);

enum class IntegrationMode {
    FastPath,     // leaf/chain pruning, loop closed form, memoized simplex
    SimplexOnly,  // every monomial through the n!-simplex integrator
};

/// Integrates a full moment/cumulant integrand over [0,hbar]^n label by
/// label; currents pass through as x0/p0 powers, untouched labels give one
/// hbar each. Returns a polynomial in x0, p0, hbar.
Polynomial integrate_contraction(const ContractionPoly& integrand, int n,
                                 IntegrationMode mode = IntegrationMode::FastPath);

/// The alternating 2k-loop monomial exactly as the Wick engine produces it
/// (even labels kinetic, odd labels potential); test/CLI helper.
std::pair<Rational, std::vector<EdgePower>> loop_monomial(unsigned k);

/// Open chain over `length` labels with current-terminated ends.
std::pair<Rational, std::vector<EdgePower>> chain_monomial(int length);

}  // namespace effham

#endif  // EFFHAM_EVALUATE_HPP
