#ifndef EFFHAM_ZETA_HPP
#define EFFHAM_ZETA_HPP

#include "effham/rational.hpp"

namespace effham {

/// Bernoulli number B_n (convention B_1 = -1/2), computed by the standard
/// recurrence sum_{k=0..n} C(n+1,k) B_k = 0 and cached.
Rational bernoulli(unsigned n);

/// Rational r with zeta(2k) = r * pi^(2k), k >= 1:
///   r = (-1)^(k+1) B_{2k} 2^(2k-1) / (2k)!
/// Keeping only r lets every loop value stay purely rational, since each
/// (hbar^2/2pi)^(2k) factor cancels the pi^(2k) exactly.
Rational zeta_even_coeff(unsigned k);

}  // namespace effham

#endif  // EFFHAM_ZETA_HPP
