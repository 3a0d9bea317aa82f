#ifndef EFFHAM_GREEN_HPP
#define EFFHAM_GREEN_HPP

#include <cmath>
#include <stdexcept>

namespace effham {

/// The phase-space two-point kernel is purely imaginary, G = i * imag.
/// Storing just the real number avoids complex arithmetic everywhere
/// downstream (surviving diagrams always carry an even number of factors).
struct GreenValue {
    double imag = 0.0;
};

/// Step function with the equal-time convention Theta(0) = 1/2, which forces
/// green(t, t) = 0 and matches the Matsubara series term by term.
inline double theta_half(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return 0.0;
    return 0.5;
}

/// Scaled-time kernel on [0, hbar]^2 (independent of beta):
///   G(t1,t2) = -(i/2) { 2(t1-t2) - hbar [Theta(t1-t2) - Theta(t2-t1)] }.
inline GreenValue green_scaled(double t1, double t2, double hbar) {
    if (t1 < 0.0 || t1 > hbar || t2 < 0.0 || t2 > hbar)
        throw std::out_of_range("green_scaled: arguments must lie in [0, hbar]");
    double step = theta_half(t1 - t2) - theta_half(t2 - t1);
    return {-0.5 * (2.0 * (t1 - t2) - hbar * step)};
}

/// Unscaled periodic kernel on [0, hbar*beta]^2. Related to the scaled form
/// by green_unscaled(beta*t1, beta*t2, beta, hbar) = green_scaled(t1, t2, hbar).
inline GreenValue green_unscaled(double tau1, double tau2, double beta, double hbar) {
    if (beta <= 0.0) throw std::domain_error("green_unscaled: beta must be positive");
    if (tau1 < 0.0 || tau1 > hbar * beta || tau2 < 0.0 || tau2 > hbar * beta)
        throw std::out_of_range("green_unscaled: arguments must lie in [0, hbar*beta]");
    double step = theta_half(tau1 - tau2) - theta_half(tau2 - tau1);
    return {-0.5 / beta * (2.0 * (tau1 - tau2) - hbar * beta * step)};
}

/// Partial Matsubara sum of the scaled kernel, omitting the zero mode:
///   2 sum_{m=1..m_max} sin(w_m (t1-t2)) / w_m,   w_m = 2 pi m / hbar.
/// Converges pointwise to green_scaled for t1 != t2.
inline GreenValue green_matsubara_partial(double t1, double t2, double hbar, int m_max) {
    if (m_max < 1) throw std::domain_error("green_matsubara_partial: m_max must be >= 1");
    if (t1 < 0.0 || t1 > hbar || t2 < 0.0 || t2 > hbar)
        throw std::out_of_range("green_matsubara_partial: arguments must lie in [0, hbar]");
    double dt = t1 - t2;
    double sum = 0.0;
    for (int m = 1; m <= m_max; ++m) {
        double wm = 2.0 * M_PI * m / hbar;
        sum += std::sin(wm * dt) / wm;
    }
    return {2.0 * sum};
}

}  // namespace effham

#endif  // EFFHAM_GREEN_HPP
