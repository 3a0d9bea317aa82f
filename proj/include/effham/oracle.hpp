#ifndef EFFHAM_ORACLE_HPP
#define EFFHAM_ORACLE_HPP

#include <functional>
#include <vector>

#include "effham/contraction.hpp"

namespace effham {

/// Tensor-product Gauss-Legendre with kink-aligned panels: each inner axis
/// is split at the already-fixed outer time values, so the piecewise-linear
/// Green kernel is smooth (a polynomial) inside every panel.
struct QuadratureSpec {
    int points_per_axis = 8;
};

/// Nodes and weights of the np-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int np, std::vector<double>* nodes, std::vector<double>* weights);

/// Quadrature of a smooth-per-panel integrand over [0, hbar]^n, n <= 3.
double quad_diagram(const std::function<double(const std::vector<double>&)>& integrand, int n,
                    double hbar, const QuadratureSpec& spec);

/// Quadrature of one G-monomial coeff * prod G(a,b)^mult (the i^E factor is
/// applied; odd E would be imaginary and is rejected).
double quad_monomial(const Rational& coeff, const std::vector<EdgePower>& edges, int n, double hbar,
                     const QuadratureSpec& spec);

/// Quadrature of a full integrand at numeric currents. Even-count terms sum
/// into `real`, odd-count ones into `imag` (which must come out ~0).
struct ComplexQuad {
    double real = 0.0;
    double imag = 0.0;
};
ComplexQuad quad_contraction(const ContractionPoly& integrand, int n, double hbar, double x0,
                             double p0, const QuadratureSpec& spec);

/// Canonical partition sum  sum_{n=0..n_max} exp(-beta hbar omega (n+1/2)).
double exact_Z_canonical(double beta, double omega, double hbar, long long n_max);

/// Truncated oscillator series against the closed form over a grid of
/// x = hbar*omega*beta values; points outside the convergence disk x < 2pi
/// are excluded with a warning flag.
struct SeriesCheckPoint {
    double x = 0.0;
    bool included = false;
    double deviation = 0.0;
    double bound = 0.0;         // twice the first omitted term
    double term_ratio = 0.0;    // |last term / previous term|
    double predicted_ratio = 0.0;  // (x/2pi)^2
    bool pass = false;
};

struct SeriesVsClosedReport {
    std::vector<SeriesCheckPoint> points;
    double max_abs_deviation = 0.0;
    bool all_pass = true;
};

SeriesVsClosedReport series_vs_closed(int max_order, const std::vector<double>& x_grid);

}  // namespace effham

#endif  // EFFHAM_ORACLE_HPP
