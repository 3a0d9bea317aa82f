#include "effham/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "effham/green.hpp"
#include "effham/series.hpp"

namespace effham {

void gauss_legendre(int np, std::vector<double>* nodes, std::vector<double>* weights) {
    if (np < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
    nodes->assign(np, 0.0);
    weights->assign(np, 0.0);
    // Newton iteration on the Legendre polynomial, symmetric roots
    for (int i = 0; i < (np + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (np + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < np; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = np * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        (*nodes)[i] = -x;
        (*nodes)[np - 1 - i] = x;
        (*weights)[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        (*weights)[np - 1 - i] = (*weights)[i];
    }
}

namespace {

/// Recursive nested quadrature: axis `axis` is split at every previously
/// fixed time value so the kinks t_i = t_j land on panel boundaries.
double quad_recursive(const std::function<double(const std::vector<double>&)>& integrand, int n,
                      double hbar, const std::vector<double>& nodes,
                      const std::vector<double>& weights, std::vector<double>& point, int axis) {
    std::vector<double> cuts;
    cuts.push_back(0.0);
    for (int j = 0; j < axis; ++j)
        if (point[j] > 0.0 && point[j] < hbar) cuts.push_back(point[j]);
    cuts.push_back(hbar);
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        double lo = cuts[p], hi = cuts[p + 1];
        if (hi - lo <= 0.0) continue;
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            point[axis] = mid + half * nodes[q];
            double inner = (axis + 1 == n)
                               ? integrand(point)
                               : quad_recursive(integrand, n, hbar, nodes, weights, point, axis + 1);
            total += weights[q] * half * inner;
        }
    }
    return total;
}

}  // namespace

double quad_diagram(const std::function<double(const std::vector<double>&)>& integrand, int n,
                    double hbar, const QuadratureSpec& spec) {
    if (n < 1 || n > 3) throw std::invalid_argument("quad_diagram: n must be 1..3");
    std::vector<double> nodes, weights;
    gauss_legendre(spec.points_per_axis, &nodes, &weights);
    std::vector<double> point(n, 0.0);
    return quad_recursive(integrand, n, hbar, nodes, weights, point, 0);
}

namespace {

double g_product(const std::vector<EdgePower>& edges, const std::vector<double>& t, double hbar) {
    double prod = 1.0;
    for (const auto& e : edges) {
        double g = green_scaled(t[e.a], t[e.b], hbar).imag;
        for (int m = 0; m < e.mult; ++m) prod *= g;
    }
    return prod;
}

}  // namespace

double quad_monomial(const Rational& coeff, const std::vector<EdgePower>& edges, int n, double hbar,
                     const QuadratureSpec& spec) {
    int E = 0;
    for (const auto& e : edges) E += e.mult;
    if (E % 2 != 0) throw std::invalid_argument("quad_monomial: odd G count is imaginary");
    double sign = (E / 2) % 2 == 1 ? -1.0 : 1.0;
    double integral = quad_diagram(
        [&](const std::vector<double>& t) { return g_product(edges, t, hbar); }, n, hbar, spec);
    return coeff.to_double() * sign * integral;
}

ComplexQuad quad_contraction(const ContractionPoly& integrand, int n, double hbar, double x0,
                             double p0, const QuadratureSpec& spec) {
    ComplexQuad out;
    for (const auto& [key, c] : integrand.terms()) {
        int E = key.total_edge_mult();
        double currents = std::pow(x0, key.x0_pow) * std::pow(p0, key.p0_pow);
        double integral = quad_diagram(
            [&](const std::vector<double>& t) { return g_product(key.edges, t, hbar); }, n, hbar,
            spec);
        double value = c.to_double() * currents * integral;
        // i^E: even counts are (+-) real, odd ones (+-) imaginary
        switch (E % 4) {
            case 0: out.real += value; break;
            case 1: out.imag += value; break;
            case 2: out.real -= value; break;
            case 3: out.imag -= value; break;
        }
    }
    return out;
}

double exact_Z_canonical(double beta, double omega, double hbar, long long n_max) {
    double x = beta * hbar * omega;
    if (x <= 0.0) throw std::domain_error("exact_Z_canonical: beta*hbar*omega must be positive");
    double sum = 0.0;
    for (long long n = n_max; n >= 0; --n) sum += std::exp(-x * (n + 0.5));
    return sum;
}

SeriesVsClosedReport series_vs_closed(int max_order, const std::vector<double>& x_grid) {
    if (max_order < 2) throw std::invalid_argument("series_vs_closed: max_order must be >= 2");
    const unsigned k_max = static_cast<unsigned>(max_order / 2);

    SeriesVsClosedReport report;
    for (double x : x_grid) {
        SeriesCheckPoint pt;
        pt.x = x;
        if (x <= 0.0 || x >= 2.0 * M_PI) {
            pt.included = false;
            report.points.push_back(pt);
            continue;
        }
        pt.included = true;
        // hbar = omega = 1, beta = x
        std::map<Symbol, double> bind{{Symbol::Beta, x}, {Symbol::Hbar, 1.0}, {Symbol::W, 1.0}};
        double series = 0.0, last = 0.0, prev = 0.0;
        for (unsigned k = 1; k <= k_max; ++k) {
            prev = last;
            last = ho_series_coefficient(k).eval(bind);
            series += last;
        }
        double closed = ho_closed_form(0.0, 0.0, x, 1.0, 1.0, 1.0);
        pt.deviation = std::abs(closed - series);
        pt.bound = 2.0 * std::abs(ho_series_coefficient(k_max + 1).eval(bind));
        pt.term_ratio = (k_max >= 2 && prev != 0.0) ? std::abs(last / prev) : 0.0;
        pt.predicted_ratio = std::pow(x / (2.0 * M_PI), 2.0);
        pt.pass = pt.deviation <= pt.bound;
        if (!pt.pass) report.all_pass = false;
        report.max_abs_deviation = std::max(report.max_abs_deviation, pt.deviation);
        report.points.push_back(pt);
    }
    return report;
}

}  // namespace effham
