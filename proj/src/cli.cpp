#include "effham/cli.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "effham/contraction.hpp"
#include "effham/diagram.hpp"
#include "effham/evaluate.hpp"
#include "effham/green.hpp"
#include "effham/hamiltonian.hpp"
#include "effham/oracle.hpp"
#include "effham/series.hpp"
#include "effham/zeta.hpp"

namespace effham::cli {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CommonParams {
    std::string hamiltonian = "p^2/(2*M) + (M*w^2/2)*x^2";
    int order = 4;
    double beta = 1.0, omega = 1.0, mass = 1.0, hbar = 1.0;
    double p0 = 0.0, x0 = 0.0, g = 1.0;
    std::string format = "text";
    long long m_max = 10000;
};

std::map<Symbol, double> bindings_of(const CommonParams& p) {
    return {{Symbol::X0, p.x0},  {Symbol::P0, p.p0}, {Symbol::Hbar, p.hbar},
            {Symbol::Beta, p.beta}, {Symbol::M, p.mass}, {Symbol::W, p.omega},
            {Symbol::G, p.g}};
}

void check_positive(const CommonParams& p) {
    if (p.beta <= 0 || p.omega <= 0 || p.mass <= 0 || p.hbar <= 0)
        throw CLI::ValidationError("--beta, --omega, --M and --hbar must be positive");
}

int cmd_expand(const CommonParams& p, std::ostream& out) {
    Hamiltonian h = parse_hamiltonian(p.hamiltonian);
    EffectiveSeries series = heff_high_t(h, p.order);
    if (p.format == "json") {
        out << series_to_json(series) << "\n";
    } else {
        out << "H = " << h.to_string() << (h.standard_form() ? "   [standard form]" : "") << "\n";
        for (const auto& term : series.terms)
            out << "order " << term.order << "  (beta^" << term.order - 1
                << "): " << term.coefficient.to_string() << "\n";
    }
    return 0;
}

int cmd_diagrams(const CommonParams& p, bool evaluate, std::ostream& out) {
    Hamiltonian h = parse_hamiltonian(p.hamiltonian);
    const auto& vertices = h.vertices();
    const int n = p.order;
    if (n < 1 || n > kMaxSimplexLabels)
        throw CLI::ValidationError("--order must be in 1.." + std::to_string(kMaxSimplexLabels));

    struct ClassInfo {
        Topology topology = Topology::CurrentOnly;
        Rational multiplicity = 0;
        ContractionKey monomial;
        Rational monomial_coeff;
        Polynomial coeff_product;
    };
    std::map<std::string, ClassInfo> classes;

    // every assignment of vertex terms to the n time labels, up to label
    // permutations (the multinomial counts those)
    std::vector<int> counts(vertices.size(), 0);
    std::function<void(std::size_t, int)> recurse = [&](std::size_t type, int remaining) {
        if (type + 1 == vertices.size() || vertices.empty()) {
            if (!vertices.empty()) counts[type] = remaining;
            Rational multinomial = Rational(factorial(static_cast<unsigned>(n)));
            for (int c : counts) multinomial /= Rational(factorial(static_cast<unsigned>(c)));

            std::vector<VertexShape> shapes;
            std::vector<int> type_ids;
            Polynomial coeff_product = Rational(1);
            for (std::size_t t = 0; t < vertices.size(); ++t) {
                for (int c = 0; c < counts[t]; ++c) {
                    shapes.push_back({vertices[t].p_power, vertices[t].x_power});
                    type_ids.push_back(static_cast<int>(t));
                }
                if (counts[t] > 0) coeff_product *= vertices[t].coefficient.pow(counts[t]);
            }
            std::vector<FieldSlot> slots = make_slots(shapes);
            enumerate_pairings(slots, [&](const Pairing& pairing) {
                auto term = contraction_term(slots, pairing);
                if (!term) return;
                Diagram d = classify_diagram(slots, type_ids, pairing);
                auto& info = classes[d.canonical_key];
                if (info.multiplicity.is_zero()) {
                    info.topology = d.topology;
                    info.monomial = term->first;
                    info.monomial_coeff = term->second;
                    info.coeff_product = coeff_product;
                }
                info.multiplicity += multinomial;
            });
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[type] = c;
            recurse(type + 1, remaining - c);
        }
    };
    if (vertices.empty()) {
        out << "(no vertices)\n";
        return 0;
    }
    recurse(0, n);

    for (const auto& [key, info] : classes) {
        out << key << "\t" << topology_name(info.topology) << "\t"
            << info.multiplicity.to_string() << "\t";
        if (evaluate) {
            ContractionPoly one;
            one.add_term(info.monomial, info.monomial_coeff);
            Polynomial value = info.coeff_product * integrate_contraction(one, n);
            out << value.to_string() << "\n";
        } else {
            ContractionPoly one;
            one.add_term(info.monomial, info.monomial_coeff);
            out << one.to_string() << "\n";
        }
    }
    return 0;
}

int cmd_eval(const CommonParams& p, const std::string& closed_form, std::ostream& out) {
    check_positive(p);
    if (!closed_form.empty()) {
        if (closed_form != "ho")
            throw CLI::ValidationError("--closed-form supports only 'ho'");
        out << format_double(ho_closed_form(p.p0, p.x0, p.beta, p.mass, p.omega, p.hbar)) << "\n";
        return 0;
    }
    Hamiltonian h = parse_hamiltonian(p.hamiltonian);
    EffectiveSeries series = heff_high_t(h, p.order);
    out << format_double(series.eval(bindings_of(p))) << "\n";
    return 0;
}

int cmd_zeta(int k, std::ostream& out) {
    if (k < 1) throw CLI::ValidationError("--k must be >= 1");
    Rational r = zeta_even_coeff(static_cast<unsigned>(k));
    double value = r.to_double() * std::pow(M_PI, 2.0 * k);
    out << "zeta(" << 2 * k << ") = " << r.to_string() << " * pi^" << 2 * k << " = "
        << format_double(value) << "\n";
    out << "B_" << 2 * k << " = " << bernoulli(static_cast<unsigned>(2 * k)).to_string() << "\n";
    return 0;
}

struct Check {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

Check make_check(const std::string& name, double expected, double actual, double tolerance) {
    Check c{name, expected, actual, tolerance, false};
    c.pass = std::abs(expected - actual) <= tolerance;
    return c;
}

std::vector<Check> run_validation(long long m_max) {
    std::vector<Check> checks;

    // zeta reduction vs partial sums
    const long long N = 100000;
    for (unsigned k = 1; k <= 3; ++k) {
        double partial = 0.0;
        for (long long m = 1; m <= N; ++m) partial += std::pow(static_cast<double>(m), -2.0 * k);
        double bound = 1.0 / (2.0 * k - 1.0) / std::pow(static_cast<double>(N), 2.0 * k - 1.0);
        checks.push_back(make_check("zeta(" + std::to_string(2 * k) + ") partial sum",
                                    zeta_even_coeff(k).to_double() * std::pow(M_PI, 2.0 * k),
                                    partial, bound));
    }

    // green function: scaled/unscaled and Matsubara forms
    checks.push_back(make_check("green scaled vs unscaled",
                                green_scaled(0.5, 0.25, 1.0).imag,
                                green_unscaled(0.5 * 7.0, 0.25 * 7.0, 7.0, 1.0).imag, 1e-12));
    checks.push_back(make_check("green Matsubara partial sum", 0.25,
                                green_matsubara_partial(0.5, 0.25, 1.0, static_cast<int>(m_max)).imag,
                                1e-3));

    // loop values: simplex backend vs Fourier closed form (exact)
    for (unsigned k = 1; k <= 3; ++k) {
        auto [coeff, edges] = loop_monomial(k);
        DiagramValue simplex = integrate_simplex(coeff, edges, static_cast<int>(2 * k));
        DiagramValue closed = loop_value_closed(k);
        bool equal = simplex.value == closed.value;
        Check c{"loop k=" + std::to_string(k) + " simplex vs closed",
                closed.value.eval({{Symbol::Hbar, 1.0}}), simplex.value.eval({{Symbol::Hbar, 1.0}}),
                0.0, equal};
        checks.push_back(c);
    }

    // chains vanish
    for (int len = 2; len <= 5; ++len) {
        auto [coeff, edges] = chain_monomial(len);
        DiagramValue v = integrate_simplex(coeff, edges, len);
        Check c{"chain length " + std::to_string(len), 0.0,
                v.value.is_zero() ? 0.0 : v.value.eval({{Symbol::Hbar, 1.0}}), 0.0,
                v.value.is_zero()};
        checks.push_back(c);
    }

    // Matsubara numeric loop
    checks.push_back(make_check("matsubara loop k=1 partial sum", -1.0 / 12.0,
                                matsubara_loop_numeric(1, m_max), 1e-4));

    // quadrature oracle
    {
        auto [coeff, edges] = loop_monomial(1);
        checks.push_back(make_check("quadrature loop k=1", -1.0 / 12.0,
                                    quad_monomial(coeff, edges, 2, 1.0, QuadratureSpec{12}), 1e-9));
        double qs = quad_diagram(
            [&](const std::vector<double>& t) { return green_scaled(t[0], t[1], 1.0).imag; }, 2,
            1.0, QuadratureSpec{12});
        checks.push_back(make_check("quadrature single edge", 0.0, qs, 1e-12));
        auto [ccoeff, cedges] = chain_monomial(3);
        checks.push_back(make_check("quadrature chain-of-2 edges", 0.0,
                                    quad_monomial(ccoeff, cedges, 3, 1.0, QuadratureSpec{12}),
                                    1e-10));
    }

    // partition function vs canonical sum
    for (double x : {0.5, 1.0, 2.0}) {
        double z = partition_function_quadratic(ho_quadratic_heff(x, 1.0, 1.0, 1.0), x, 1.0);
        checks.push_back(make_check("Z quadratic vs canonical x=" + format_double(x),
                                    exact_Z_canonical(x, 1.0, 1.0, 200), z, 1e-10));
    }

    // truncated series vs closed form
    {
        SeriesVsClosedReport rep = series_vs_closed(6, {0.25, 0.5, 1.0});
        for (const auto& pt : rep.points) {
            Check c{"series(k<=3) vs closed x=" + format_double(pt.x), 0.0, pt.deviation, pt.bound,
                    pt.pass};
            checks.push_back(c);
        }
    }

    // series assembly: first orders of the oscillator
    {
        Hamiltonian ho = parse_hamiltonian("p^2/(2*M) + (M*w^2/2)*x^2");
        EffectiveSeries s = heff_high_t(ho, 4);
        Polynomial classical;
        {
            Monomial kin;
            kin[Symbol::P0] = 2;
            kin[Symbol::M] = -1;
            classical.add_term(kin, Rational(1, 2));
            Monomial pot;
            pot[Symbol::X0] = 2;
            pot[Symbol::M] = 1;
            pot[Symbol::W] = 2;
            classical.add_term(pot, Rational(1, 2));
        }
        checks.push_back(Check{"order 1 reproduces classical H", 0.0, 0.0, 0.0,
                               s.terms[0].coefficient == classical});
        Monomial m2;
        m2[Symbol::Hbar] = 2;
        m2[Symbol::W] = 2;
        checks.push_back(Check{"order 2 equals hbar^2 w^2 / 24", 0.0, 0.0, 0.0,
                               s.terms[1].coefficient == Polynomial::term(Rational(1, 24), m2)});
        checks.push_back(Check{"order 3 vanishes", 0.0, 0.0, 0.0, s.terms[2].coefficient.is_zero()});

        // reorder preserves the value
        WeakCouplingSeries w = reorder_weak_coupling(s, ho);
        std::map<Symbol, double> bind{{Symbol::X0, 0.7},  {Symbol::P0, -0.4}, {Symbol::Hbar, 1.0},
                                      {Symbol::Beta, 0.3}, {Symbol::M, 1.0},  {Symbol::W, 1.0},
                                      {Symbol::G, 1.0}};
        checks.push_back(make_check("weak-coupling reorder value", s.eval(bind), w.eval(bind), 1e-12));
    }

    // anharmonic cross-check: quartic cumulant, two routes plus quadrature
    {
        std::vector<VertexShape> shapes{{2, 0}, {0, 4}};
        ContractionPoly mob = cumulant_mobius(shapes);
        ContractionPoly con = cumulant_connected(shapes);
        checks.push_back(Check{"quartic cumulant Moebius vs connected", 0.0, 0.0, 0.0, mob == con});
        Polynomial exact = integrate_contraction(mob, 2);
        double x0 = 0.8, p0 = 0.3;
        std::map<Symbol, double> bind{{Symbol::X0, x0}, {Symbol::P0, p0}, {Symbol::Hbar, 1.0}};
        ComplexQuad q = quad_contraction(mob, 2, 1.0, x0, p0, QuadratureSpec{12});
        checks.push_back(make_check("quartic cumulant integral vs quadrature", exact.eval(bind),
                                    q.real, 1e-8));
    }

    return checks;
}

int cmd_validate(const CommonParams& p, std::ostream& out) {
    std::vector<Check> checks = run_validation(p.m_max);
    bool all_pass = true;
    if (p.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
            nlohmann::ordered_json row;
            row["check"] = c.name;
            row["expected"] = c.expected;
            row["actual"] = c.actual;
            row["tolerance"] = c.tolerance;
            row["pass"] = c.pass;
            j.push_back(std::move(row));
            all_pass = all_pass && c.pass;
        }
        out << j.dump(2) << "\n";
    } else {
        for (const auto& c : checks) {
            out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  expected="
                << format_double(c.expected) << " actual=" << format_double(c.actual)
                << " tol=" << format_double(c.tolerance) << "\n";
            all_pass = all_pass && c.pass;
        }
        out << (all_pass ? "all checks passed" : "validation FAILED") << "\n";
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"high-temperature expansion of the effective classical Hamiltonian"};
    app.require_subcommand(1);
    CommonParams params;

    auto add_common = [&](CLI::App* cmd, bool with_params = true) {
        cmd->add_option("--hamiltonian", params.hamiltonian, "Hamiltonian expression");
        cmd->add_option("--order", params.order, "expansion order (1..8)");
        cmd->add_option("--format", params.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        if (with_params) {
            cmd->add_option("--beta", params.beta, "inverse temperature");
            cmd->add_option("--omega", params.omega, "oscillator frequency w");
            cmd->add_option("--M", params.mass, "mass");
            cmd->add_option("--hbar", params.hbar, "Planck constant");
            cmd->add_option("--p0", params.p0, "momentum phase-space point");
            cmd->add_option("--x0", params.x0, "position phase-space point");
            cmd->add_option("--g", params.g, "coupling constant");
            cmd->add_option("--m-max", params.m_max, "Matsubara mode cutoff");
        }
    };

    CLI::App* expand = app.add_subcommand("expand", "high-temperature series of H_eff");
    add_common(expand);

    CLI::App* diagrams = app.add_subcommand("diagrams", "diagram classes of one order");
    bool evaluate = false;
    add_common(diagrams);
    diagrams->add_flag("--evaluate", evaluate, "integrate each diagram class");

    CLI::App* eval = app.add_subcommand("eval", "numeric H_eff value");
    std::string closed_form;
    add_common(eval);
    eval->add_option("--closed-form", closed_form, "use a closed form (ho)");

    CLI::App* validate = app.add_subcommand("validate", "run the numeric cross-check table");
    add_common(validate);

    CLI::App* zeta = app.add_subcommand("zeta", "zeta(2k) as rational * pi^2k");
    int zeta_k = 1;
    zeta->add_option("--k", zeta_k, "half the zeta argument");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (expand->parsed()) return cmd_expand(params, out);
        if (diagrams->parsed()) return cmd_diagrams(params, evaluate, out);
        if (eval->parsed()) return cmd_eval(params, closed_form, out);
        if (validate->parsed()) return cmd_validate(params, out);
        if (zeta->parsed()) return cmd_zeta(zeta_k, out);
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "hamiltonian: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedFormError& e) {
        err << "hamiltonian: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const FormError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace effham::cli
