#ifndef EFFHAM_POLYNOMIAL_HPP
#define EFFHAM_POLYNOMIAL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "effham/rational.hpp"

namespace effham {

/// The fixed symbol set. Order here is the canonical print/compare order.
/// `W` is the oscillator frequency (spelled "w" in all text I/O).
enum class Symbol : int { X0 = 0, P0, Hbar, Beta, M, W, G };

inline constexpr int kNumSymbols = 7;

inline constexpr std::array<const char*, kNumSymbols> kSymbolNames = {
    "x0", "p0", "hbar", "beta", "M", "w", "g"};

const char* symbol_name(Symbol s);
std::optional<Symbol> symbol_from_name(const std::string& name);

/// Exponent vector over the fixed symbol set. Only M may go negative
/// (1/2M in every kinetic vertex); all other symbols stay polynomial.
struct Monomial {
    std::array<int16_t, kNumSymbols> exp{};

    int16_t& operator[](Symbol s) { return exp[static_cast<int>(s)]; }
    int16_t operator[](Symbol s) const { return exp[static_cast<int>(s)]; }

    int total_degree() const {
        int d = 0;
        for (int e : exp) d += e;
        return d;
    }
    bool is_constant() const {
        for (int e : exp)
            if (e != 0) return false;
        return true;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }

    static Monomial of(Symbol s, int16_t e = 1) {
        Monomial m;
        m[s] = e;
        return m;
    }
};

/// Graded lexicographic order: total degree first, then the fixed symbol
/// order breaks ties. Total map iteration (and therefore printing) is
/// deterministic under this comparator.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.exp < b.exp;
    }
};

/// Sparse multivariate polynomial over the fixed symbol set with exact
/// rational coefficients. Never stores a zero coefficient.
class Polynomial {
 public:
    using TermMap = std::map<Monomial, Rational, GradedLexLess>;

    Polynomial() = default;
    Polynomial(const Rational& c) {  // NOLINT: implicit by design
        if (!c.is_zero()) terms_[Monomial{}] = c;
    }
    Polynomial(long long c) : Polynomial(Rational(c)) {}  // NOLINT

    static Polynomial symbol(Symbol s, int16_t e = 1) {
        return Polynomial::term(1, Monomial::of(s, e));
    }
    static Polynomial term(const Rational& c, const Monomial& m);

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    /// Coefficient of exactly this monomial (zero if absent).
    Rational coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o) { *this = *this * o; return *this; }
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(int e) const;

    /// Exact division by sym^e; requires every term to carry at least e
    /// powers of sym (throws std::domain_error otherwise).
    Polynomial divide_by_symbol_power(Symbol s, int e) const;

    int max_degree_in(Symbol s) const;
    bool depends_on(Symbol s) const;

    /// Substitute a numeric value for every symbol and sum the terms.
    /// Every symbol that appears with nonzero exponent must be bound;
    /// an unbound one raises std::invalid_argument naming the symbol.
    double eval(const std::map<Symbol, double>& bindings) const;

    /// Deterministic rendering: terms joined by " + " in graded-lex order,
    /// each "coeff * sym^e * ..." with the coefficient as "num/den"
    /// (negative coefficients keep their sign on the numerator).
    /// The zero polynomial renders as "0".
    std::string to_string() const;

 private:
    TermMap terms_;
};

}  // namespace effham

#endif  // EFFHAM_POLYNOMIAL_HPP
