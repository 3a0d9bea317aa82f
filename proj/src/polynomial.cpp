#include "effham/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace effham {

const char* symbol_name(Symbol s) { return kSymbolNames[static_cast<int>(s)]; }

std::optional<Symbol> symbol_from_name(const std::string& name) {
    for (int i = 0; i < kNumSymbols; ++i)
        if (name == kSymbolNames[i]) return static_cast<Symbol>(i);
    return std::nullopt;
}

namespace {

void check_exponents(const Monomial& m) {
    for (int i = 0; i < kNumSymbols; ++i) {
        if (m.exp[i] < 0 && static_cast<Symbol>(i) != Symbol::M)
            throw std::domain_error(std::string("Polynomial: negative exponent of ") +
                                    kSymbolNames[i] + " (only M may be inverted)");
    }
}

}  // namespace

Polynomial Polynomial::term(const Rational& c, const Monomial& m) {
    check_exponents(m);
    Polynomial p;
    if (!c.is_zero()) p.terms_[m] = c;
    return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    check_exponents(m);
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m;
            for (int i = 0; i < kNumSymbols; ++i)
                m.exp[i] = static_cast<int16_t>(ma.exp[i] + mb.exp[i]);
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::pow(int e) const {
    if (e < 0) throw std::domain_error("Polynomial: negative power");
    Polynomial acc = Rational(1);
    for (int i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

Polynomial Polynomial::divide_by_symbol_power(Symbol s, int e) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        if (m[s] < e)
            throw std::domain_error(std::string("Polynomial: term not divisible by ") +
                                    symbol_name(s));
        Monomial q = m;
        q[s] = static_cast<int16_t>(q[s] - e);
        r.terms_[q] = c;
    }
    return r;
}

int Polynomial::max_degree_in(Symbol s) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, m[s]);
    return d;
}

bool Polynomial::depends_on(Symbol s) const {
    for (const auto& [m, c] : terms_)
        if (m[s] != 0) return true;
    return false;
}

double Polynomial::eval(const std::map<Symbol, double>& bindings) const {
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = c.to_double();
        for (int i = 0; i < kNumSymbols; ++i) {
            if (m.exp[i] == 0) continue;
            auto it = bindings.find(static_cast<Symbol>(i));
            if (it == bindings.end())
                throw std::invalid_argument(std::string("Polynomial::eval: unbound symbol ") +
                                            kSymbolNames[i]);
            t *= std::pow(it->second, m.exp[i]);
        }
        sum += t;
    }
    return sum;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += c.to_string();
        for (int i = 0; i < kNumSymbols; ++i) {
            if (m.exp[i] == 0) continue;
            out += " * ";
            out += kSymbolNames[i];
            if (m.exp[i] != 1) out += "^" + std::to_string(m.exp[i]);
        }
    }
    return out;
}

}  // namespace effham
