#include "effham/hamiltonian.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

namespace effham {

namespace {

// Intermediate parse value: polynomial in the field variables p, x with
// Polynomial-monomial coefficients. Collapsed into vertices at the end.
struct FieldKey {
    int p = 0;
    int x = 0;
    Monomial coeff_mono;

    friend bool operator<(const FieldKey& a, const FieldKey& b) {
        return std::tie(a.p, a.x, a.coeff_mono.exp) < std::tie(b.p, b.x, b.coeff_mono.exp);
    }
};

struct FieldPoly {
    std::map<FieldKey, Rational> terms;

    static FieldPoly constant(const Rational& c) {
        FieldPoly r;
        if (!c.is_zero()) r.terms[FieldKey{}] = c;
        return r;
    }

    void add_term(const FieldKey& k, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    FieldPoly& operator+=(const FieldPoly& o) {
        for (const auto& [k, c] : o.terms) add_term(k, c);
        return *this;
    }

    FieldPoly operator-() const {
        FieldPoly r;
        for (const auto& [k, c] : terms) r.terms[k] = -c;
        return r;
    }

    friend FieldPoly operator*(const FieldPoly& a, const FieldPoly& b) {
        FieldPoly r;
        for (const auto& [ka, ca] : a.terms) {
            for (const auto& [kb, cb] : b.terms) {
                FieldKey k;
                k.p = ka.p + kb.p;
                k.x = ka.x + kb.x;
                for (int i = 0; i < kNumSymbols; ++i)
                    k.coeff_mono.exp[i] =
                        static_cast<int16_t>(ka.coeff_mono.exp[i] + kb.coeff_mono.exp[i]);
                r.add_term(k, ca * cb);
            }
        }
        return r;
    }

    bool is_invertible_monomial() const {
        if (terms.size() != 1) return false;
        const FieldKey& k = terms.begin()->first;
        if (k.p != 0 || k.x != 0) return false;
        for (int i = 0; i < kNumSymbols; ++i)
            if (k.coeff_mono.exp[i] != 0 && static_cast<Symbol>(i) != Symbol::M) return false;
        return true;
    }

    /// Inverse of a single M^j * rational term.
    FieldPoly inverse() const {
        FieldPoly r;
        const auto& [k, c] = *terms.begin();
        FieldKey ki;
        ki.coeff_mono[Symbol::M] = static_cast<int16_t>(-k.coeff_mono[Symbol::M]);
        r.terms[ki] = Rational(1) / c;
        return r;
    }

    FieldPoly pow(int e) const {
        FieldPoly acc = constant(1);
        for (int i = 0; i < e; ++i) acc = acc * *this;
        return acc;
    }
};

class Parser {
 public:
    explicit Parser(const std::string& text) : text_(text) {}

    FieldPoly parse() {
        FieldPoly v = parse_expr();
        skip_space();
        if (pos_ != text_.size()) throw ParseError("unexpected character", pos_);
        return v;
    }

 private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    FieldPoly parse_expr() {
        FieldPoly v = consume('-') ? -parse_term() : parse_term();
        for (;;) {
            if (consume('+'))
                v += parse_term();
            else if (consume('-'))
                v += -parse_term();
            else
                return v;
        }
    }

    FieldPoly parse_term() {
        FieldPoly v = parse_unary();
        for (;;) {
            if (consume('*')) {
                v = v * parse_unary();
            } else if (consume('/')) {
                std::size_t at = pos_;
                FieldPoly d = parse_unary();
                if (!d.is_invertible_monomial())
                    throw UnsupportedFormError(
                        "division is only supported by rational constants and powers of M "
                        "(position " + std::to_string(at) + ")");
                v = v * d.inverse();
            } else {
                return v;
            }
        }
    }

    FieldPoly parse_unary() {
        if (consume('-')) return -parse_unary();
        return parse_factor();
    }

    FieldPoly parse_factor() {
        FieldPoly base = parse_atom();
        if (!consume('^')) return base;
        std::size_t at = pos_;
        bool paren = consume('(');
        bool neg = consume('-');
        int e = parse_integer_exponent();
        if (paren && !consume(')')) throw ParseError("expected ')' in exponent", pos_);
        if (neg) {
            if (!base.is_invertible_monomial())
                throw UnsupportedFormError(
                    "negative powers are only supported for M and rational constants "
                    "(position " + std::to_string(at) + ")");
            return base.inverse().pow(e);
        }
        return base.pow(e);
    }

    int parse_integer_exponent() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected integer exponent", pos_);
        if (pos_ < text_.size() && text_[pos_] == '.')
            throw UnsupportedFormError("fractional powers are not supported (position " +
                                       std::to_string(pos_) + ")");
        return std::stoi(text_.substr(start, pos_ - start));
    }

    FieldPoly parse_atom() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            FieldPoly v = parse_expr();
            if (!consume(')')) throw ParseError("expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_symbol();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    FieldPoly parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        BigInt int_part(text_.substr(start, pos_ - start));
        Rational value(int_part);
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::size_t fs = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == fs) throw ParseError("expected digits after decimal point", pos_);
            std::string frac = text_.substr(fs, pos_ - fs);
            BigInt den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            value += Rational(BigInt(frac), den);
        }
        return FieldPoly::constant(value);
    }

    FieldPoly parse_symbol() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        FieldPoly r;
        FieldKey k;
        if (name == "p") {
            k.p = 1;
        } else if (name == "x") {
            k.x = 1;
        } else if (name == "M") {
            k.coeff_mono[Symbol::M] = 1;
        } else if (name == "w") {
            k.coeff_mono[Symbol::W] = 1;
        } else if (name == "g") {
            k.coeff_mono[Symbol::G] = 1;
        } else if (name == "hbar") {
            k.coeff_mono[Symbol::Hbar] = 1;
        } else {
            throw ParseError("unknown symbol '" + name + "'", start);
        }
        r.terms[k] = 1;
        return r;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

bool is_kinetic_standard(const Vertex& v) {
    // exactly p^2 / 2M
    if (v.p_power != 2 || v.x_power != 0) return false;
    Monomial m;
    m[Symbol::M] = -1;
    return v.coefficient == Polynomial::term(Rational(1, 2), m);
}

}  // namespace

Hamiltonian::Hamiltonian(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    for (const auto& v : vertices_) {
        if (v.coefficient.is_zero())
            throw std::invalid_argument("Hamiltonian: vertex with zero coefficient");
        if (v.coefficient.depends_on(Symbol::X0) || v.coefficient.depends_on(Symbol::P0))
            throw std::invalid_argument("Hamiltonian: vertex coefficient may not contain x0/p0");
    }
    // kinetic first, then ascending x_power
    std::sort(vertices_.begin(), vertices_.end(), [](const Vertex& a, const Vertex& b) {
        return std::tie(b.p_power, a.x_power) < std::tie(a.p_power, b.x_power);
    });
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        if (vertices_[i].p_power == vertices_[i - 1].p_power &&
            vertices_[i].x_power == vertices_[i - 1].x_power)
            throw std::invalid_argument("Hamiltonian: duplicate (p,x) powers");
    }

    bool has_kinetic = false, others_potential = true;
    for (const auto& v : vertices_) {
        if (is_kinetic_standard(v))
            has_kinetic = true;
        else if (v.p_power != 0)
            others_potential = false;
    }
    standard_form_ = has_kinetic && others_potential;
}

int Hamiltonian::kinetic_index() const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (is_kinetic_standard(vertices_[i])) return static_cast<int>(i);
    return -1;
}

std::string Hamiltonian::to_string() const {
    if (vertices_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i > 0) out += " + ";
        const Vertex& v = vertices_[i];
        bool needs_parens = v.coefficient.term_count() > 1;
        if (needs_parens)
            out += "(" + v.coefficient.to_string() + ")";
        else
            out += v.coefficient.to_string();
        if (v.p_power > 0)
            out += " * p" + (v.p_power > 1 ? "^" + std::to_string(v.p_power) : std::string());
        if (v.x_power > 0)
            out += " * x" + (v.x_power > 1 ? "^" + std::to_string(v.x_power) : std::string());
    }
    return out;
}

Hamiltonian parse_hamiltonian(const std::string& text) {
    FieldPoly fp = Parser(text).parse();

    std::map<std::pair<int, int>, Polynomial> by_powers;
    for (const auto& [k, c] : fp.terms)
        by_powers[{k.p, k.x}].add_term(k.coeff_mono, c);

    std::vector<Vertex> vertices;
    for (auto& [powers, coeff] : by_powers) {
        if (coeff.is_zero()) continue;
        vertices.push_back(Vertex{std::move(coeff), powers.first, powers.second});
    }
    return Hamiltonian(std::move(vertices));
}

}  // namespace effham
