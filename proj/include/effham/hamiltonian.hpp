#ifndef EFFHAM_HAMILTONIAN_HPP
#define EFFHAM_HAMILTONIAN_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "effham/polynomial.hpp"

namespace effham {

/// Parse failure with the offending position in the input string.
class ParseError : public std::runtime_error {
 public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

 private:
    std::size_t position_;
};

/// Input that parses but falls outside the monomial-vertex model
/// (fractional powers, division by a sum, inverted field variables).
class UnsupportedFormError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// One monomial interaction term c * p^a * x^b. The coefficient is a
/// polynomial in hbar, beta, M, w, g only (never in x0/p0).
struct Vertex {
    Polynomial coefficient;
    int p_power = 0;
    int x_power = 0;

    int slot_count() const { return p_power + x_power; }
    friend bool operator==(const Vertex& a, const Vertex& b) {
        return a.p_power == b.p_power && a.x_power == b.x_power &&
               a.coefficient == b.coefficient;
    }
};

/// A Hamiltonian as a list of monomial vertices with distinct (p,x) powers,
/// ordered kinetic-first. standard_form marks H = p^2/2M + (x-only terms),
/// the shape the weak-coupling reordering requires.
class Hamiltonian {
 public:
    Hamiltonian() = default;
    explicit Hamiltonian(std::vector<Vertex> vertices);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    bool standard_form() const { return standard_form_; }
    bool empty() const { return vertices_.empty(); }

    /// Kinetic vertex index (p^2/2M exactly), or -1 when absent.
    int kinetic_index() const;

    std::string to_string() const;

    friend bool operator==(const Hamiltonian& a, const Hamiltonian& b) {
        return a.vertices_ == b.vertices_;
    }

 private:
    std::vector<Vertex> vertices_;
    bool standard_form_ = false;
};

/// Parse the Hamiltonian grammar: sums of terms, each a product/quotient of
/// rational numbers and symbols (p, x, M, w, g, hbar) with integer powers
/// via '^'; parentheses group. Terms with equal (p,x) powers are merged.
Hamiltonian parse_hamiltonian(const std::string& text);

}  // namespace effham

#endif  // EFFHAM_HAMILTONIAN_HPP
