#ifndef EFFHAM_CONTRACTION_HPP
#define EFFHAM_CONTRACTION_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "effham/rational.hpp"

namespace effham {

enum class SlotKind : uint8_t { Position, Momentum };

/// One field factor x(tau_i) or p(tau_i) awaiting contraction.
struct FieldSlot {
    int vertex_index;
    SlotKind kind;
};

/// A complete contraction: every slot is either in exactly one mixed edge
/// (stored x-slot first) or contracted to its current (<x> = x0, <p> = p0).
struct Pairing {
    std::vector<std::pair<int, int>> edges;  // (x-slot, p-slot) indices
    std::vector<int> singles;                // slot indices
};

/// Streams every partition of the slots into mixed-type edges and current
/// singles, depth-first in a fixed order. Same-type pairs carry weight zero
/// and are never produced.
void enumerate_pairings(const std::vector<FieldSlot>& slots,
                        const std::function<void(const Pairing&)>& visit);

/// A propagator bundle G(a,b)^mult with labels a < b.
struct EdgePower {
    uint8_t a;
    uint8_t b;
    uint16_t mult;

    friend auto operator<=>(const EdgePower&, const EdgePower&) = default;
};

/// Key of one integrand term: x0^x0_pow * p0^p0_pow * prod G(a,b)^mult.
/// Orientation signs (p-then-x edges contribute -G) live in the coefficient.
struct ContractionKey {
    uint16_t x0_pow = 0;
    uint16_t p0_pow = 0;
    std::vector<EdgePower> edges;  // sorted by (a, b)

    int total_edge_mult() const;
    friend auto operator<=>(const ContractionKey&, const ContractionKey&) = default;
};

/// Moment/cumulant integrand: exact-rational polynomial in the G(a,b)
/// factors and the currents x0, p0, over time labels 0..n-1.
class ContractionPoly {
 public:
    using TermMap = std::map<ContractionKey, Rational>;

    ContractionPoly() = default;

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const ContractionKey& k, const Rational& c);
    ContractionPoly& operator+=(const ContractionPoly& o);
    ContractionPoly& operator-=(const ContractionPoly& o);
    ContractionPoly& operator*=(const Rational& c);
    friend ContractionPoly operator*(const ContractionPoly& a, const ContractionPoly& b);
    friend bool operator==(const ContractionPoly& a, const ContractionPoly& b) {
        return a.terms_ == b.terms_;
    }

    /// For tests and the diagrams listing: "p0^2 + -4 * G(0,1) * p0 * x0 ..."
    std::string to_string() const;

 private:
    TermMap terms_;
};

/// Field content of one time label: p^p_power x^x_power.
struct VertexShape {
    int p_power = 0;
    int x_power = 0;
};

std::vector<FieldSlot> make_slots(const std::vector<VertexShape>& shapes);

/// Integrand term of a single pairing, or nullopt when it contains an
/// equal-time mixed edge (exact zero). The coefficient carries the
/// orientation signs (+G for x-then-p, -G for p-then-x).
std::optional<std::pair<ContractionKey, Rational>> contraction_term(
    const std::vector<FieldSlot>& slots, const Pairing& pairing);

/// Wick moment <prod_i p^a_i(tau_i) x^b_i(tau_i)>: the sum over all
/// surviving pairings of signed G-edge factors times current factors.
ContractionPoly moment(const std::vector<VertexShape>& shapes);

/// Moment restricted to the vertices in `mask` (labels are preserved).
ContractionPoly moment_masked(const std::vector<VertexShape>& shapes, unsigned mask);

/// Cumulant via set-partition Moebius inversion:
///   <...>_c = sum_partitions (-1)^(b-1) (b-1)! prod_blocks <block>.
ContractionPoly cumulant_mobius(const std::vector<VertexShape>& shapes);

/// Cumulant as the sum over pairings whose G-edges connect all vertices
/// into a single component. Independent cross-check of cumulant_mobius.
ContractionPoly cumulant_connected(const std::vector<VertexShape>& shapes);

/// Moment reconstructed from cumulants (partition sum); test helper for the
/// inversion identity.
ContractionPoly moment_from_cumulants(const std::vector<VertexShape>& shapes);

}  // namespace effham

#endif  // EFFHAM_CONTRACTION_HPP
