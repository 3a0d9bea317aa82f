#ifndef EFFHAM_DIAGRAM_HPP
#define EFFHAM_DIAGRAM_HPP

#include <string>
#include <vector>

#include "effham/contraction.hpp"
#include "effham/rational.hpp"

namespace effham {

enum class Topology { Chain, Loop, Mixed, CurrentOnly };

const char* topology_name(Topology t);

/// An isomorphism class of contractions: directed mixed edges (arrow from
/// the x-end to the p-end) over typed vertices plus current decorations.
struct Diagram {
    std::string canonical_key;
    Rational multiplicity = 0;
    Topology topology = Topology::CurrentOnly;
};

/// Raw (labeled) contraction graph of one pairing.
struct ContractionGraph {
    struct VertexInfo {
        int type_id = 0;  // index of the vertex term in the Hamiltonian
        int cur_x = 0;
        int cur_p = 0;
    };
    struct DirectedEdge {
        int x_end = 0;
        int p_end = 0;
        int mult = 0;
    };
    std::vector<VertexInfo> vertices;
    std::vector<DirectedEdge> edges;  // unique (x_end, p_end) pairs
};

ContractionGraph build_graph(const std::vector<FieldSlot>& slots,
                             const std::vector<int>& vertex_type_ids, const Pairing& pairing);

/// Canonical relabeling key: identical for isomorphic graphs, distinct
/// otherwise. Color refinement narrows the candidate orderings, then the
/// minimum encoding over the remaining permutations is taken.
std::string canonical_key(const ContractionGraph& graph);

Topology classify_topology(const ContractionGraph& graph);

/// Classify one pairing into its diagram class (multiplicity 1; callers
/// aggregate equal keys).
Diagram classify_diagram(const std::vector<FieldSlot>& slots,
                         const std::vector<int>& vertex_type_ids, const Pairing& pairing);

/// Canonical labeled form of an undirected G-monomial (edge multiset with
/// orientation signs already folded into coefficients elsewhere). `sign` is
/// the parity of edge flips the canonical relabeling introduces; integrals
/// of the monomial and of its canonical form differ by exactly that sign.
struct CanonicalMonomial {
    std::vector<EdgePower> edges;  // over labels 0..n-1 after relabeling
    int n = 0;
    int sign = 1;
    std::string key;
};

CanonicalMonomial canonicalize_monomial(const std::vector<EdgePower>& edges);

}  // namespace effham

#endif  // EFFHAM_DIAGRAM_HPP
