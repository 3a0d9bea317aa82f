#include "effham/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace effham {

const char* topology_name(Topology t) {
    switch (t) {
        case Topology::Chain: return "chain";
        case Topology::Loop: return "loop";
        case Topology::Mixed: return "mixed";
        case Topology::CurrentOnly: return "current-only";
    }
    return "?";
}

ContractionGraph build_graph(const std::vector<FieldSlot>& slots,
                             const std::vector<int>& vertex_type_ids, const Pairing& pairing) {
    ContractionGraph g;
    g.vertices.resize(vertex_type_ids.size());
    for (std::size_t v = 0; v < vertex_type_ids.size(); ++v)
        g.vertices[v].type_id = vertex_type_ids[v];
    for (int s : pairing.singles) {
        auto& info = g.vertices[slots[s].vertex_index];
        if (slots[s].kind == SlotKind::Position)
            ++info.cur_x;
        else
            ++info.cur_p;
    }
    std::map<std::pair<int, int>, int> mult;
    for (const auto& [xs, ps] : pairing.edges)
        ++mult[{slots[xs].vertex_index, slots[ps].vertex_index}];
    for (const auto& [ends, m] : mult) g.edges.push_back({ends.first, ends.second, m});
    return g;
}

namespace {

/// Iterative color refinement. Returns stable colors (small ints, assigned
/// in sorted-signature order so they are isomorphism-invariant).
std::vector<int> refine_colors(std::size_t n, const std::vector<std::string>& initial,
                               const std::function<std::string(int, const std::vector<int>&)>&
                                   neighborhood_signature) {
    std::vector<int> color(n, 0);
    {
        std::vector<std::string> sorted = initial;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t v = 0; v < n; ++v)
            color[v] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), initial[v]) - sorted.begin());
    }
    for (;;) {
        std::vector<std::string> sig(n);
        for (std::size_t v = 0; v < n; ++v)
            sig[v] = std::to_string(color[v]) + "|" +
                     neighborhood_signature(static_cast<int>(v), color);
        std::vector<std::string> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> next(n);
        for (std::size_t v = 0; v < n; ++v)
            next[v] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        if (next == color) return color;
        color = std::move(next);
    }
}

/// Visits every vertex ordering compatible with the color classes
/// (classes in ascending color order, all permutations within a class).
/// position[v] = canonical slot of vertex v.
void for_each_colored_order(const std::vector<int>& color,
                            const std::function<void(const std::vector<int>&)>& visit) {
    const std::size_t n = color.size();
    std::map<int, std::vector<int>> classes;
    for (std::size_t v = 0; v < n; ++v) classes[color[v]].push_back(static_cast<int>(v));

    std::vector<std::vector<int>> groups;
    groups.reserve(classes.size());
    std::size_t total = 1;
    for (auto& [c, members] : classes) {
        std::size_t f = 1;
        for (std::size_t i = 2; i <= members.size(); ++i) f *= i;
        total *= f;
        groups.push_back(members);
    }
    if (total > 2'000'000)
        throw std::runtime_error("canonical_key: too many candidate orderings");

    std::vector<int> position(n);
    std::function<void(std::size_t, int)> recurse = [&](std::size_t gi, int base) {
        if (gi == groups.size()) {
            visit(position);
            return;
        }
        std::vector<int>& members = groups[gi];
        std::sort(members.begin(), members.end());
        do {
            for (std::size_t i = 0; i < members.size(); ++i)
                position[members[i]] = base + static_cast<int>(i);
            recurse(gi + 1, base + static_cast<int>(members.size()));
        } while (std::next_permutation(members.begin(), members.end()));
    };
    recurse(0, 0);
}

}  // namespace

std::string canonical_key(const ContractionGraph& graph) {
    const std::size_t n = graph.vertices.size();
    std::vector<std::string> initial(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& info = graph.vertices[v];
        initial[v] = "t" + std::to_string(info.type_id) + "x" + std::to_string(info.cur_x) +
                     "p" + std::to_string(info.cur_p);
    }
    auto signature = [&](int v, const std::vector<int>& color) {
        std::vector<std::string> out, in;
        for (const auto& e : graph.edges) {
            if (e.x_end == v)
                out.push_back(std::to_string(e.mult) + ":" + std::to_string(color[e.p_end]));
            if (e.p_end == v)
                in.push_back(std::to_string(e.mult) + ":" + std::to_string(color[e.x_end]));
        }
        std::sort(out.begin(), out.end());
        std::sort(in.begin(), in.end());
        std::string s = "o";
        for (const auto& t : out) s += t + ",";
        s += ";i";
        for (const auto& t : in) s += t + ",";
        return s;
    };
    std::vector<int> color = refine_colors(n, initial, signature);

    // vertex block of the key is ordering-independent: classes in color order
    std::vector<std::pair<int, std::string>> vertex_block(n);
    for (std::size_t v = 0; v < n; ++v) vertex_block[v] = {color[v], initial[v]};
    std::sort(vertex_block.begin(), vertex_block.end());

    std::vector<std::tuple<int, int, int>> best;
    bool have_best = false;
    for_each_colored_order(color, [&](const std::vector<int>& position) {
        std::vector<std::tuple<int, int, int>> enc;
        enc.reserve(graph.edges.size());
        for (const auto& e : graph.edges)
            enc.emplace_back(position[e.x_end], position[e.p_end], e.mult);
        std::sort(enc.begin(), enc.end());
        if (!have_best || enc < best) {
            best = std::move(enc);
            have_best = true;
        }
    });

    std::string key;
    for (const auto& [c, desc] : vertex_block) key += desc + ";";
    key += "|";
    for (const auto& [a, b, m] : best)
        key += std::to_string(a) + ">" + std::to_string(b) + "*" + std::to_string(m) + ";";
    return key;
}

Topology classify_topology(const ContractionGraph& graph) {
    if (graph.edges.empty()) return Topology::CurrentOnly;
    const int n = static_cast<int>(graph.vertices.size());

    std::vector<int> degree(n, 0);
    int total_mult = 0;
    for (const auto& e : graph.edges) {
        degree[e.x_end] += e.mult;
        degree[e.p_end] += e.mult;
        total_mult += e.mult;
    }

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : graph.edges) parent[find(e.x_end)] = find(e.p_end);

    int touched = 0;
    std::map<int, int> roots;
    for (int v = 0; v < n; ++v) {
        if (degree[v] == 0) continue;
        ++touched;
        roots[find(v)] = 1;
    }
    if (roots.size() != 1) return Topology::Mixed;

    bool has_currents = false;
    for (const auto& info : graph.vertices)
        if (info.cur_x > 0 || info.cur_p > 0) has_currents = true;

    bool all_deg2 = true;
    int deg1 = 0;
    for (int v = 0; v < n; ++v) {
        if (degree[v] == 0) continue;
        if (degree[v] == 1) ++deg1;
        if (degree[v] != 2) all_deg2 = false;
    }

    if (all_deg2 && total_mult == touched && !has_currents) return Topology::Loop;
    if (deg1 == 2 && total_mult == touched - 1) {
        bool simple = true;
        for (const auto& e : graph.edges)
            if (e.mult != 1) simple = false;
        bool path_degrees = true;
        for (int v = 0; v < n; ++v)
            if (degree[v] > 2) path_degrees = false;
        if (simple && path_degrees) return Topology::Chain;
    }
    return Topology::Mixed;
}

Diagram classify_diagram(const std::vector<FieldSlot>& slots,
                         const std::vector<int>& vertex_type_ids, const Pairing& pairing) {
    ContractionGraph g = build_graph(slots, vertex_type_ids, pairing);
    Diagram d;
    d.canonical_key = canonical_key(g);
    d.topology = classify_topology(g);
    d.multiplicity = 1;
    return d;
}

CanonicalMonomial canonicalize_monomial(const std::vector<EdgePower>& edges) {
    CanonicalMonomial result;
    // compact labels
    std::vector<int> labels;
    for (const auto& e : edges) {
        labels.push_back(e.a);
        labels.push_back(e.b);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    const std::size_t n = labels.size();
    result.n = static_cast<int>(n);
    auto local = [&](int v) {
        return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), v) -
                                labels.begin());
    };

    struct LocalEdge {
        int a, b, mult;
    };
    std::vector<LocalEdge> les;
    les.reserve(edges.size());
    for (const auto& e : edges) les.push_back({local(e.a), local(e.b), e.mult});

    std::vector<std::string> initial(n, "v");
    auto signature = [&](int v, const std::vector<int>& color) {
        std::vector<std::string> inc;
        for (const auto& e : les) {
            if (e.a == v) inc.push_back(std::to_string(e.mult) + ":" + std::to_string(color[e.b]));
            if (e.b == v) inc.push_back(std::to_string(e.mult) + ":" + std::to_string(color[e.a]));
        }
        std::sort(inc.begin(), inc.end());
        std::string s;
        for (const auto& t : inc) s += t + ",";
        return s;
    };
    std::vector<int> color = refine_colors(n, initial, signature);

    std::vector<std::tuple<int, int, int>> best;
    int best_sign = 1;
    bool have_best = false;
    for_each_colored_order(color, [&](const std::vector<int>& position) {
        std::vector<std::tuple<int, int, int>> enc;
        enc.reserve(les.size());
        int sign = 1;
        for (const auto& e : les) {
            int pa = position[e.a], pb = position[e.b];
            if (pa > pb) {
                std::swap(pa, pb);
                if (e.mult % 2 == 1) sign = -sign;
            }
            enc.emplace_back(pa, pb, e.mult);
        }
        std::sort(enc.begin(), enc.end());
        if (!have_best || enc < best) {
            best = std::move(enc);
            best_sign = sign;
            have_best = true;
        }
    });

    result.sign = best_sign;
    if (have_best) {
        for (const auto& [a, b, m] : best) {
            result.edges.push_back({static_cast<uint8_t>(a), static_cast<uint8_t>(b),
                                    static_cast<uint16_t>(m)});
            result.key += std::to_string(a) + "-" + std::to_string(b) + "*" + std::to_string(m) + ";";
        }
    }
    return result;
}

}  // namespace effham
