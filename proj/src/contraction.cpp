#include "effham/contraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace effham {

int ContractionKey::total_edge_mult() const {
    int e = 0;
    for (const auto& ep : edges) e += ep.mult;
    return e;
}

void ContractionPoly::add_term(const ContractionKey& k, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ContractionPoly& ContractionPoly::operator+=(const ContractionPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

ContractionPoly& ContractionPoly::operator-=(const ContractionPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

ContractionPoly& ContractionPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

namespace {

ContractionKey merge_keys(const ContractionKey& a, const ContractionKey& b) {
    ContractionKey r;
    r.x0_pow = static_cast<uint16_t>(a.x0_pow + b.x0_pow);
    r.p0_pow = static_cast<uint16_t>(a.p0_pow + b.p0_pow);
    r.edges.reserve(a.edges.size() + b.edges.size());
    auto ia = a.edges.begin(), ib = b.edges.begin();
    while (ia != a.edges.end() || ib != b.edges.end()) {
        if (ib == b.edges.end() ||
            (ia != a.edges.end() && std::tie(ia->a, ia->b) < std::tie(ib->a, ib->b))) {
            r.edges.push_back(*ia++);
        } else if (ia == a.edges.end() || std::tie(ib->a, ib->b) < std::tie(ia->a, ia->b)) {
            r.edges.push_back(*ib++);
        } else {
            r.edges.push_back({ia->a, ia->b, static_cast<uint16_t>(ia->mult + ib->mult)});
            ++ia;
            ++ib;
        }
    }
    return r;
}

}  // namespace

ContractionPoly operator*(const ContractionPoly& a, const ContractionPoly& b) {
    ContractionPoly r;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) r.add_term(merge_keys(ka, kb), ca * cb);
    }
    return r;
}

std::string ContractionPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += c.to_string();
        for (const auto& e : k.edges) {
            out += " * G(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
            if (e.mult > 1) out += "^" + std::to_string(e.mult);
        }
        if (k.p0_pow > 0)
            out += " * p0" + (k.p0_pow > 1 ? "^" + std::to_string(k.p0_pow) : std::string());
        if (k.x0_pow > 0)
            out += " * x0" + (k.x0_pow > 1 ? "^" + std::to_string(k.x0_pow) : std::string());
    }
    return out;
}

void enumerate_pairings(const std::vector<FieldSlot>& slots,
                        const std::function<void(const Pairing&)>& visit) {
    const int n = static_cast<int>(slots.size());
    std::vector<bool> used(n, false);
    Pairing current;

    std::function<void(int)> recurse = [&](int from) {
        int i = from;
        while (i < n && used[i]) ++i;
        if (i == n) {
            visit(current);
            return;
        }
        used[i] = true;
        // contract slot i to its current
        current.singles.push_back(i);
        recurse(i + 1);
        current.singles.pop_back();
        // or pair it with a later slot of the opposite kind
        for (int j = i + 1; j < n; ++j) {
            if (used[j] || slots[j].kind == slots[i].kind) continue;
            used[j] = true;
            if (slots[i].kind == SlotKind::Position)
                current.edges.emplace_back(i, j);
            else
                current.edges.emplace_back(j, i);
            recurse(i + 1);
            current.edges.pop_back();
            used[j] = false;
        }
        used[i] = false;
    };
    recurse(0);
}

std::vector<FieldSlot> make_slots(const std::vector<VertexShape>& shapes) {
    std::vector<FieldSlot> slots;
    for (int v = 0; v < static_cast<int>(shapes.size()); ++v) {
        for (int i = 0; i < shapes[v].p_power; ++i) slots.push_back({v, SlotKind::Momentum});
        for (int i = 0; i < shapes[v].x_power; ++i) slots.push_back({v, SlotKind::Position});
    }
    return slots;
}

namespace {

/// Converts one pairing into an integrand term. Returns false when the
/// pairing contains an equal-time mixed edge, whose factor G(i,i) vanishes.
bool pairing_term(const std::vector<FieldSlot>& slots, const Pairing& pairing,
                  ContractionKey* key, Rational* coeff) {
    key->x0_pow = 0;
    key->p0_pow = 0;
    key->edges.clear();
    int sign = 1;
    std::vector<EdgePower> edges;
    for (const auto& [xs, ps] : pairing.edges) {
        int xi = slots[xs].vertex_index, pj = slots[ps].vertex_index;
        if (xi == pj) return false;
        // <x~(i) p~(j)> = G(i,j); stored with labels ascending, G(j,i) = -G(i,j)
        uint8_t a = static_cast<uint8_t>(std::min(xi, pj));
        uint8_t b = static_cast<uint8_t>(std::max(xi, pj));
        if (xi > pj) sign = -sign;
        edges.push_back({a, b, 1});
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) {
        if (!key->edges.empty() && key->edges.back().a == e.a && key->edges.back().b == e.b)
            key->edges.back().mult += e.mult;
        else
            key->edges.push_back(e);
    }
    for (int s : pairing.singles) {
        if (slots[s].kind == SlotKind::Position)
            ++key->x0_pow;
        else
            ++key->p0_pow;
    }
    *coeff = sign;
    return true;
}

ContractionPoly moment_of_slots(const std::vector<FieldSlot>& slots) {
    ContractionPoly result;
    ContractionKey key;
    Rational coeff;
    enumerate_pairings(slots, [&](const Pairing& pairing) {
        if (pairing_term(slots, pairing, &key, &coeff)) result.add_term(key, coeff);
    });
    return result;
}

}  // namespace

std::optional<std::pair<ContractionKey, Rational>> contraction_term(
    const std::vector<FieldSlot>& slots, const Pairing& pairing) {
    ContractionKey key;
    Rational coeff;
    if (!pairing_term(slots, pairing, &key, &coeff)) return std::nullopt;
    return std::make_pair(key, coeff);
}

namespace {

/// Set partitions of {0..n-1} as restricted-growth strings.
void for_each_partition(int n, const std::function<void(const std::vector<unsigned>&)>& visit) {
    // blocks[i] = mask of elements in block i
    std::vector<unsigned> blocks;
    std::function<void(int)> recurse = [&](int element) {
        if (element == n) {
            visit(blocks);
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b] |= 1u << element;
            recurse(element + 1);
            blocks[b] &= ~(1u << element);
        }
        blocks.push_back(1u << element);
        recurse(element + 1);
        blocks.pop_back();
    };
    recurse(0);
}

struct MomentCache {
    const std::vector<VertexShape>& shapes;
    std::map<unsigned, ContractionPoly> by_mask;

    const ContractionPoly& get(unsigned mask) {
        auto it = by_mask.find(mask);
        if (it != by_mask.end()) return it->second;
        return by_mask.emplace(mask, moment_masked(shapes, mask)).first->second;
    }
};

}  // namespace

ContractionPoly moment(const std::vector<VertexShape>& shapes) {
    return moment_of_slots(make_slots(shapes));
}

ContractionPoly moment_masked(const std::vector<VertexShape>& shapes, unsigned mask) {
    std::vector<FieldSlot> slots;
    for (int v = 0; v < static_cast<int>(shapes.size()); ++v) {
        if (!(mask & (1u << v))) continue;
        for (int i = 0; i < shapes[v].p_power; ++i) slots.push_back({v, SlotKind::Momentum});
        for (int i = 0; i < shapes[v].x_power; ++i) slots.push_back({v, SlotKind::Position});
    }
    return moment_of_slots(slots);
}

ContractionPoly cumulant_mobius(const std::vector<VertexShape>& shapes) {
    const int n = static_cast<int>(shapes.size());
    if (n == 0) throw std::invalid_argument("cumulant_mobius: need at least one vertex");
    if (n > 31) throw std::invalid_argument("cumulant_mobius: too many vertices");

    MomentCache cache{shapes, {}};
    ContractionPoly result;
    for_each_partition(n, [&](const std::vector<unsigned>& blocks) {
        const std::size_t b = blocks.size();
        ContractionPoly prod = cache.get(blocks[0]);
        for (std::size_t i = 1; i < b; ++i) prod = prod * cache.get(blocks[i]);
        Rational weight = Rational(factorial(static_cast<unsigned>(b - 1)));
        if (b % 2 == 0) weight = -weight;
        prod *= weight;
        result += prod;
    });
    return result;
}

ContractionPoly cumulant_connected(const std::vector<VertexShape>& shapes) {
    const int n = static_cast<int>(shapes.size());
    if (n == 0) throw std::invalid_argument("cumulant_connected: need at least one vertex");
    std::vector<FieldSlot> slots = make_slots(shapes);

    std::vector<int> parent(n);
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };

    ContractionPoly result;
    ContractionKey key;
    Rational coeff;
    enumerate_pairings(slots, [&](const Pairing& pairing) {
        if (!pairing_term(slots, pairing, &key, &coeff)) return;
        for (int v = 0; v < n; ++v) parent[v] = v;
        int components = n;
        for (const auto& e : key.edges) {
            int ra = find(e.a), rb = find(e.b);
            if (ra != rb) {
                parent[ra] = rb;
                --components;
            }
        }
        if (components == 1) result.add_term(key, coeff);
    });
    return result;
}

ContractionPoly moment_from_cumulants(const std::vector<VertexShape>& shapes) {
    const int n = static_cast<int>(shapes.size());
    std::map<unsigned, ContractionPoly> cumulant_by_mask;
    std::function<const ContractionPoly&(unsigned)> cum = [&](unsigned mask) -> const ContractionPoly& {
        auto it = cumulant_by_mask.find(mask);
        if (it != cumulant_by_mask.end()) return it->second;
        std::vector<VertexShape> block;
        std::vector<int> labels;
        for (int v = 0; v < n; ++v) {
            if (mask & (1u << v)) {
                block.push_back(shapes[v]);
                labels.push_back(v);
            }
        }
        ContractionPoly c = cumulant_mobius(block);
        // relabel block-local indices back to global ones
        ContractionPoly relabeled;
        for (const auto& [k, coeff] : c.terms()) {
            ContractionKey rk = k;
            for (auto& e : rk.edges) {
                int a = labels[e.a], b = labels[e.b];
                e.a = static_cast<uint8_t>(std::min(a, b));
                e.b = static_cast<uint8_t>(std::max(a, b));
            }
            std::sort(rk.edges.begin(), rk.edges.end());
            relabeled.add_term(rk, coeff);
        }
        return cumulant_by_mask.emplace(mask, std::move(relabeled)).first->second;
    };

    ContractionPoly result;
    for_each_partition(n, [&](const std::vector<unsigned>& blocks) {
        ContractionPoly prod = cum(blocks[0]);
        for (std::size_t i = 1; i < blocks.size(); ++i) prod = prod * cum(blocks[i]);
        result += prod;
    });
    return result;
}

}  // namespace effham
