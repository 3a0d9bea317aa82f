#include "effham/evaluate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "effham/diagram.hpp"
#include "effham/parallel.hpp"
#include "effham/zeta.hpp"

namespace effham {

namespace {

// Polynomial in the simplex variables u_0 < u_1 < ... < u_{n-1}.
using UExp = std::array<uint8_t, kMaxSimplexLabels>;
using UPoly = std::map<UExp, Rational>;

void upoly_add(UPoly& p, const UExp& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = p.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

/// p *= (u_plus - u_minus + constant)
UPoly upoly_mul_affine(const UPoly& p, int u_plus, int u_minus, const Rational& constant) {
    UPoly r;
    for (const auto& [e, c] : p) {
        UExp e1 = e;
        ++e1[u_plus];
        upoly_add(r, e1, c);
        UExp e2 = e;
        ++e2[u_minus];
        upoly_add(r, e2, -c);
        upoly_add(r, e, c * constant);
    }
    return r;
}

/// Integral of the signed-Theta-resolved G-product over one order simplex
/// {0 < u_0 < ... < u_{n-1} < 1}; rank[v] is the position of label v.
Rational simplex_region_integral(const std::vector<EdgePower>& edges, const std::vector<int>& rank,
                                 int n) {
    UPoly poly;
    poly[UExp{}] = 1;
    for (const auto& e : edges) {
        int ra = rank[e.a], rb = rank[e.b];
        // g(a,b) = (t_b - t_a) + (hbar/2) sgn(t_a - t_b), hbar = 1 here
        Rational half = ra > rb ? Rational(1, 2) : Rational(-1, 2);
        for (int m = 0; m < e.mult; ++m) poly = upoly_mul_affine(poly, rb, ra, half);
    }
    for (int k = 0; k < n; ++k) {
        UPoly next;
        for (const auto& [e, c] : poly) {
            int ek = e[k];
            Rational nc = c / Rational(ek + 1);
            UExp ne = e;
            ne[k] = 0;
            if (k + 1 < n) ne[k + 1] = static_cast<uint8_t>(ne[k + 1] + ek + 1);
            upoly_add(next, ne, nc);
        }
        poly = std::move(next);
    }
    if (poly.empty()) return 0;
    return poly.begin()->second;
}

std::vector<int> unrank_permutation(long long r, int n) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<long long> fact(n, 1);
    for (int i = 1; i < n; ++i) fact[i] = fact[i - 1] * i;
    std::vector<int> perm;
    perm.reserve(n);
    for (int i = n - 1; i >= 0; --i) {
        long long idx = r / fact[i];
        r %= fact[i];
        perm.push_back(pool[static_cast<std::size_t>(idx)]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return perm;
}

/// Integral of the pure g-monomial (no i^E factor, hbar = 1) over [0,1]^n,
/// summing all n! order simplices. Deterministic under any worker count.
Rational simplex_g_integral(const std::vector<EdgePower>& edges, int n) {
    if (n == 0) return 1;
    long long perms = 1;
    for (int i = 2; i <= n; ++i) perms *= i;

    std::vector<Rational> partial(static_cast<std::size_t>(std::max(1, worker_count())), 0);
    Rational total = 0;
    parallel_chunks(
        perms,
        [&](long long begin, long long end, int slot) {
            std::vector<int> order = unrank_permutation(begin, n);
            std::vector<int> rank(n);
            Rational sum = 0;
            for (long long i = begin; i < end; ++i) {
                for (int k = 0; k < n; ++k) rank[order[k]] = k;
                sum += simplex_region_integral(edges, rank, n);
                std::next_permutation(order.begin(), order.end());
            }
            partial[slot] = std::move(sum);
        },
        [&](int slot) { total += partial[slot]; });
    return total;
}

Rational loop_rational(unsigned k) {
    // 2 (-1)^k (1/2pi)^(2k) zeta(2k) with zeta(2k) = r pi^(2k): pi cancels.
    Rational r = zeta_even_coeff(k);
    Rational value = Rational(2).pow(1 - 2 * static_cast<int>(k)) * r;
    if (k % 2 == 1) value = -value;
    return value;
}

struct Component {
    std::vector<EdgePower> edges;  // compact labels 0..n-1
    int n = 0;
    int total_mult = 0;
};

std::vector<Component> split_components(const std::vector<EdgePower>& edges) {
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : edges) {
        parent.try_emplace(e.a, e.a);
        parent.try_emplace(e.b, e.b);
    }
    for (const auto& e : edges) parent[find(e.a)] = find(e.b);

    std::map<int, std::vector<EdgePower>> by_root;
    for (const auto& e : edges) by_root[find(e.a)].push_back(e);

    std::vector<Component> out;
    for (auto& [root, ces] : by_root) {
        Component c;
        std::vector<int> labels;
        for (const auto& e : ces) {
            labels.push_back(e.a);
            labels.push_back(e.b);
        }
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        c.n = static_cast<int>(labels.size());
        for (const auto& e : ces) {
            auto local = [&](int v) {
                return static_cast<uint8_t>(std::lower_bound(labels.begin(), labels.end(), v) -
                                            labels.begin());
            };
            c.edges.push_back({local(e.a), local(e.b), e.mult});
            c.total_mult += e.mult;
        }
        std::sort(c.edges.begin(), c.edges.end());
        out.push_back(std::move(c));
    }
    return out;
}

/// Descent count of the canonical cyclic walk; the pure-g cycle integral is
/// (-1)^descents times the alternating-loop value.
int cycle_flip_count(const Component& comp) {
    if (comp.edges.size() == 1) return 1;  // double edge, walk a->b->a
    std::map<int, std::vector<int>> adjacency;
    for (const auto& e : comp.edges) {
        adjacency[e.a].push_back(e.b);
        adjacency[e.b].push_back(e.a);
    }
    int start = adjacency.begin()->first;
    int prev = -1, cur = start, flips = 0;
    do {
        const auto& nb = adjacency[cur];
        int next = (nb[0] != prev) ? nb[0] : nb[1];
        if (cur > next) ++flips;
        prev = cur;
        cur = next;
    } while (cur != start);
    // closing step already counted in the loop; walk visited every vertex once
    return flips;
}

std::map<std::string, Rational> g_monomial_cache;
std::mutex g_monomial_cache_mutex;

/// Pure g-integral (hbar = 1) of one connected component.
Rational component_g_integral(const Component& comp, IntegrationMode mode) {
    if (mode == IntegrationMode::SimplexOnly) return simplex_g_integral(comp.edges, comp.n);

    if (comp.total_mult % 2 == 1) return 0;  // odd count, antisymmetric under reflection

    std::vector<int> degree(comp.n, 0);
    for (const auto& e : comp.edges) {
        degree[e.a] += e.mult;
        degree[e.b] += e.mult;
    }
    // a label hit by exactly one G factor integrates to zero (no zero mode)
    for (int v = 0; v < comp.n; ++v)
        if (degree[v] == 1) return 0;

    bool all_two = std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; });
    if (all_two) {
        int length = comp.total_mult;
        int flips = cycle_flip_count(comp);
        Rational v = loop_rational(static_cast<unsigned>(length / 2));
        return (flips % 2 == 1) ? -v : v;
    }

    CanonicalMonomial canon = canonicalize_monomial(comp.edges);
    {
        std::lock_guard<std::mutex> lock(g_monomial_cache_mutex);
        auto it = g_monomial_cache.find(canon.key);
        if (it != g_monomial_cache.end())
            return canon.sign == 1 ? it->second : -it->second;
    }
    if (canon.n > kMaxSimplexLabels)
        throw CapacityError("component with more than " + std::to_string(kMaxSimplexLabels) +
                            " labels; only chains and loops are available beyond that");
    Rational value = simplex_g_integral(canon.edges, canon.n);
    {
        std::lock_guard<std::mutex> lock(g_monomial_cache_mutex);
        g_monomial_cache.emplace(canon.key, value);
    }
    return canon.sign == 1 ? value : -value;
}

}  // namespace

DiagramValue integrate_simplex(const Rational& coeff, const std::vector<EdgePower>& edges, int n) {
    if (n < 0) throw std::invalid_argument("integrate_simplex: negative label count");
    if (n > kMaxSimplexLabels)
        throw CapacityError("integrate_simplex supports at most " +
                            std::to_string(kMaxSimplexLabels) +
                            " time labels; use the matsubara backend for longer loops");
    int E = 0;
    for (const auto& e : edges) {
        if (e.a >= n || e.b >= n || e.a >= e.b)
            throw std::invalid_argument("integrate_simplex: bad edge labels");
        E += e.mult;
    }

    Rational g_integral = simplex_g_integral(edges, n);

    DiagramValue result;
    result.backend = Backend::Simplex;
    if (E % 2 == 1) {
        if (!g_integral.is_zero())
            throw std::logic_error("integrate_simplex: odd G count gave nonzero integral");
        return result;  // zero polynomial
    }
    Rational value = coeff * g_integral;
    if ((E / 2) % 2 == 1) value = -value;  // i^E for even E
    Monomial m;
    m[Symbol::Hbar] = static_cast<int16_t>(n + E);
    result.value = Polynomial::term(value, m);
    return result;
}

DiagramValue loop_value_closed(unsigned k) {
    if (k == 0) throw std::domain_error("loop_value_closed: k must be >= 1");
    Monomial m;
    m[Symbol::Hbar] = static_cast<int16_t>(4 * k);
    return {Polynomial::term(loop_rational(k), m), Backend::Matsubara};
}

DiagramValue chain_value(int length) {
    if (length < 2) throw std::domain_error("chain_value: length must be >= 2");
    return {Polynomial(), Backend::Matsubara};
}

double matsubara_loop_numeric(unsigned k, long long m_max, double hbar) {
    if (k == 0) throw std::domain_error("matsubara_loop_numeric: k must be >= 1");
    if (m_max < 1) throw std::domain_error("matsubara_loop_numeric: m_max must be >= 1");
    double sum = 0.0;
    for (long long m = 1; m <= m_max; ++m) sum += std::pow(static_cast<double>(m), -2.0 * k);
    double prefactor = 2.0 * std::pow(hbar * hbar / (2.0 * M_PI), 2.0 * k);
    return (k % 2 == 1 ? -prefactor : prefactor) * sum;
}

Polynomial integrate_contraction(const ContractionPoly& integrand, int n, IntegrationMode mode) {
    if (n > kMaxSimplexLabels && mode == IntegrationMode::SimplexOnly)
        throw CapacityError("integrate_contraction: more than " +
                            std::to_string(kMaxSimplexLabels) + " labels in simplex-only mode");
    Polynomial out;
    for (const auto& [key, c] : integrand.terms()) {
        int E = key.total_edge_mult();

        std::vector<Component> components = split_components(key.edges);
        int touched = 0;
        for (const auto& comp : components) touched += comp.n;

        Rational prod = c;
        bool zero = false;
        for (const auto& comp : components) {
            Rational v = component_g_integral(comp, mode);
            if (v.is_zero()) {
                zero = true;
                break;
            }
            prod *= v;
        }
        if (zero) continue;
        if (E % 2 == 1) throw std::logic_error("integrate_contraction: odd G count survived");
        if ((E / 2) % 2 == 1) prod = -prod;  // i^E

        Monomial m;
        m[Symbol::X0] = static_cast<int16_t>(key.x0_pow);
        m[Symbol::P0] = static_cast<int16_t>(key.p0_pow);
        m[Symbol::Hbar] = static_cast<int16_t>(n + E);  // n_c+E_c per component, hbar per idle label
        out.add_term(m, prod);
    }
    return out;
}

std::pair<Rational, std::vector<EdgePower>> loop_monomial(unsigned k) {
    if (k == 0) throw std::domain_error("loop_monomial: k must be >= 1");
    const int n = static_cast<int>(2 * k);
    Rational coeff = 1;
    std::vector<EdgePower> edges;
    for (int j = 0; j < n; ++j) {
        int u = j, v = (j + 1) % n;
        int x_end = (u % 2 == 1) ? u : v;  // odd labels are the x^2 vertices
        int p_end = (x_end == u) ? v : u;
        if (x_end > p_end) coeff = -coeff;
        uint8_t a = static_cast<uint8_t>(std::min(u, v));
        uint8_t b = static_cast<uint8_t>(std::max(u, v));
        edges.push_back({a, b, 1});
    }
    std::sort(edges.begin(), edges.end());
    std::vector<EdgePower> merged;
    for (const auto& e : edges) {
        if (!merged.empty() && merged.back().a == e.a && merged.back().b == e.b)
            merged.back().mult += e.mult;
        else
            merged.push_back(e);
    }
    return {coeff, merged};
}

std::pair<Rational, std::vector<EdgePower>> chain_monomial(int length) {
    if (length < 2) throw std::domain_error("chain_monomial: length must be >= 2");
    Rational coeff = 1;
    std::vector<EdgePower> edges;
    for (int j = 0; j + 1 < length; ++j) {
        int x_end = (j % 2 == 1) ? j : j + 1;
        if (x_end == j + 1) coeff = -coeff;  // p-then-x orientation contributes -G(j, j+1)
        edges.push_back({static_cast<uint8_t>(j), static_cast<uint8_t>(j + 1), 1});
    }
    return {coeff, edges};
}

}  // namespace effham
