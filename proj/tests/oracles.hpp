#pragma once
// Test-side oracles: brute-force enumerations written independently of the
// library's constructions, plus small helpers shared by the test binaries.

#include "decomp/gallery.hpp"
#include "decomp/incidence.hpp"
#include "decomp/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace decomp::testing {


// --- test-side graphs: adjacency bitmask over pairs u<v, canonical = min over relabelings

inline int pair_index(int u, int v) { return v * (v - 1) / 2 + u; }

struct G {
    int n = 0;
    long adj = 0;
};

inline long canon(const G& g) {
    std::vector<int> p(g.n);
    std::iota(p.begin(), p.end(), 0);
    long best = -1;
    do {
        long m = 0;
        for (int v = 1; v < g.n; ++v)
            for (int u = 0; u < v; ++u)
                if (g.adj >> pair_index(u, v) & 1) {
                    int a = std::min(p[u], p[v]), b = std::max(p[u], p[v]);
                    m |= 1L << pair_index(a, b);
                }
        if (best < 0 || m < best) best = m;
    } while (std::next_permutation(p.begin(), p.end()));
    return best * 8 + g.n;
}

inline G parse_graph(const std::string& id) {  // "g3:01,12"
    G g;
    auto colon = id.find(':');
    g.n = std::stoi(id.substr(1, colon - 1));
    for (size_t i = colon + 1; i + 1 < id.size(); i += 3) g.adj |= 1L << pair_index(id[i] - '0', id[i + 1] - '0');
    return g;
}

inline G induced(const G& g, int mask) {
    std::vector<int> idx(g.n, -1);
    G h;
    for (int v = 0; v < g.n; ++v)
        if (mask >> v & 1) idx[v] = h.n++;
    for (int v = 1; v < g.n; ++v)
        for (int u = 0; u < v; ++u)
            if (idx[u] >= 0 && idx[v] >= 0 && (g.adj >> pair_index(u, v) & 1))
                h.adj |= 1L << pair_index(idx[u], idx[v]);
    return h;
}

// --- test-side forests: parent arrays, canonical with square brackets

inline std::string tcode(const std::vector<int>& par, int v) {
    std::vector<std::string> ch;
    for (size_t w = 0; w < par.size(); ++w)
        if (par[w] == v) ch.push_back(tcode(par, static_cast<int>(w)));
    std::sort(ch.begin(), ch.end());
    std::string s = "[";
    for (auto& c : ch) s += c;
    return s + "]";
}

inline std::string fcanon(const std::vector<int>& par) {
    std::vector<std::string> t;
    for (size_t v = 0; v < par.size(); ++v)
        if (par[v] < 0) t.push_back(tcode(par, static_cast<int>(v)));
    std::sort(t.begin(), t.end());
    std::string s = "F";
    for (auto& x : t) s += x;
    return s;
}

inline std::vector<int> parse_forest(const std::string& id) {  // "(()())(())"
    std::vector<int> par, stack;
    if (id == "empty") return par;
    for (char c : id) {
        if (c == '(') {
            par.push_back(stack.empty() ? -1 : stack.back());
            stack.push_back(static_cast<int>(par.size()) - 1);
        } else {
            stack.pop_back();
        }
    }
    return par;
}

inline std::vector<int> restrict_forest(const std::vector<int>& par, int mask) {
    std::vector<int> idx(par.size(), -1), out;
    int k = 0;
    for (size_t v = 0; v < par.size(); ++v)
        if (mask >> v & 1) idx[v] = k++;
    for (size_t v = 0; v < par.size(); ++v)
        if (mask >> v & 1) out.push_back(par[v] >= 0 && (mask >> par[v] & 1) ? idx[par[v]] : -1);
    return out;
}

// subspaces of F_q^n by closing subsets of vectors; vectors encoded base q
inline std::vector<long> brute_subspaces(int q, int n) {
    int V = 1;
    for (int i = 0; i < n; ++i) V *= q;
    auto add = [&](int x, int y, int sx) {
        int r = 0, p = 1;
        for (int i = 0; i < n; ++i, x /= q, y /= q, p *= q) r += ((sx * (x % q) + y % q) % q) * p;
        return r;
    };
    std::vector<long> by_dim(n + 1, 0);
    for (long m = 0; m < (1L << V); ++m) {
        if (!(m & 1)) continue;  // must contain 0
        bool ok = true;
        for (int x = 0; x < V && ok; ++x)
            for (int y = 0; y < V && ok; ++y)
                for (int s = 1; s < q && ok; ++s)
                    if ((m >> x & 1) && (m >> y & 1) && !(m >> add(x, y, s) & 1)) ok = false;
        if (!ok) continue;
        int size = __builtin_popcountl(m), d = 0;
        while (size > 1) { size /= q; ++d; }
        ++by_dim[d];
    }
    return by_dim;
}

// set partitions of [n] as block-label vectors in restricted-growth form
inline std::vector<std::vector<int>> set_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(n);
    std::function<void(int, int)> rec = [&](int i, int m) {
        if (i == n) { out.push_back(a); return; }
        for (int b = 0; b <= m; ++b) {
            a[i] = b;
            rec(i + 1, std::max(m, b + 1));
        }
    };
    rec(0, 0);
    return out;
}

inline bool refines(const std::vector<int>& s, const std::vector<int>& t) {
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = 0; j < s.size(); ++j)
            if (s[i] == s[j] && t[i] != t[j]) return false;
    return true;
}

inline long fact(int n) { return n <= 1 ? 1 : n * fact(n - 1); }

inline int comp_of(const TSG& X, const std::string& id) {
    for (int c = 0; c < X.X[1]->num_components(); ++c)
        if (X.class_id(c) == id) return c;
    return -1;
}


inline IncidenceFunction random_fn(const IncidenceOracle& O, std::mt19937& rng) {
    IncidenceFunction f(O.size());
    for (auto& x : f) x = Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
    return f;
}

// Copy of O with one two-fibre value replaced.
inline IncidenceOracle perturbed(const IncidenceOracle& O, int f, int a, int b, const Rational& v) {
    IncidenceOracle P;
    for (auto c : O.classes) P.add_class(c);
    bool hit = false;
    for (int g = 0; g < O.size(); ++g)
        for (auto& e : O.fibers[g]) {
            bool here = g == f && e.a == a && e.b == b;
            hit = hit || here;
            P.add_two_fiber(g, e.a, e.b, here ? v : e.value);
        }
    if (!hit) P.add_two_fiber(f, a, b, v);
    P.finalize();
    return P;
}

// mu by the sieve over divisors, independent of any convolution code
inline int sieve_mu(int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
    return n > 1 ? -r : r;
}

inline std::string bits(const std::vector<SquareReport>& r) {
    std::string s;
    for (auto& x : r) s += x.pullback ? '1' : '0';
    return s;
}

}  // namespace decomp::testing
