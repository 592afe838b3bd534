// Closed-form counting oracles, and monoidal data for the explicit models.

#include "decomp/error.hpp"
#include "decomp/gallery.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace decomp {

IncidenceOracle nat_plus_oracle(int bound) {
    if (bound < 0) throw DecompError(ErrorKind::IndexError, "bound >= 0");
    IncidenceOracle O;
    for (int n = 0; n <= bound; ++n) {
        ArrowClass c;
        c.id = std::to_string(n);
        c.degenerate = n == 0;
        c.size = n;
        O.add_class(c);
    }
    for (int n = 0; n <= bound; ++n)
        for (int a = 0; a <= n; ++a) O.add_two_fiber(n, a, n - a, 1);
    // no monoidal data: addition is not compatible with this coproduct
    // (Delta(x+y) has x+y+1 terms, Delta(x)Delta(y) has (x+1)(y+1))
    O.finalize();
    return O;
}

IncidenceOracle divisibility_oracle(int bound) {
    if (bound < 1) throw DecompError(ErrorKind::IndexError, "bound >= 1");
    IncidenceOracle O;
    for (int n = 1; n <= bound; ++n) {
        ArrowClass c;
        c.id = std::to_string(n);
        c.degenerate = n == 1;
        int omega = 0;  // prime factors with multiplicity
        for (int m = n, p = 2; m > 1; ++p)
            while (m % p == 0) { m /= p; ++omega; }
        c.size = omega;
        O.add_class(c);
    }
    for (int n = 1; n <= bound; ++n)
        for (int a = 1; a <= n; ++a)
            if (n % a == 0) O.add_two_fiber(n - 1, a - 1, n / a - 1, 1);
    O.finalize();
    return O;
}

IncidenceOracle binomial_oracle(int N) {
    IncidenceOracle O;
    for (int n = 0; n <= N; ++n) {
        ArrowClass c;
        c.id = std::to_string(n);
        c.weight = Rational(1) / factorial(n);
        c.degenerate = n == 0;
        c.size = n;
        O.add_class(c);
    }
    // |Aut f| |Aut a| |Aut b| / |Aut sigma| = n! a! b! / (a! b!)
    for (int n = 0; n <= N; ++n)
        for (int a = 0; a <= n; ++a) O.add_two_fiber(n, a, n - a, factorial(n));
    Monoidal m;
    m.unit = 0;
    for (int a = 0; a <= N; ++a)
        for (int b = 0; a + b <= N; ++b) m.product[{a, b}] = a + b;
    O.monoidal = m;
    O.finalize();
    return O;
}

long gl_order(int q, int n) {
    long r = 1, qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    for (long qi = 1, i = 0; i < n; ++i, qi *= q) r *= qn - qi;
    return r;
}

long count_subspaces(int q, int n, int k) {
    if (k < 0 || k > n) return 0;
    // walk every choice of pivot columns and every filling of the free
    // entries; each reduced row-echelon matrix is one subspace
    long count = 0;
    std::vector<int> piv(k);
    std::function<void(int, int)> choose = [&](int i, int from) {
        if (i == k) {
            std::vector<int> M(static_cast<size_t>(k) * n, 0);
            std::vector<std::pair<int, int>> free;
            std::vector<bool> is_piv(n, false);
            for (int r = 0; r < k; ++r) { M[r * n + piv[r]] = 1; is_piv[piv[r]] = true; }
            for (int r = 0; r < k; ++r)
                for (int c = piv[r] + 1; c < n; ++c)
                    if (!is_piv[c]) free.emplace_back(r, c);
            std::function<void(size_t)> fill = [&](size_t j) {
                if (j == free.size()) {
                    ++count;
                    return;
                }
                for (int v = 0; v < q; ++v) {
                    M[free[j].first * n + free[j].second] = v;
                    fill(j + 1);
                }
            };
            fill(0);
            return;
        }
        for (int c = from; c < n; ++c) { piv[i] = c; choose(i + 1, c + 1); }
    };
    choose(0, 0);
    return count;
}

IncidenceOracle qvect_oracle(int q, int N) {
    if (q != 2 && q != 3) throw DecompError(ErrorKind::UnsupportedField, "q = " + std::to_string(q));
    if (N < 0 || N > 6) throw DecompError(ErrorKind::IndexError, "qvect oracle supports N <= 6");
    IncidenceOracle O;
    std::vector<Rational> gl;
    for (int n = 0; n <= N; ++n) {
        gl.push_back(Rational(gl_order(q, n)));
        ArrowClass c;
        c.id = std::to_string(n);
        c.weight = Rational(1) / gl[n];
        c.degenerate = n == 0;
        c.size = n;
        O.add_class(c);
    }
    // a point of the fibre over (V, A, B) is a mono A -> V together with an
    // identification of its cokernel with B: #subspaces * |GL(A)| * |GL(B)|
    for (int n = 0; n <= N; ++n)
        for (int k = 0; k <= n; ++k)
            O.add_two_fiber(n, k, n - k, Rational(count_subspaces(q, n, k)) * gl[k] * gl[n - k]);
    // no monoidal data: direct sum is not compatible (F^2 has q+3 subspaces, not 4)
    O.finalize();
    return O;
}

// --- graphs --------------------------------------------------------------

namespace {

struct Graph {
    int n;
    Label edges;  // flat, u < v
};

Graph parse_graph(const std::string& id) {
    Graph g;
    auto colon = id.find(':');
    g.n = std::stoi(id.substr(1, colon - 1));
    std::string rest = id.substr(colon + 1);
    for (size_t i = 0; i + 1 < rest.size(); i += 3) {
        g.edges.push_back(rest[i] - '0');
        g.edges.push_back(rest[i + 1] - '0');
    }
    return g;
}

std::string graph_union(const std::string& a, const std::string& b) {
    auto ga = parse_graph(a), gb = parse_graph(b);
    Label e = ga.edges;
    for (int x : gb.edges) e.push_back(x + ga.n);
    return graph_id(ga.n + gb.n, e);
}

Label induced(const Graph& g, const std::vector<int>& keep) {
    std::vector<int> pos(g.n, -1);
    for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
    Label r;
    for (size_t i = 0; i < g.edges.size(); i += 2) {
        int u = pos[g.edges[i]], v = pos[g.edges[i + 1]];
        if (u >= 0 && v >= 0) { r.push_back(std::min(u, v)); r.push_back(std::max(u, v)); }
    }
    return r;
}

long graph_aut(const Graph& g) {
    std::vector<int> p(g.n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::pair<int, int>> e0;
    for (size_t i = 0; i < g.edges.size(); i += 2) e0.emplace_back(g.edges[i], g.edges[i + 1]);
    std::sort(e0.begin(), e0.end());
    long count = 0;
    do {
        std::vector<std::pair<int, int>> e;
        for (auto [u, v] : e0) e.emplace_back(std::min(p[u], p[v]), std::max(p[u], p[v]));
        std::sort(e.begin(), e.end());
        if (e == e0) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

void attach_union(IncidenceOracle& O, const std::string& unit, int N,
                  const std::function<std::string(const std::string&, const std::string&)>& join) {
    Monoidal m;
    m.unit = O.find(unit);
    for (int a = 0; a < O.size(); ++a)
        for (int b = 0; b < O.size(); ++b) {
            if (*O.classes[a].size + *O.classes[b].size > N) continue;
            m.product[{a, b}] = O.find(join(O.classes[a].id, O.classes[b].id));
        }
    O.monoidal = m;
}

}  // namespace

IncidenceOracle graphs_oracle(int N) {
    if (N < 0 || N > 6) throw DecompError(ErrorKind::IndexError, "graphs oracle supports N <= 6");
    IncidenceOracle O;
    std::vector<Graph> reps;
    for (int n = 0; n <= N; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        for (long mask = 0; mask < (1L << pairs.size()); ++mask) {
            Label e;
            for (size_t i = 0; i < pairs.size(); ++i)
                if (mask >> i & 1) { e.push_back(pairs[i].first); e.push_back(pairs[i].second); }
            auto id = graph_id(n, e);
            if (O.has(id)) continue;
            Graph g = parse_graph(id);
            ArrowClass c;
            c.id = id;
            c.weight = Rational(1, graph_aut(g));
            c.degenerate = n == 0;
            c.size = n;
            O.add_class(c);
            reps.push_back(g);
        }
    }
    std::vector<long> aut(O.size());
    for (int i = 0; i < O.size(); ++i) aut[i] = graph_aut(reps[i]);
    // c^G_{a,b} = #{ordered splittings V = A + B with G|A ~ a, G|B ~ b}
    for (int f = 0; f < O.size(); ++f) {
        const auto& g = reps[f];
        for (long mask = 0; mask < (1L << g.n); ++mask) {
            std::vector<int> A, B;
            for (int v = 0; v < g.n; ++v) (mask >> v & 1 ? A : B).push_back(v);
            int a = O.find(graph_id(static_cast<int>(A.size()), induced(g, A)));
            int b = O.find(graph_id(static_cast<int>(B.size()), induced(g, B)));
            O.add_two_fiber(f, a, b, Rational(aut[a] * aut[b]));
        }
    }
    attach_union(O, "g0:", N, graph_union);
    O.finalize();
    return O;
}

// --- oracles from the explicit models ----------------------------------------

IncidenceOracle binomial_space_oracle(int N, int K) {
    auto B = binomial_space(N, K);
    auto O = to_oracle(B.tsg);
    attach_union(O, "0", N, [](const std::string& a, const std::string& b) {
        return std::to_string(std::stoi(a) + std::stoi(b));
    });
    return O;
}

IncidenceOracle graphs_space_oracle(int N, int K) {
    auto G = graphs_space(N, K);
    auto O = to_oracle(G.tsg);
    attach_union(O, "g0:", N, graph_union);
    return O;
}

namespace {

std::vector<std::string> split_trees(const std::string& id) {
    std::vector<std::string> t;
    if (id == "empty") return t;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < id.size(); ++i) {
        depth += id[i] == '(' ? 1 : -1;
        if (depth == 0) {
            t.push_back(id.substr(start, i + 1 - start));
            start = i + 1;
        }
    }
    return t;
}

}  // namespace

IncidenceOracle forests_space_oracle(int N, int K) {
    auto F = forests_space(N, K);
    auto O = to_oracle(F.tsg);
    attach_union(O, "empty", N, [](const std::string& a, const std::string& b) {
        auto t = split_trees(a);
        auto u = split_trees(b);
        t.insert(t.end(), u.begin(), u.end());
        if (t.empty()) return std::string("empty");
        std::sort(t.begin(), t.end());
        std::string r;
        for (auto& x : t) r += x;
        return r;
    });
    return O;
}

namespace {

// "n->k:f1+f2+..." ; the product adds sources, targets and fibre multisets
std::string surjection_union(const std::string& a, const std::string& b) {
    auto parse = [](const std::string& s, int& n, int& k, std::vector<int>& fib) {
        auto arrow = s.find("->");
        auto colon = s.find(':');
        n = std::stoi(s.substr(0, arrow));
        k = std::stoi(s.substr(arrow + 2, colon - arrow - 2));
        std::string rest = s.substr(colon + 1);
        size_t p = 0;
        while (p < rest.size()) {
            auto q = rest.find('+', p);
            if (q == std::string::npos) q = rest.size();
            fib.push_back(std::stoi(rest.substr(p, q - p)));
            p = q + 1;
        }
    };
    int n1, k1, n2, k2;
    std::vector<int> f;
    parse(a, n1, k1, f);
    parse(b, n2, k2, f);
    std::sort(f.begin(), f.end());
    std::string s = std::to_string(n1 + n2) + "->" + std::to_string(k1 + k2) + ":";
    for (size_t i = 0; i < f.size(); ++i) s += (i ? "+" : "") + std::to_string(f[i]);
    return s;
}

}  // namespace

IncidenceOracle surjections_oracle(int N, int K) {
    auto S = surjections_space(N, K);
    auto O = to_oracle(S.tsg);
    // the product is defined when the sources fit in the bound; sizes are n - k
    Monoidal m;
    m.unit = O.find("0->0:");
    auto src = [&](int c) { return std::stoi(O.classes[c].id.substr(0, O.classes[c].id.find("->"))); };
    for (int a = 0; a < O.size(); ++a)
        for (int b = 0; b < O.size(); ++b)
            if (src(a) + src(b) <= N) m.product[{a, b}] = O.find(surjection_union(O.classes[a].id, O.classes[b].id));
    O.monoidal = m;
    return O;
}

}  // namespace decomp
