// Block spaces: binomial, graphs, forests and flags of F_q-vector spaces.

#include "decomp/error.hpp"
#include "decomp/gallery.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace decomp {

struct BlockSpaceDetail {
    BlockModel M;
    int N = 0, K = 0;
    struct Obj {
        std::vector<int> blocks;
        Label s;
        int n;
    };
    std::vector<std::vector<Obj>> objs;
    std::vector<std::unordered_map<Label, int, LabelHash>> index;
    std::vector<LabeledGroupoid> L;

    static Label key(const std::vector<int>& blocks, const Label& s) {
        Label k = blocks;
        k.push_back(-1);
        k.insert(k.end(), s.begin(), s.end());
        return k;
    }
    int find(int level, const std::vector<int>& blocks, const Label& s) const {
        auto it = index[level].find(key(blocks, s));
        if (it == index[level].end()) throw DecompError(ErrorKind::InvalidGroupoid, "structure missing from level " + std::to_string(level));
        return it->second;
    }
};

namespace {

void compositions(int k, int N, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    int used = std::accumulate(cur.begin(), cur.end(), 0);
    for (int b = 0; used + b <= N; ++b) {
        cur.push_back(b);
        compositions(k, N, cur, out);
        cur.pop_back();
    }
}

using Face = std::function<void(const std::vector<int>&, std::vector<int>&, int&, int&)>;

}  // namespace

BlockSpace block_space(const BlockModel& M, int N, int K) {
    if (K < 1) throw DecompError(ErrorKind::TruncationTooShallow, "K >= 1 required");
    auto D = std::make_shared<BlockSpaceDetail>();
    D->M = M;
    D->N = N;
    D->K = K;
    D->objs.resize(K + 1);
    D->index.resize(K + 1);
    for (int k = 0; k <= K; ++k) {
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(k, k == 0 ? 0 : N, cur, comps);
        for (const auto& b : comps) {
            int n = std::accumulate(b.begin(), b.end(), 0);
            for (auto& s : M.structures(b)) {
                D->index[k][BlockSpaceDetail::key(b, s)] = static_cast<int>(D->objs[k].size());
                D->objs[k].push_back({b, std::move(s), n});
            }
        }
    }
    const BlockSpaceDetail* P = D.get();
    for (int k = 0; k <= K; ++k) {
        std::vector<std::string> names;
        for (const auto& o : D->objs[k]) {
            std::string nm = "[";
            for (size_t i = 0; i < o.blocks.size(); ++i) nm += (i ? "," : "") + std::to_string(o.blocks[i]);
            nm += "]";
            std::string sh = M.show ? M.show(o.s) : "";
            if (!sh.empty()) nm += " " + sh;
            names.push_back(nm);
        }
        LabelOps ops;
        ops.compose = M.compose;
        ops.inverse = M.inverse;
        ops.identity = [P, k](int x) { return P->M.identity(P->objs[k][x].n); };
        auto out = [P, k](int x) {
            const auto& o = P->objs[k][x];
            std::vector<std::pair<Label, int>> res;
            for (auto& g : P->M.symmetries(o.blocks)) {
                int y = P->find(k, o.blocks, P->M.act(g, o.s));
                res.emplace_back(std::move(g), y);
            }
            return res;
        };
        D->L.push_back(build_labeled(std::move(names), out, ops));
    }

    // face (k, i) or degeneracy, as a range to keep and a block rewrite
    auto make = [P](int from, int to, const std::function<std::vector<int>(const std::vector<int>&)>& blocks,
                    const std::function<std::pair<int, int>(const BlockSpaceDetail::Obj&)>& range) {
        const auto& objs = P->objs[from];
        std::vector<int> obj(objs.size());
        for (size_t x = 0; x < objs.size(); ++x) {
            const auto& o = objs[x];
            auto [lo, hi] = range(o);
            Label s = (lo == 0 && hi == o.n) ? o.s : P->M.restrict_structure(o.s, o.n, lo, hi);
            obj[x] = P->find(to, blocks(o.blocks), s);
        }
        return labeled_functor(P->L[from], P->L[to], obj, [&](int b, const Label& g) {
            const auto& o = objs[b];
            auto [lo, hi] = range(o);
            if (lo == 0 && hi == o.n) return g;
            return P->M.restrict_symmetry(g, o.n, lo, hi);
        });
    };

    BlockSpace B;
    TSG& X = B.tsg;
    X.K = K;
    for (int k = 0; k <= K; ++k) X.X.push_back(D->L[k].g);
    X.d.resize(K + 1);
    for (int k = 1; k <= K; ++k)
        for (int i = 0; i <= k; ++i) {
            std::function<std::vector<int>(const std::vector<int>&)> bl;
            std::function<std::pair<int, int>(const BlockSpaceDetail::Obj&)> rg;
            if (i == 0) {
                bl = [](const std::vector<int>& b) { return std::vector<int>(b.begin() + 1, b.end()); };
                rg = [](const BlockSpaceDetail::Obj& o) { return std::make_pair(o.blocks.front(), o.n); };
            } else if (i == k) {
                bl = [](const std::vector<int>& b) { return std::vector<int>(b.begin(), b.end() - 1); };
                rg = [](const BlockSpaceDetail::Obj& o) { return std::make_pair(0, o.n - o.blocks.back()); };
            } else {
                bl = [i](const std::vector<int>& b) {
                    std::vector<int> r = b;
                    r[i - 1] += r[i];
                    r.erase(r.begin() + i);
                    return r;
                };
                rg = [](const BlockSpaceDetail::Obj& o) { return std::make_pair(0, o.n); };
            }
            X.d[k].push_back(make(k, k - 1, bl, rg));
        }
    X.s.resize(K);
    for (int k = 0; k < K; ++k)
        for (int i = 0; i <= k; ++i) {
            auto bl = [i](const std::vector<int>& b) {
                std::vector<int> r = b;
                r.insert(r.begin() + i, 0);
                return r;
            };
            auto rg = [](const BlockSpaceDetail::Obj& o) { return std::make_pair(0, o.n); };
            X.s[k].push_back(make(k, k + 1, bl, rg));
        }
    const auto& X1 = *X.X[1];
    for (int c = 0; c < X1.num_components(); ++c) {
        const auto& o = D->objs[1][X1.base(c)];
        X.class_ids.push_back(M.class_id(o.s, o.n));
        X.sizes.push_back(o.n);
    }
    X.size_bound = N;
    for (int k = 0; k <= K; ++k) {
        std::vector<int> sz;
        for (int c = 0; c < X.X[k]->num_components(); ++c) sz.push_back(D->objs[k][X.X[k]->base(c)].n);
        X.level_sizes.push_back(std::move(sz));
    }
    B.detail = D;
    return B;
}

SimplicialMap block_space_map(const BlockSpace& Y, const BlockSpace& X,
                              const std::function<Label(const Label&)>& forget) {
    const auto& DY = *Y.detail;
    const auto& DX = *X.detail;
    if (DY.K != DX.K) throw DecompError(ErrorKind::TypeMismatch, "truncation levels differ");
    SimplicialMap F;
    F.dom = &Y.tsg;
    F.cod = &X.tsg;
    for (int k = 0; k <= DY.K; ++k) {
        std::vector<int> obj(DY.objs[k].size());
        for (size_t x = 0; x < obj.size(); ++x) obj[x] = DX.find(k, DY.objs[k][x].blocks, forget(DY.objs[k][x].s));
        F.f.push_back(labeled_functor(DY.L[k], DX.L[k], obj, [](int, const Label& g) { return g; }));
    }
    return F;
}

// --- permutation models ------------------------------------------------------

namespace {

std::vector<Label> block_permutations(const std::vector<int>& blocks) {
    std::vector<Label> out{Label{}};
    int off = 0;
    for (int b : blocks) {
        std::vector<int> p(b);
        std::iota(p.begin(), p.end(), off);
        std::vector<Label> next;
        do {
            for (const auto& pre : out) {
                Label l = pre;
                l.insert(l.end(), p.begin(), p.end());
                next.push_back(std::move(l));
            }
        } while (std::next_permutation(p.begin(), p.end()));
        out = std::move(next);
        off += b;
    }
    return out;
}

void permutation_ops(BlockModel& M) {
    M.symmetries = block_permutations;
    M.compose = [](const Label& b, const Label& a) {
        Label r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
        return r;
    };
    M.inverse = [](const Label& a) {
        Label r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
        return r;
    };
    M.identity = [](int n) {
        Label r(n);
        std::iota(r.begin(), r.end(), 0);
        return r;
    };
    M.restrict_symmetry = [](const Label& g, int, int lo, int hi) {
        Label r(hi - lo);
        for (int i = lo; i < hi; ++i) r[i - lo] = g[i] - lo;
        return r;
    };
}

std::vector<int> colour_of(const std::vector<int>& blocks) {
    std::vector<int> c;
    for (size_t j = 0; j < blocks.size(); ++j) c.insert(c.end(), blocks[j], static_cast<int>(j));
    return c;
}

// graphs: sorted flat edge list u0,v0,u1,v1,... with u < v
Label graph_act(const Label& g, const Label& s) {
    std::vector<std::pair<int, int>> e;
    for (size_t i = 0; i < s.size(); i += 2) {
        int u = g[s[i]], v = g[s[i + 1]];
        e.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(e.begin(), e.end());
    Label r;
    for (auto [u, v] : e) { r.push_back(u); r.push_back(v); }
    return r;
}

std::string edges_str(const Label& s) {
    std::string r;
    for (size_t i = 0; i < s.size(); i += 2)
        r += (i ? "," : "") + std::to_string(s[i]) + std::to_string(s[i + 1]);
    return r;
}

}  // namespace

std::string graph_id(int n, const Label& adj) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Label best;
    bool first = true;
    do {
        Label t = graph_act(p, adj);
        if (first || t < best) { best = t; first = false; }
    } while (std::next_permutation(p.begin(), p.end()));
    return "g" + std::to_string(n) + ":" + edges_str(best);
}

BlockModel binomial_model() {
    BlockModel M;
    permutation_ops(M);
    M.structures = [](const std::vector<int>&) { return std::vector<Label>{Label{}}; };
    M.act = [](const Label&, const Label& s) { return s; };
    M.restrict_structure = [](const Label& s, int, int, int) { return s; };
    M.class_id = [](const Label&, int n) { return std::to_string(n); };
    return M;
}

BlockModel graphs_model() {
    BlockModel M;
    permutation_ops(M);
    M.structures = [](const std::vector<int>& blocks) {
        int n = std::accumulate(blocks.begin(), blocks.end(), 0);
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        std::vector<Label> out;
        for (long mask = 0; mask < (1L << pairs.size()); ++mask) {
            Label s;
            for (size_t i = 0; i < pairs.size(); ++i)
                if (mask >> i & 1) { s.push_back(pairs[i].first); s.push_back(pairs[i].second); }
            out.push_back(std::move(s));
        }
        return out;
    };
    M.act = graph_act;
    M.restrict_structure = [](const Label& s, int, int lo, int hi) {
        Label r;
        for (size_t i = 0; i < s.size(); i += 2)
            if (s[i] >= lo && s[i + 1] < hi) { r.push_back(s[i] - lo); r.push_back(s[i + 1] - lo); }
        return r;
    };
    M.class_id = [](const Label& s, int n) { return graph_id(n, s); };
    M.show = edges_str;
    return M;
}

// --- forests ---------------------------------------------------------------

namespace {

std::string tree_code(const Label& parent, int v) {
    std::vector<std::string> ch;
    for (size_t w = 0; w < parent.size(); ++w)
        if (parent[w] == v) ch.push_back(tree_code(parent, static_cast<int>(w)));
    std::sort(ch.begin(), ch.end());
    std::string r = "(";
    for (auto& c : ch) r += c;
    return r + ")";
}

bool acyclic(const Label& parent) {
    int n = static_cast<int>(parent.size());
    for (int v = 0; v < n; ++v) {
        int x = v;
        for (int steps = 0; x >= 0; ++steps) {
            if (steps > n) return false;
            x = parent[x];
        }
    }
    return true;
}

}  // namespace

std::string forest_id(const Label& parent) {
    std::vector<std::string> trees;
    for (size_t v = 0; v < parent.size(); ++v)
        if (parent[v] < 0) trees.push_back(tree_code(parent, static_cast<int>(v)));
    if (trees.empty()) return "empty";
    std::sort(trees.begin(), trees.end());
    std::string r;
    for (auto& t : trees) r += t;
    return r;
}

BlockModel forests_model() {
    BlockModel M;
    permutation_ops(M);
    // parent[v] = -1 for roots; a node's block never precedes its parent's
    M.structures = [](const std::vector<int>& blocks) {
        auto col = colour_of(blocks);
        int n = static_cast<int>(col.size());
        std::vector<Label> out;
        Label p(n, -1);
        std::function<void(int)> rec = [&](int v) {
            if (v == n) {
                if (acyclic(p)) out.push_back(p);
                return;
            }
            p[v] = -1;
            rec(v + 1);
            for (int u = 0; u < n; ++u)
                if (u != v && col[u] <= col[v]) { p[v] = u; rec(v + 1); }
            p[v] = -1;
        };
        rec(0);
        return out;
    };
    M.act = [](const Label& g, const Label& s) {
        Label r(s.size());
        for (size_t v = 0; v < s.size(); ++v) r[g[v]] = s[v] < 0 ? -1 : g[s[v]];
        return r;
    };
    M.restrict_structure = [](const Label& s, int, int lo, int hi) {
        Label r(hi - lo);
        for (int v = lo; v < hi; ++v) r[v - lo] = (s[v] >= lo && s[v] < hi) ? s[v] - lo : -1;
        return r;
    };
    M.class_id = [](const Label& s, int) { return forest_id(s); };
    M.show = [](const Label& s) {
        std::string r;
        for (size_t v = 0; v < s.size(); ++v) r += (v ? "," : "") + (s[v] < 0 ? std::string("r") : std::to_string(s[v]));
        return r;
    };
    return M;
}

// --- flags over F_q -----------------------------------------------------------

namespace {

int isqrt(size_t n) {
    int r = 0;
    while (static_cast<size_t>((r + 1) * (r + 1)) <= n) ++r;
    return r;
}

Label mat_mul(const Label& A, const Label& B, int q) {
    int n = isqrt(A.size());
    Label C(A.size(), 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            int a = A[i * n + k];
            if (!a) continue;
            for (int j = 0; j < n; ++j) C[i * n + j] = (C[i * n + j] + a * B[k * n + j]) % q;
        }
    return C;
}

int inv_mod(int a, int q) {
    for (int x = 1; x < q; ++x)
        if (a * x % q == 1) return x;
    throw DecompError(ErrorKind::UnsupportedField, "non-invertible scalar");
}

// Gauss-Jordan; empty result when singular
Label mat_inv(const Label& A, int q) {
    int n = isqrt(A.size());
    Label M = A, I(A.size(), 0);
    for (int i = 0; i < n; ++i) I[i * n + i] = 1;
    for (int c = 0; c < n; ++c) {
        int r = c;
        while (r < n && M[r * n + c] == 0) ++r;
        if (r == n) return {};
        for (int j = 0; j < n; ++j) {
            std::swap(M[r * n + j], M[c * n + j]);
            std::swap(I[r * n + j], I[c * n + j]);
        }
        int s = inv_mod(M[c * n + c], q);
        for (int j = 0; j < n; ++j) {
            M[c * n + j] = M[c * n + j] * s % q;
            I[c * n + j] = I[c * n + j] * s % q;
        }
        for (int r2 = 0; r2 < n; ++r2) {
            if (r2 == c || M[r2 * n + c] == 0) continue;
            int f = M[r2 * n + c];
            for (int j = 0; j < n; ++j) {
                M[r2 * n + j] = ((M[r2 * n + j] - f * M[c * n + j]) % q + q) % q;
                I[r2 * n + j] = ((I[r2 * n + j] - f * I[c * n + j]) % q + q) % q;
            }
        }
    }
    return I;
}

const std::vector<Label>& general_linear(int q, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Label>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({q, n});
    if (it != cache.end()) return it->second;
    std::vector<Label> out;
    Label m(n * n, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n * n) {
            if (!mat_inv(m, q).empty() || n == 0) out.push_back(m);
            return;
        }
        for (int v = 0; v < q; ++v) { m[i] = v; rec(i + 1); }
    };
    rec(0);
    return cache[{q, n}] = std::move(out);
}

}  // namespace

BlockModel qvect_model(int q) {
    if (q != 2 && q != 3) throw DecompError(ErrorKind::UnsupportedField, "q = " + std::to_string(q));
    BlockModel M;
    M.structures = [](const std::vector<int>&) { return std::vector<Label>{Label{}}; };
    // matrices preserving the standard flag: block upper triangular
    M.symmetries = [q](const std::vector<int>& blocks) {
        auto col = colour_of(blocks);
        int n = static_cast<int>(col.size());
        std::vector<Label> out;
        for (const auto& g : general_linear(q, n)) {
            bool ok = true;
            for (int r = 0; r < n && ok; ++r)
                for (int c = 0; c < n && ok; ++c)
                    if (col[r] > col[c] && g[r * n + c]) ok = false;
            if (ok) out.push_back(g);
        }
        return out;
    };
    M.act = [](const Label&, const Label& s) { return s; };
    M.restrict_structure = [](const Label& s, int, int, int) { return s; };
    M.restrict_symmetry = [](const Label& g, int n, int lo, int hi) {
        int m = hi - lo;
        Label r(m * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) r[i * m + j] = g[(i + lo) * n + j + lo];
        return r;
    };
    M.compose = [q](const Label& b, const Label& a) { return mat_mul(b, a, q); };
    M.inverse = [q](const Label& a) { return a.empty() ? a : mat_inv(a, q); };
    M.identity = [](int n) {
        Label r(n * n, 0);
        for (int i = 0; i < n; ++i) r[i * n + i] = 1;
        return r;
    };
    M.class_id = [](const Label&, int n) { return std::to_string(n); };
    return M;
}

BlockSpace binomial_space(int N, int K) {
    if (N < 1) throw DecompError(ErrorKind::IndexError, "binomial space needs N >= 1");
    return block_space(binomial_model(), N, K);
}

BlockSpace graphs_space(int N, int K) {
    if (N < 0 || N > 6) throw DecompError(ErrorKind::IndexError, "graphs space supports N <= 6");
    return block_space(graphs_model(), N, K);
}

BlockSpace forests_space(int N, int K) {
    if (N < 0 || N > 6) throw DecompError(ErrorKind::IndexError, "forests space supports N <= 6");
    return block_space(forests_model(), N, K);
}

BlockSpace qvect_space(int q, int N, int K) {
    auto M = qvect_model(q);
    int limit = q == 2 ? 3 : 2;
    if (N < 0 || N > limit)
        throw DecompError(ErrorKind::UnsupportedField, "explicit flag model for q=" + std::to_string(q) +
                                                           " is limited to N <= " + std::to_string(limit));
    return block_space(M, N, K);
}

SimplicialMap graphs_to_binomial(const BlockSpace& graphs, const BlockSpace& binomial) {
    return block_space_map(graphs, binomial, [](const Label&) { return Label{}; });
}

}  // namespace decomp
