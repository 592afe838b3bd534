#include "decomp/simplicial.hpp"
#include "decomp/error.hpp"
#include "decomp/incidence.hpp"

#include <algorithm>

namespace decomp {

const GroupoidFunctor& TSG::face(int n, int i) const {
    if (n < 1 || n > K || i < 0 || i > n)
        throw DecompError(ErrorKind::IndexError, "face d_" + std::to_string(i) + "^" + std::to_string(n));
    return d[n][i];
}

const GroupoidFunctor& TSG::degen(int n, int i) const {
    if (n < 0 || n > K - 1 || i < 0 || i > n)
        throw DecompError(ErrorKind::IndexError, "degeneracy s_" + std::to_string(i) + "^" + std::to_string(n));
    return s[n][i];
}

std::string TSG::class_id(int c) const {
    if (c < static_cast<int>(class_ids.size())) return class_ids[c];
    return X[1]->names[X[1]->base(c)];
}

std::optional<int> TSG::size(int c) const {
    if (c < static_cast<int>(sizes.size())) return sizes[c];
    return std::nullopt;
}

bool all_pass(const std::vector<SquareReport>& r) {
    return std::all_of(r.begin(), r.end(), [](const SquareReport& s) { return s.pullback; });
}

namespace {

std::string nm(const char* k, int i, int n) {
    return std::string(k) + "_" + std::to_string(i) + "^" + std::to_string(n);
}

void expect_equal(std::vector<Diagnostic>& out, const GroupoidFunctor& a, const GroupoidFunctor& b,
                  const std::string& what) {
    if (!(a == b)) out.push_back({"Identity", {what}});
}

SquareReport run(const std::string& name, const CommutingSquare& sq) {
    SquareReport r;
    r.name = name;
    try {
        r.reason = pullback_failure(sq);
        r.pullback = r.reason.empty();
    } catch (const DecompError& e) {
        r.pullback = false;
        r.reason = e.what();
    }
    return r;
}

}  // namespace

std::vector<Diagnostic> validate_tsg(const TSG& X) {
    std::vector<Diagnostic> out;
    if (X.K < 1 || static_cast<int>(X.X.size()) != X.K + 1 || static_cast<int>(X.d.size()) != X.K + 1 ||
        static_cast<int>(X.s.size()) < X.K) {
        out.push_back({"Shape", {}});
        return out;
    }
    for (int n = 1; n <= X.K; ++n) {
        if (static_cast<int>(X.d[n].size()) != n + 1) { out.push_back({"Shape", {"d^" + std::to_string(n)}}); return out; }
        for (int i = 0; i <= n; ++i) {
            const auto& f = X.d[n][i];
            if (f.dom != X.X[n] || f.cod != X.X[n - 1]) out.push_back({"Typing", {nm("d", i, n)}});
            for (auto& dg : validate(f)) out.push_back({"Functor", {nm("d", i, n), dg.kind}});
        }
    }
    for (int n = 0; n < X.K; ++n) {
        if (static_cast<int>(X.s[n].size()) != n + 1) { out.push_back({"Shape", {"s^" + std::to_string(n)}}); return out; }
        for (int i = 0; i <= n; ++i) {
            const auto& f = X.s[n][i];
            if (f.dom != X.X[n] || f.cod != X.X[n + 1]) out.push_back({"Typing", {nm("s", i, n)}});
            for (auto& dg : validate(f)) out.push_back({"Functor", {nm("s", i, n), dg.kind}});
        }
    }
    if (!out.empty()) return out;
    // d_i d_j = d_{j-1} d_i  (i < j) on X_n
    for (int n = 2; n <= X.K; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                expect_equal(out, compose(X.d[n - 1][i], X.d[n][j]), compose(X.d[n - 1][j - 1], X.d[n][i]),
                             "d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" + std::to_string(j - 1) +
                                 " d_" + std::to_string(i) + " at n=" + std::to_string(n));
    // s_i s_j = s_{j+1} s_i  (i <= j) on X_n
    for (int n = 0; n + 2 <= X.K; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                expect_equal(out, compose(X.s[n + 1][i], X.s[n][j]), compose(X.s[n + 1][j + 1], X.s[n][i]),
                             "s_" + std::to_string(i) + " s_" + std::to_string(j) + " != s_" + std::to_string(j + 1) +
                                 " s_" + std::to_string(i) + " at n=" + std::to_string(n));
    // mixed: d_i s_j on X_n, n+1 <= K
    for (int n = 0; n + 1 <= X.K; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                auto lhs = compose(X.d[n + 1][i], X.s[n][j]);
                std::string tag = "d_" + std::to_string(i) + " s_" + std::to_string(j) + " at n=" + std::to_string(n);
                if (i == j || i == j + 1) {
                    expect_equal(out, lhs, identity_functor(X.X[n]), tag + " != id");
                } else if (i < j) {
                    // d_i s_j = s_{j-1} d_i,  needs n >= 1
                    expect_equal(out, lhs, compose(X.s[n - 1][j - 1], X.d[n][i]), tag + " != s_{j-1} d_i");
                } else {
                    // i > j+1: d_i s_j = s_j d_{i-1}
                    expect_equal(out, lhs, compose(X.s[n - 1][j], X.d[n][i - 1]), tag + " != s_j d_{i-1}");
                }
            }
    return out;
}

std::vector<Diagnostic> validate_map(const SimplicialMap& F) {
    std::vector<Diagnostic> out;
    const TSG &Y = *F.dom, &X = *F.cod;
    if (Y.K != X.K || static_cast<int>(F.f.size()) != X.K + 1) {
        out.push_back({"Shape", {}});
        return out;
    }
    for (int n = 0; n <= X.K; ++n) {
        if (F.f[n].dom != Y.X[n] || F.f[n].cod != X.X[n]) out.push_back({"Typing", {"f_" + std::to_string(n)}});
        for (auto& dg : validate(F.f[n])) out.push_back({"Functor", {"f_" + std::to_string(n), dg.kind}});
    }
    if (!out.empty()) return out;
    for (int n = 1; n <= X.K; ++n)
        for (int i = 0; i <= n; ++i)
            expect_equal(out, compose(F.f[n - 1], Y.d[n][i]), compose(X.d[n][i], F.f[n]), "f d_" + std::to_string(i) + " at n=" + std::to_string(n));
    for (int n = 0; n < X.K; ++n)
        for (int i = 0; i <= n; ++i)
            expect_equal(out, compose(F.f[n + 1], Y.s[n][i]), compose(X.s[n][i], F.f[n]), "f s_" + std::to_string(i) + " at n=" + std::to_string(n));
    return out;
}

CommutingSquare segal_square(const TSG& X, int n) {
    CommutingSquare sq{X.face(n + 1, n + 1), X.face(n + 1, 0), X.face(n, 0), X.face(n, n), {}};
    if (X.size_bound && static_cast<int>(X.level_sizes.size()) > n) {
        // a and b overlap in the common face; sizes add along the gluing
        auto sn = X.level_sizes[n];
        auto sm = X.level_sizes[n - 1];
        GroupoidPtr An = X.X[n], Cm = X.X[n - 1];
        std::vector<int> d0 = X.face(n, 0).obj;
        int bound = *X.size_bound;
        sq.within = [sn, sm, An, Cm, d0, bound](int ca, int cb) {
            int common = sm[Cm->comp[d0[An->base(ca)]]];
            return sn[ca] + sn[cb] - common <= bound;
        };
    }
    return sq;
}

std::vector<SquareReport> segal_check(const TSG& X) {
    std::vector<SquareReport> out;
    for (int n = 1; n <= X.K - 1; ++n) out.push_back(run("segal n=" + std::to_string(n), segal_square(X, n)));
    return out;
}

std::vector<SquareReport> decomposition_check(const TSG& X) {
    std::vector<SquareReport> out;
    if (X.K >= 2) {
        out.push_back(run("s1/bottom", {X.face(1, 0), X.degen(1, 1), X.degen(0, 0), X.face(2, 0)}));
        out.push_back(run("s0/top", {X.face(1, 1), X.degen(1, 0), X.degen(0, 0), X.face(2, 2)}));
    }
    for (int n = 2; n <= X.K - 1; ++n)
        for (int i = 1; i < n; ++i) {
            std::string t = "n=" + std::to_string(n) + " i=" + std::to_string(i);
            out.push_back(run(t + " bottom", {X.face(n + 1, 0), X.face(n + 1, i + 1), X.face(n, i), X.face(n, 0)}));
            out.push_back(run(t + " top", {X.face(n + 1, n + 1), X.face(n + 1, i), X.face(n, i), X.face(n, n)}));
        }
    return out;
}

CompletenessReport completeness_report(const TSG& X) {
    CompletenessReport r;
    r.complete = is_fully_faithful(X.degen(0, 0));
    r.all_degeneracies_mono = true;
    for (int n = 0; n < X.K; ++n)
        for (int i = 0; i <= n; ++i)
            if (!is_fully_faithful(X.degen(n, i))) {
                r.all_degeneracies_mono = false;
                r.non_mono.push_back(nm("s", i, n));
            }
    return r;
}

bool completeness_check(const TSG& X) { return is_fully_faithful(X.degen(0, 0)); }

NondegenerateSplit nondegenerate_split(const TSG& X) {
    if (!completeness_check(X)) throw DecompError(ErrorKind::NotComplete, "s_0 : X_0 -> X_1 is not a monomorphism");
    NondegenerateSplit sp;
    auto img = essential_image(X.degen(0, 0));
    const auto& X1 = *X.X[1];
    sp.is_degenerate.resize(X1.num_components());
    for (int c = 0; c < X1.num_components(); ++c) {
        bool dg = img[X1.base(c)];
        sp.is_degenerate[c] = dg;
        (dg ? sp.degenerate : sp.nondegenerate).push_back(c);
    }
    return sp;
}

GroupoidFunctor long_edge(const TSG& X, int n) {
    if (n < 1 || n > X.K) throw DecompError(ErrorKind::IndexError, "long edge at level " + std::to_string(n));
    GroupoidFunctor g = identity_functor(X.X[n]);
    for (int m = n; m >= 2; --m) g = compose(X.d[m][1], g);
    return g;
}

GroupoidFunctor principal_edge(const TSG& X, int n, int k) {
    if (n < 1 || n > X.K || k < 1 || k > n)
        throw DecompError(ErrorKind::IndexError, "principal edge " + std::to_string(k) + " at level " + std::to_string(n));
    GroupoidFunctor g = identity_functor(X.X[n]);
    for (int m = n; m > k; --m) g = compose(X.d[m][m], g);   // drop vertices k+1..n
    for (int m = k; m > 1; --m) g = compose(X.d[m][0], g);   // drop vertices 0..k-2
    return g;
}

namespace {

// objects of X_n whose principal edges satisfy the word constraints
std::vector<int> word_objects(const TSG& X, const std::string& w, const NondegenerateSplit& sp) {
    int n = static_cast<int>(w.size());
    std::vector<GroupoidFunctor> pe;
    for (int k = 1; k <= n; ++k) pe.push_back(principal_edge(X, n, k));
    const auto& X1 = *X.X[1];
    std::vector<int> keep;
    for (int x = 0; x < X.X[n]->num_objects(); ++x) {
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            if (w[k] == '1') continue;
            bool dg = sp.is_degenerate[X1.comp[pe[k].obj[x]]];
            ok = (w[k] == '0') ? dg : !dg;
        }
        if (ok) keep.push_back(x);
    }
    return keep;
}

}  // namespace

Inclusion word_subgroupoid(const TSG& X, const std::string& w) {
    for (char c : w)
        if (c != '0' && c != '1' && c != 'a') throw DecompError(ErrorKind::ParseError, "word letter '" + std::string(1, c) + "'");
    int n = static_cast<int>(w.size());
    if (n > X.K) throw DecompError(ErrorKind::IndexError, "word longer than the truncation");
    auto sp = nondegenerate_split(X);
    if (n == 0) return full_subgroupoid(X.X[0], [&] { std::vector<int> v(X.X[0]->num_objects()); for (int i = 0; i < (int)v.size(); ++i) v[i] = i; return v; }());
    return full_subgroupoid(X.X[n], word_objects(X, w, sp));
}

Fibration effective_fiber(const TSG& X, int f, int r) {
    if (r < 1 || r > X.K) throw DecompError(ErrorKind::IndexError, "effective fibre at r=" + std::to_string(r));
    auto W = word_subgroupoid(X, std::string(r, 'a'));
    auto le = compose(long_edge(X, r), W.incl);
    auto fib = homotopy_fiber(le, X.X[1]->base(f));
    fib.proj = compose(W.incl, fib.proj);
    return fib;
}

Rational effective_fiber_cardinality(const TSG& X, int f, int r) {
    if (r < 1 || r > X.K) throw DecompError(ErrorKind::IndexError, "effective fibre at r=" + std::to_string(r));
    auto W = word_subgroupoid(X, std::string(r, 'a'));
    auto le = compose(long_edge(X, r), W.incl);
    return homotopy_fiber_cardinality(le, X.X[1]->base(f));
}

TSG truncate(const TSG& X, int K) {
    if (K > X.K || K < 1) throw DecompError(ErrorKind::IndexError, "truncation level");
    TSG t = X;
    t.K = K;
    t.X.resize(K + 1);
    t.d.resize(K + 1);
    t.s.resize(K);
    if (!t.level_sizes.empty()) t.level_sizes.resize(K + 1);
    return t;
}

SimplicialMap identity_map(const TSG& X) {
    SimplicialMap m;
    m.dom = m.cod = &X;
    for (int n = 0; n <= X.K; ++n) m.f.push_back(identity_functor(X.X[n]));
    return m;
}

static std::unique_ptr<Decalage> decalage(const TSG& X, bool lower) {
    if (X.K < 3) throw DecompError(ErrorKind::TruncationTooShallow, "decalage needs K >= 3");
    auto D = std::make_unique<Decalage>();
    int K = X.K - 1;
    TSG& Y = D->dec;
    Y.K = K;
    int sh = lower ? 1 : 0;
    for (int n = 0; n <= K; ++n) Y.X.push_back(X.X[n + 1]);
    Y.d.resize(K + 1);
    for (int n = 1; n <= K; ++n)
        for (int i = 0; i <= n; ++i) Y.d[n].push_back(X.d[n + 1][i + sh]);
    Y.s.resize(K);
    for (int n = 0; n < K; ++n)
        for (int i = 0; i <= n; ++i) Y.s[n].push_back(X.s[n + 1][i + sh]);
    Y.size_bound = X.size_bound;
    if (X.level_sizes.size() == static_cast<size_t>(X.K + 1))
        Y.level_sizes.assign(X.level_sizes.begin() + 1, X.level_sizes.end());
    D->base = truncate(X, K);
    D->counit.dom = &D->dec;
    D->counit.cod = &D->base;
    for (int n = 0; n <= K; ++n) D->counit.f.push_back(X.d[n + 1][lower ? 0 : n + 1]);
    return D;
}

std::unique_ptr<Decalage> decalage_lower(const TSG& X) { return decalage(X, true); }
std::unique_ptr<Decalage> decalage_upper(const TSG& X) { return decalage(X, false); }

CulfReport culf_check(const SimplicialMap& F, bool verify_premises) {
    CulfReport r;
    const TSG &Y = *F.dom, &X = *F.cod;
    if (verify_premises)
        r.precondition_verified = all_pass(decomposition_check(Y)) && all_pass(decomposition_check(X));
    r.squares.push_back(run("s0", {F.f[0], Y.degen(0, 0), X.degen(0, 0), F.f[1]}));
    for (int n = 2; n <= X.K; ++n)
        r.squares.push_back(run("generic [1]->[" + std::to_string(n) + "]",
                                {F.f[n], long_edge(Y, n), long_edge(X, n), F.f[1]}));
    r.culf = all_pass(r.squares);
    return r;
}

IncidenceOracle to_oracle(const TSG& X, OracleOptions opt) {
    if (X.K < 2) throw DecompError(ErrorKind::TruncationTooShallow, "oracle needs X_2");
    if (!completeness_check(X)) throw DecompError(ErrorKind::NotComplete, "s_0 is not a monomorphism");
    if (opt.verify) {
        auto rep = decomposition_check(X);
        for (const auto& s : rep)
            if (!s.pullback) throw DecompError(ErrorKind::NotDecomposition, s.name + ": " + s.reason);
    }
    int rmax = opt.rmax < 0 ? X.K : std::min(opt.rmax, X.K);
    auto sp = nondegenerate_split(X);
    const auto &X1 = *X.X[1], &X2 = *X.X[2];
    IncidenceOracle O;
    for (int c = 0; c < X1.num_components(); ++c) {
        ArrowClass a;
        a.id = X.class_id(c);
        a.weight = Rational(1, X1.comps[c].aut->order);
        a.degenerate = sp.is_degenerate[c];
        a.size = X.size(c);
        a.safe = true;
        O.add_class(std::move(a));
    }
    const auto &d0 = X.face(2, 0), &d1 = X.face(2, 1), &d2 = X.face(2, 2);
    for (int c = 0; c < X2.num_components(); ++c) {
        int s = X2.base(c);
        int f = X1.comp[d1.obj[s]], a = X1.comp[d2.obj[s]], b = X1.comp[d0.obj[s]];
        long num = static_cast<long>(X1.comps[f].aut->order) * X1.comps[a].aut->order * X1.comps[b].aut->order;
        O.add_two_fiber(f, a, b, Rational(num, X2.comps[c].aut->order));
    }
    std::map<std::pair<int, int>, Rational> eff;
    for (int r = 1; r <= rmax; ++r) {
        auto W = word_subgroupoid(X, std::string(r, 'a'));
        auto le = compose(long_edge(X, r), W.incl);
        const auto& Wg = *W.sub;
        for (int c = 0; c < Wg.num_components(); ++c) {
            int f = X1.comp[le.obj[Wg.base(c)]];
            eff[{f, r}] += Rational(X1.comps[f].aut->order, Wg.comps[c].aut->order);
        }
        for (int f = 0; f < X1.num_components(); ++f) eff.try_emplace({f, r}, Rational(0));
    }
    O.effective = std::move(eff);
    O.finalize();
    return O;
}

}  // namespace decomp
