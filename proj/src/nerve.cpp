// Nerves of posets and finite categories, fat nerves, and the category-based
// gallery entries (surjections, injections, BZ_2).

#include "decomp/error.hpp"
#include "decomp/gallery.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace decomp {

struct FatNerveDetail {
    FiniteCategorySpec spec;
    bool classical = false;
    int nobj = 0;
    std::vector<int> src, tgt, inv, ident;
    std::vector<int> comp;  // comp[g * nmor + f] = g o f or -1
    std::vector<std::vector<int>> isos_from;
    // level n: strings {c0, f1, ..., fn}
    std::vector<std::vector<Label>> strings;
    std::vector<std::unordered_map<Label, int, LabelHash>> index;
    std::vector<LabeledGroupoid> L;

    int nmor() const { return static_cast<int>(src.size()); }
    int c(int g, int f) const { return comp[static_cast<size_t>(g) * nmor() + f]; }
    // object at vertex i of a string
    int vertex(const Label& s, int i) const { return i == 0 ? s[0] : tgt[s[i]]; }
};

namespace {

struct CatIndex {
    std::unordered_map<std::string, int> obj, mor;
};

CatIndex index_category(const FiniteCategorySpec& C) {
    CatIndex ix;
    for (size_t i = 0; i < C.objects.size(); ++i)
        if (!ix.obj.emplace(C.objects[i], static_cast<int>(i)).second)
            throw DecompError(ErrorKind::NotACategory, "duplicate object " + C.objects[i]);
    for (size_t i = 0; i < C.morphisms.size(); ++i) {
        const auto& m = C.morphisms[i];
        if (!ix.mor.emplace(m.id, static_cast<int>(i)).second)
            throw DecompError(ErrorKind::NotACategory, "duplicate morphism " + m.id);
        if (!ix.obj.count(m.src) || !ix.obj.count(m.tgt))
            throw DecompError(ErrorKind::NotACategory, "morphism " + m.id + " has an unknown endpoint");
    }
    return ix;
}

std::shared_ptr<FatNerveDetail> analyse(const FiniteCategorySpec& C) {
    validate_category(C);
    auto ix = index_category(C);
    auto D = std::make_shared<FatNerveDetail>();
    D->spec = C;
    D->nobj = static_cast<int>(C.objects.size());
    int m = static_cast<int>(C.morphisms.size());
    for (const auto& f : C.morphisms) {
        D->src.push_back(ix.obj.at(f.src));
        D->tgt.push_back(ix.obj.at(f.tgt));
    }
    D->ident.resize(D->nobj);
    for (const auto& [o, f] : C.identities) D->ident[ix.obj.at(o)] = ix.mor.at(f);
    D->comp.assign(static_cast<size_t>(m) * m, -1);
    for (const auto& t : C.compose)
        D->comp[static_cast<size_t>(ix.mor.at(t[0])) * m + ix.mor.at(t[1])] = ix.mor.at(t[2]);
    D->inv.assign(m, -1);
    D->isos_from.resize(D->nobj);
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g)
            if (D->src[g] == D->tgt[f] && D->tgt[g] == D->src[f] && D->c(g, f) == D->ident[D->src[f]] &&
                D->c(f, g) == D->ident[D->tgt[f]]) {
                D->inv[f] = g;
                D->isos_from[D->src[f]].push_back(f);
                break;
            }
    return D;
}

GroupoidFunctor nerve_functor(const FatNerveDetail& D, int from, int to,
                              const std::function<Label(const Label&)>& on_string,
                              const std::function<Label(const Label&)>& on_label) {
    const auto& dom = D.L[from];
    const auto& cod = D.L[to];
    std::vector<int> obj(D.strings[from].size());
    for (size_t x = 0; x < obj.size(); ++x) obj[x] = D.index[to].at(on_string(D.strings[from][x]));
    return labeled_functor(dom, cod, obj, [&](int, const Label& l) { return on_label(l); });
}

}  // namespace

void validate_category(const FiniteCategorySpec& C) {
    auto ix = index_category(C);
    int m = static_cast<int>(C.morphisms.size());
    std::vector<int> src(m), tgt(m);
    for (int i = 0; i < m; ++i) {
        src[i] = ix.obj.at(C.morphisms[i].src);
        tgt[i] = ix.obj.at(C.morphisms[i].tgt);
    }
    std::vector<int> ident(C.objects.size(), -1);
    for (const auto& [o, f] : C.identities) {
        auto io = ix.obj.find(o);
        auto jf = ix.mor.find(f);
        if (io == ix.obj.end() || jf == ix.mor.end())
            throw DecompError(ErrorKind::NotACategory, "identity entry " + o + " -> " + f);
        if (src[jf->second] != io->second || tgt[jf->second] != io->second)
            throw DecompError(ErrorKind::NotACategory, "identity " + f + " is not an endomorphism of " + o);
        ident[io->second] = jf->second;
    }
    for (size_t o = 0; o < ident.size(); ++o)
        if (ident[o] < 0) throw DecompError(ErrorKind::NotACategory, "no identity at " + C.objects[o]);
    std::vector<int> comp(static_cast<size_t>(m) * m, -1);
    for (const auto& t : C.compose) {
        for (const auto& id : t)
            if (!ix.mor.count(id)) throw DecompError(ErrorKind::NotACategory, "unknown morphism " + id);
        int g = ix.mor.at(t[0]), f = ix.mor.at(t[1]), gf = ix.mor.at(t[2]);
        if (tgt[f] != src[g] || src[gf] != src[f] || tgt[gf] != tgt[g])
            throw DecompError(ErrorKind::NotACategory, "ill-typed composite " + t[0] + " o " + t[1]);
        auto& slot = comp[static_cast<size_t>(g) * m + f];
        if (slot >= 0 && slot != gf)
            throw DecompError(ErrorKind::NotACategory, "two composites for " + t[0] + " o " + t[1]);
        slot = gf;
    }
    auto at = [&](int g, int f) { return comp[static_cast<size_t>(g) * m + f]; };
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g)
            if (tgt[f] == src[g] && at(g, f) < 0)
                throw DecompError(ErrorKind::NotACategory,
                                  "missing composite " + C.morphisms[g].id + " o " + C.morphisms[f].id);
    for (int f = 0; f < m; ++f)
        if (at(f, ident[src[f]]) != f || at(ident[tgt[f]], f) != f)
            throw DecompError(ErrorKind::NotACategory, "unit law fails at " + C.morphisms[f].id);
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            if (tgt[f] != src[g]) continue;
            for (int h = 0; h < m; ++h)
                if (tgt[g] == src[h] && at(h, at(g, f)) != at(at(h, g), f))
                    throw DecompError(ErrorKind::NotACategory, "associativity fails at (" + C.morphisms[h].id + ", " +
                                                                   C.morphisms[g].id + ", " + C.morphisms[f].id + ")");
        }
}

FatNerve fat_nerve(const FiniteCategorySpec& C, const FatNerveOptions& opt) {
    if (opt.K < 1) throw DecompError(ErrorKind::TruncationTooShallow, "K >= 1 required");
    auto D = analyse(C);
    D->classical = opt.classical;
    int K = opt.K;
    int m = D->nmor();
    // strings
    D->strings.resize(K + 1);
    for (int o = 0; o < D->nobj; ++o) D->strings[0].push_back({o});
    for (int n = 1; n <= K; ++n)
        for (const auto& s : D->strings[n - 1]) {
            int last = D->vertex(s, n - 1);
            for (int f = 0; f < m; ++f)
                if (D->src[f] == last) {
                    Label t = s;
                    t.push_back(f);
                    D->strings[n].push_back(std::move(t));
                }
        }
    D->index.resize(K + 1);
    for (int n = 0; n <= K; ++n)
        for (size_t i = 0; i < D->strings[n].size(); ++i) D->index[n][D->strings[n][i]] = static_cast<int>(i);

    const FatNerveDetail* P = D.get();
    for (int n = 0; n <= K; ++n) {
        std::vector<std::string> names;
        for (const auto& s : D->strings[n]) {
            if (n == 0) { names.push_back(C.objects[s[0]]); continue; }
            std::string nm;
            for (int i = 1; i <= n; ++i) nm += (i > 1 ? "|" : "") + C.morphisms[s[i]].id;
            names.push_back(nm);
        }
        LabelOps ops;
        ops.compose = [P](const Label& b, const Label& a) {
            Label r(a.size());
            for (size_t i = 0; i < a.size(); ++i) r[i] = P->c(b[i], a[i]);
            return r;
        };
        ops.inverse = [P](const Label& a) {
            Label r(a.size());
            for (size_t i = 0; i < a.size(); ++i) r[i] = P->inv[a[i]];
            return r;
        };
        ops.identity = [P, n](int x) {
            const auto& s = P->strings[n][x];
            Label r(n + 1);
            for (int i = 0; i <= n; ++i) r[i] = P->ident[P->vertex(s, i)];
            return r;
        };
        auto out = [P, n](int x) {
            const auto& s = P->strings[n][x];
            std::vector<std::vector<int>> choices(n + 1);
            for (int i = 0; i <= n; ++i) {
                int v = P->vertex(s, i);
                if (P->classical) choices[i] = {P->ident[v]};
                else choices[i] = P->isos_from[v];
            }
            std::vector<std::pair<Label, int>> res;
            Label u(n + 1);
            std::function<void(int)> rec = [&](int i) {
                if (i > n) {
                    Label t(n + 1);
                    t[0] = P->tgt[u[0]];
                    for (int j = 1; j <= n; ++j) t[j] = P->c(P->c(u[j], s[j]), P->inv[u[j - 1]]);
                    res.emplace_back(u, P->index[n].at(t));
                    return;
                }
                for (int v : choices[i]) { u[i] = v; rec(i + 1); }
            };
            rec(0);
            return res;
        };
        D->L.push_back(build_labeled(std::move(names), out, ops));
    }

    FatNerve F;
    TSG& X = F.tsg;
    X.K = K;
    for (int n = 0; n <= K; ++n) X.X.push_back(D->L[n].g);
    X.d.resize(K + 1);
    for (int n = 1; n <= K; ++n)
        for (int i = 0; i <= n; ++i) {
            auto on_s = [P, n, i](const Label& s) {
                Label t;
                if (i == 0) {
                    t.push_back(P->vertex(s, 1));
                    t.insert(t.end(), s.begin() + 2, s.end());
                } else if (i == n) {
                    t.assign(s.begin(), s.end() - 1);
                } else {
                    t.assign(s.begin(), s.begin() + i);
                    t.push_back(P->c(s[i + 1], s[i]));
                    t.insert(t.end(), s.begin() + i + 2, s.end());
                }
                return t;
            };
            auto on_l = [i](const Label& l) {
                Label t = l;
                t.erase(t.begin() + i);
                return t;
            };
            X.d[n].push_back(nerve_functor(*D, n, n - 1, on_s, on_l));
        }
    X.s.resize(K);
    for (int n = 0; n < K; ++n)
        for (int i = 0; i <= n; ++i) {
            auto on_s = [P, i](const Label& s) {
                Label t(s.begin(), s.begin() + i + 1);
                t.push_back(P->ident[P->vertex(s, i)]);
                t.insert(t.end(), s.begin() + i + 1, s.end());
                return t;
            };
            auto on_l = [i](const Label& l) {
                Label t = l;
                t.insert(t.begin() + i, l[i]);
                return t;
            };
            X.s[n].push_back(nerve_functor(*D, n, n + 1, on_s, on_l));
        }
    const auto& X1 = *X.X[1];
    for (int c = 0; c < X1.num_components(); ++c) {
        int f = D->strings[1][X1.base(c)][1];
        X.class_ids.push_back(opt.class_id ? opt.class_id(C, f) : C.morphisms[f].id);
        if (opt.size) X.sizes.push_back(opt.size(C, f));
    }
    F.detail = D;
    return F;
}

SimplicialMap fat_nerve_map(const FatNerve& Y, const FatNerve& X, const std::vector<int>& mor) {
    const auto& DY = *Y.detail;
    const auto& DX = *X.detail;
    if (Y.tsg.K != X.tsg.K) throw DecompError(ErrorKind::TypeMismatch, "truncation levels differ");
    std::vector<int> on_obj(DY.nobj);
    for (int o = 0; o < DY.nobj; ++o) on_obj[o] = DX.src[mor.at(DY.ident[o])];
    SimplicialMap F;
    F.dom = &Y.tsg;
    F.cod = &X.tsg;
    for (int n = 0; n <= X.tsg.K; ++n) {
        std::vector<int> obj(DY.strings[n].size());
        for (size_t x = 0; x < obj.size(); ++x) {
            Label t = DY.strings[n][x];
            t[0] = on_obj[t[0]];
            for (int i = 1; i <= n; ++i) t[i] = mor[t[i]];
            obj[x] = DX.index[n].at(t);
        }
        F.f.push_back(labeled_functor(DY.L[n], DX.L[n], obj, [&](int, const Label& l) {
            Label t(l.size());
            for (size_t i = 0; i < l.size(); ++i) t[i] = mor[l[i]];
            return t;
        }));
    }
    return F;
}

// --- posets ----------------------------------------------------------------

FiniteCategorySpec poset_category(const PosetSpec& P) {
    std::unordered_map<std::string, int> ix;
    for (size_t i = 0; i < P.elements.size(); ++i)
        if (!ix.emplace(P.elements[i], static_cast<int>(i)).second)
            throw DecompError(ErrorKind::NotAPoset, "duplicate element " + P.elements[i]);
    int n = static_cast<int>(P.elements.size());
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) le[i][i] = true;
    for (const auto& [a, b] : P.leq) {
        if (!ix.count(a) || !ix.count(b)) throw DecompError(ErrorKind::NotAPoset, "unknown element in " + a + " <= " + b);
        le[ix[a]][ix[b]] = true;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && le[i][j] && le[j][i])
                throw DecompError(ErrorKind::NotAPoset, "not antisymmetric: " + P.elements[i] + ", " + P.elements[j]);
            for (int k = 0; k < n; ++k)
                if (le[i][j] && le[j][k] && !le[i][k])
                    throw DecompError(ErrorKind::NotAPoset, "not transitive: " + P.elements[i] + " <= " + P.elements[j] +
                                                                " <= " + P.elements[k]);
        }
    FiniteCategorySpec C;
    C.objects = P.elements;
    auto id = [&](int i, int j) { return P.elements[i] + "<=" + P.elements[j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (le[i][j]) C.morphisms.push_back({id(i, j), P.elements[i], P.elements[j]});
    for (int i = 0; i < n; ++i) C.identities[P.elements[i]] = id(i, i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (le[i][j] && le[j][k]) C.compose.push_back({id(j, k), id(i, j), id(i, k)});
    return C;
}

TSG strict_nerve(const FiniteCategorySpec& C, int K) {
    FatNerveOptions o;
    o.K = K;
    o.classical = true;
    return fat_nerve(C, o).tsg;
}

TSG poset_nerve(const PosetSpec& P, int K) { return strict_nerve(poset_category(P), K); }

PosetSpec chain_poset(int n) {
    PosetSpec P;
    for (int i = 0; i <= n; ++i) P.elements.push_back(std::to_string(i));
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) P.leq.emplace_back(P.elements[i], P.elements[j]);
    return P;
}

PosetSpec antichain(int n) {
    PosetSpec P;
    for (int i = 0; i < n; ++i) P.elements.push_back("p" + std::to_string(i));
    return P;
}

PosetSpec boolean_lattice(int k) {
    PosetSpec P;
    auto name = [k](int s) {
        std::string r = "{";
        for (int i = 0; i < k; ++i)
            if (s >> i & 1) r += (r.size() > 1 ? "," : "") + std::to_string(i);
        return r + "}";
    };
    for (int s = 0; s < (1 << k); ++s) P.elements.push_back(name(s));
    for (int s = 0; s < (1 << k); ++s)
        for (int t = 0; t < (1 << k); ++t)
            if (s != t && (s & t) == s) P.leq.emplace_back(name(s), name(t));
    return P;
}

PosetSpec nongraded_poset() {
    PosetSpec P;
    P.elements = {"b", "u1", "u2", "m", "t"};
    P.leq = {{"b", "u1"}, {"b", "u2"}, {"u1", "u2"}, {"b", "m"}, {"b", "t"},
             {"u1", "t"}, {"u2", "t"}, {"m", "t"}};
    return P;
}

FiniteCategorySpec group_category(const FiniteGroup& G, const std::string& name) {
    FiniteCategorySpec C;
    C.objects = {name};
    auto id = [](int g) { return "g" + std::to_string(g); };
    for (int g = 0; g < G.order; ++g) C.morphisms.push_back({id(g), name, name});
    C.identities[name] = id(0);
    for (int g = 0; g < G.order; ++g)
        for (int f = 0; f < G.order; ++f) C.compose.push_back({id(g), id(f), id(G.m(g, f))});
    return C;
}

TSG corrupted_poset_nerve(int K) {
    TSG X = poset_nerve(chain_poset(2), K);
    int s = X.X[2]->find("0<=1|1<=2");
    int bad = X.X[1]->find("0<=0");
    X.d[2][1].obj[s] = bad;
    return X;
}

FatNerve bz2_fat_nerve(int K) {
    FatNerveOptions o;
    o.K = K;
    return fat_nerve(group_category(*FiniteGroup::cyclic(2), "*"), o);
}

// --- surjections and injections ---------------------------------------------

namespace {

std::string map_id(const std::vector<int>& img, int n, int k) {
    std::string s = std::to_string(n) + "->" + std::to_string(k) + ":";
    for (size_t i = 0; i < img.size(); ++i) s += (i ? "," : "") + std::to_string(img[i]);
    return s;
}

// all maps [n] -> [k] satisfying `keep`
std::vector<std::vector<int>> maps(int n, int k, const std::function<bool(const std::vector<int>&)>& keep) {
    std::vector<std::vector<int>> out;
    std::vector<int> img(n, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            if (keep(img)) out.push_back(img);
            return;
        }
        for (int v = 0; v < k; ++v) { img[i] = v; rec(i + 1); }
    };
    rec(0);
    return out;
}

// category on objects 0..N whose morphisms are the maps selected by `keep`
FiniteCategorySpec set_category(int N, const std::function<bool(const std::vector<int>&, int, int)>& keep) {
    FiniteCategorySpec C;
    for (int n = 0; n <= N; ++n) C.objects.push_back(std::to_string(n));
    std::vector<std::tuple<int, int, std::vector<int>>> ms;
    for (int n = 0; n <= N; ++n)
        for (int k = 0; k <= N; ++k)
            for (auto& img : maps(n, k, [&](const std::vector<int>& v) { return keep(v, n, k); })) {
                C.morphisms.push_back({map_id(img, n, k), std::to_string(n), std::to_string(k)});
                ms.emplace_back(n, k, img);
            }
    for (int n = 0; n <= N; ++n) {
        std::vector<int> id(n);
        std::iota(id.begin(), id.end(), 0);
        C.identities[std::to_string(n)] = map_id(id, n, n);
    }
    for (const auto& [n, k, f] : ms)
        for (const auto& [k2, l, g] : ms) {
            if (k2 != k) continue;
            std::vector<int> gf(n);
            for (int i = 0; i < n; ++i) gf[i] = g[f[i]];
            C.compose.push_back({map_id(g, k, l), map_id(f, n, k), map_id(gf, n, l)});
        }
    return C;
}

std::vector<int> parse_image(const std::string& id, int& n, int& k) {
    auto arrow = id.find("->");
    auto colon = id.find(':');
    n = std::stoi(id.substr(0, arrow));
    k = std::stoi(id.substr(arrow + 2, colon - arrow - 2));
    std::vector<int> img;
    std::string rest = id.substr(colon + 1);
    size_t p = 0;
    while (p < rest.size()) {
        auto q = rest.find(',', p);
        if (q == std::string::npos) q = rest.size();
        img.push_back(std::stoi(rest.substr(p, q - p)));
        p = q + 1;
    }
    return img;
}

bool surjective(const std::vector<int>& v, int, int k) {
    std::vector<bool> hit(k, false);
    for (int x : v) hit[x] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool injective(const std::vector<int>& v, int, int) {
    std::set<int> s(v.begin(), v.end());
    return s.size() == v.size();
}

bool monotone_injective(const std::vector<int>& v, int, int) {
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] <= v[i - 1]) return false;
    return true;
}

}  // namespace

std::string surjection_id(const std::vector<int>& image, int k) {
    std::vector<int> fib(k, 0);
    for (int x : image) ++fib[x];
    std::sort(fib.begin(), fib.end());
    std::string s = std::to_string(image.size()) + "->" + std::to_string(k) + ":";
    for (int i = 0; i < k; ++i) s += (i ? "+" : "") + std::to_string(fib[i]);
    return s;
}

FatNerve surjections_space(int N, int K) {
    if (N < 1) throw DecompError(ErrorKind::IndexError, "surjections need N >= 1");
    FatNerveOptions o;
    o.K = K;
    o.class_id = [](const FiniteCategorySpec& C, int f) {
        int n, k;
        auto img = parse_image(C.morphisms[f].id, n, k);
        return surjection_id(img, k);
    };
    o.size = [](const FiniteCategorySpec& C, int f) {
        int n, k;
        parse_image(C.morphisms[f].id, n, k);
        return n - k;
    };
    return fat_nerve(set_category(N, surjective), o);
}

std::unique_ptr<InjectionFixture> injection_fixture(int N, int K) {
    if (N < 2) throw DecompError(ErrorKind::IndexError, "injection fixture needs N >= 2");
    auto fx = std::make_unique<InjectionFixture>();
    auto size = [](const FiniteCategorySpec& C, int f) {
        int n, k;
        parse_image(C.morphisms[f].id, n, k);
        return k - n;
    };
    FatNerveOptions oo;
    oo.K = K;
    oo.size = size;
    auto OI = set_category(N, monotone_injective);
    fx->ordered = fat_nerve(OI, oo);
    FatNerveOptions po = oo;
    po.class_id = [](const FiniteCategorySpec& C, int f) {
        int n, k;
        parse_image(C.morphisms[f].id, n, k);
        return std::to_string(n) + ">->" + std::to_string(k);
    };
    auto I = set_category(N, injective);
    fx->plain = fat_nerve(I, po);
    std::unordered_map<std::string, int> ix;
    for (size_t i = 0; i < I.morphisms.size(); ++i) ix[I.morphisms[i].id] = static_cast<int>(i);
    std::vector<int> mor;
    for (const auto& m : OI.morphisms) mor.push_back(ix.at(m.id));
    fx->forget = fat_nerve_map(fx->ordered, fx->plain, mor);
    return fx;
}

}  // namespace decomp
