// Homotopy fibres, iso-comma pullbacks and strict fibre products, all built
// through the labelled builder with morphisms of the inputs as labels.
#include "decomp/error.hpp"
#include "decomp/groupoid.hpp"
#include "decomp/labeled.hpp"

#include <unordered_map>

namespace decomp {

namespace {

bool same(const GroupoidPtr& a, const GroupoidPtr& b) { return a == b || *a == *b; }

// label = concatenation of k morphism triples, composed blockwise
LabelOps block_ops(std::vector<GroupoidPtr> gs) {
    LabelOps ops;
    ops.compose = [gs](const Label& b, const Label& a) {
        Label r(a.size());
        for (size_t i = 0; i < gs.size(); ++i) {
            Morphism m = gs[i]->compose(unlabel(b, 3 * i), unlabel(a, 3 * i));
            r[3 * i] = m.src; r[3 * i + 1] = m.tgt; r[3 * i + 2] = m.elem;
        }
        return r;
    };
    ops.inverse = [gs](const Label& a) {
        Label r(a.size());
        for (size_t i = 0; i < gs.size(); ++i) {
            Morphism m = gs[i]->inverse(unlabel(a, 3 * i));
            r[3 * i] = m.src; r[3 * i + 1] = m.tgt; r[3 * i + 2] = m.elem;
        }
        return r;
    };
    return ops;
}

Label cat(const Morphism& a, const Morphism& b) { return {a.src, a.tgt, a.elem, b.src, b.tgt, b.elem}; }

// all morphisms out of x
std::vector<Morphism> out_of(const FiniteGroupoid& g, int x) {
    std::vector<Morphism> r;
    const auto& c = g.comps[g.comp[x]];
    r.reserve(c.objects.size() * c.aut->order);
    for (int y : c.objects)
        for (int e = 0; e < c.aut->order; ++e) r.push_back({x, y, e});
    return r;
}

struct Hpb {
    LabeledGroupoid L;
    std::vector<std::array<int, 3>> objs;  // (a, b, gamma elem)
};

Hpb hpb_labeled(const GroupoidFunctor& f, const GroupoidFunctor& g) {
    if (!same(f.cod, g.cod)) throw DecompError(ErrorKind::TypeMismatch, "pullback of functors with different codomains");
    const auto &A = *f.dom, &B = *g.dom, &C = *f.cod;
    Hpb h;
    std::unordered_map<long long, int> offset;  // (a,b) -> first index
    std::vector<std::string> names;
    for (int a = 0; a < A.num_objects(); ++a)
        for (int b = 0; b < B.num_objects(); ++b) {
            if (!C.connected(f.obj[a], g.obj[b])) continue;
            offset[static_cast<long long>(a) * B.num_objects() + b] = static_cast<int>(h.objs.size());
            int n = C.aut_order(f.obj[a]);
            for (int e = 0; e < n; ++e) {
                h.objs.push_back({a, b, e});
                names.push_back("(" + A.names[a] + "," + B.names[b] + "," + std::to_string(e) + ")");
            }
        }
    auto index = [&](int a, int b, int e) { return offset.at(static_cast<long long>(a) * B.num_objects() + b) + e; };
    auto objs = h.objs;
    OutFn out = [&](int i) {
        auto [a, b, e] = objs[i];
        Morphism gamma{f.obj[a], g.obj[b], e};
        std::vector<std::pair<Label, int>> r;
        for (const auto& al : out_of(A, a)) {
            Morphism fa_inv = C.inverse(f.apply(al));
            for (const auto& be : out_of(B, b)) {
                Morphism gm = C.compose(g.apply(be), C.compose(gamma, fa_inv));
                r.push_back({cat(al, be), index(al.tgt, be.tgt, gm.elem)});
            }
        }
        return r;
    };
    LabelOps ops = block_ops({f.dom, g.dom});
    ops.identity = [objs](int i) { return Label{objs[i][0], objs[i][0], 0, objs[i][1], objs[i][1], 0}; };
    h.L = build_labeled(std::move(names), out, ops);
    return h;
}

PullbackCone cone_from(const LabeledGroupoid& L, const std::vector<std::array<int, 3>>& objs,
                       GroupoidPtr A, GroupoidPtr B) {
    PullbackCone pc;
    pc.P = L.g;
    std::vector<int> oa, ob;
    for (const auto& o : objs) { oa.push_back(o[0]); ob.push_back(o[1]); }
    pc.pa = functor_from_maps(L.g, A, oa, [&](const Morphism& m) { return unlabel(L.decode(m), 0); });
    pc.pb = functor_from_maps(L.g, B, ob, [&](const Morphism& m) { return unlabel(L.decode(m), 3); });
    return pc;
}

}  // namespace

Fibration homotopy_fiber(const GroupoidFunctor& f, int b) {
    const auto &E = *f.dom, &B = *f.cod;
    if (b < 0 || b >= B.num_objects()) throw DecompError(ErrorKind::InvalidBasepoint, "no such object");
    std::vector<std::array<int, 2>> objs;
    std::vector<int> offset(E.num_objects(), -1);
    std::vector<std::string> names;
    int n = B.aut_order(b);
    for (int e = 0; e < E.num_objects(); ++e) {
        if (!B.connected(f.obj[e], b)) continue;
        offset[e] = static_cast<int>(objs.size());
        for (int k = 0; k < n; ++k) {
            objs.push_back({e, k});
            names.push_back("(" + E.names[e] + "," + std::to_string(k) + ")");
        }
    }
    OutFn out = [&](int i) {
        auto [e, k] = objs[i];
        Morphism beta{f.obj[e], b, k};
        std::vector<std::pair<Label, int>> r;
        for (const auto& al : out_of(E, e)) {
            Morphism nb = B.compose(beta, B.inverse(f.apply(al)));
            r.push_back({mlabel(al), offset[al.tgt] + nb.elem});
        }
        return r;
    };
    LabelOps ops = block_ops({f.dom});
    ops.identity = [objs](int i) { return Label{objs[i][0], objs[i][0], 0}; };
    auto L = build_labeled(std::move(names), out, ops);
    Fibration fb;
    fb.total = L.g;
    std::vector<int> oe;
    for (const auto& o : objs) oe.push_back(o[0]);
    fb.proj = functor_from_maps(L.g, f.dom, oe, [&](const Morphism& m) { return unlabel(L.decode(m)); });
    return fb;
}

Rational homotopy_fiber_cardinality(const GroupoidFunctor& f, int b) {
    const auto &E = *f.dom, &B = *f.cod;
    if (b < 0 || b >= B.num_objects()) throw DecompError(ErrorKind::InvalidBasepoint, "no such object");
    Rational s(0);
    for (int c = 0; c < E.num_components(); ++c)
        if (B.connected(f.obj[E.base(c)], b)) s += Rational(B.aut_order(b), E.comps[c].aut->order);
    return s;
}

PullbackCone homotopy_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g) {
    auto h = hpb_labeled(f, g);
    auto pc = cone_from(h.L, h.objs, f.dom, g.dom);
    for (const auto& o : h.objs) pc.gamma.push_back(o[2]);
    return pc;
}

PullbackCone strict_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g) {
    if (!same(f.cod, g.cod)) throw DecompError(ErrorKind::TypeMismatch, "pullback of functors with different codomains");
    const auto &A = *f.dom, &B = *g.dom;
    std::vector<std::array<int, 3>> objs;
    std::unordered_map<long long, int> index;
    std::vector<std::string> names;
    for (int a = 0; a < A.num_objects(); ++a)
        for (int b = 0; b < B.num_objects(); ++b)
            if (f.obj[a] == g.obj[b]) {
                index[static_cast<long long>(a) * B.num_objects() + b] = static_cast<int>(objs.size());
                objs.push_back({a, b, 0});
                names.push_back("(" + A.names[a] + "," + B.names[b] + ")");
            }
    OutFn out = [&](int i) {
        std::vector<std::pair<Label, int>> r;
        auto outb = out_of(B, objs[i][1]);
        for (const auto& al : out_of(A, objs[i][0])) {
            Morphism fa = f.apply(al);
            for (const auto& be : outb)
                if (g.apply(be) == fa)
                    r.push_back({cat(al, be), index.at(static_cast<long long>(al.tgt) * B.num_objects() + be.tgt)});
        }
        return r;
    };
    LabelOps ops = block_ops({f.dom, g.dom});
    ops.identity = [objs](int i) { return Label{objs[i][0], objs[i][0], 0, objs[i][1], objs[i][1], 0}; };
    auto L = build_labeled(std::move(names), out, ops);
    return cone_from(L, objs, f.dom, g.dom);
}

PathReplacement path_replacement(const GroupoidFunctor& g) {
    auto idc = identity_functor(g.cod);
    auto h = hpb_labeled(g, idc);
    auto cone = cone_from(h.L, h.objs, g.dom, g.cod);
    PathReplacement pr;
    pr.total = cone.P;
    pr.proj = cone.pb;
    std::vector<int> obj(g.dom->num_objects());
    std::unordered_map<long long, int> where;
    for (size_t i = 0; i < h.objs.size(); ++i)
        if (h.objs[i][2] == 0) where[static_cast<long long>(h.objs[i][0]) * g.cod->num_objects() + h.objs[i][1]] = static_cast<int>(i);
    // (b, G b, gamma) with gamma the identity, i.e. elem 0 at a loop
    for (int b = 0; b < g.dom->num_objects(); ++b) {
        int gb = g.obj[b];
        obj[b] = where.at(static_cast<long long>(b) * g.cod->num_objects() + gb);
    }
    const auto& L = h.L;
    pr.along = functor_from_maps(g.dom, cone.P, obj, [&](const Morphism& m) {
        Morphism gm = g.apply(m);
        return Morphism{obj[m.src], obj[m.tgt], L.encode(obj[m.src], obj[m.tgt], cat(m, gm))};
    });
    return pr;
}

}  // namespace decomp
