#include "decomp/pullback.hpp"
#include "decomp/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace decomp {

bool commutes(const CommutingSquare& sq) {
    return compose(sq.bottom, sq.left) == compose(sq.right, sq.top);
}

Rational pullback_cardinality(const GroupoidFunctor& f, const GroupoidFunctor& g,
                              const std::function<bool(int, int)>& within) {
    const auto& C = *f.cod;
    if (within) {
        Rational s(0);
        for (int a = 0; a < f.dom->num_components(); ++a)
            for (int b = 0; b < g.dom->num_components(); ++b) {
                int c = C.comp[f.obj[f.dom->base(a)]];
                if (c != C.comp[g.obj[g.dom->base(b)]] || !within(a, b)) continue;
                s += Rational(C.comps[c].aut->order, static_cast<long>(f.dom->comps[a].aut->order) * g.dom->comps[b].aut->order);
            }
        return s;
    }
    std::vector<Rational> wa(C.num_components()), wb(C.num_components());
    for (int c = 0; c < f.dom->num_components(); ++c)
        wa[C.comp[f.obj[f.dom->base(c)]]] += Rational(1, f.dom->comps[c].aut->order);
    for (int c = 0; c < g.dom->num_components(); ++c)
        wb[C.comp[g.obj[g.dom->base(c)]]] += Rational(1, g.dom->comps[c].aut->order);
    Rational s(0);
    for (int c = 0; c < C.num_components(); ++c)
        if (!wa[c].is_zero() && !wb[c].is_zero()) s += wa[c] * wb[c] * Rational(C.comps[c].aut->order);
    return s;
}

namespace {

// A generating subset of a subgroup given by all its elements.
std::vector<int> generators(const FiniteGroup& G, const std::vector<int>& elems) {
    std::vector<int> gens;
    std::vector<char> in(G.order, 0);
    in[0] = 1;
    std::vector<int> closure{0};
    for (int e : elems) {
        if (in[e]) continue;
        gens.push_back(e);
        // re-close under right multiplication by generators
        for (size_t k = 0; k < closure.size(); ++k)
            for (int s : gens) {
                int p = G.m(closure[k], s);
                if (!in[p]) { in[p] = 1; closure.push_back(p); }
            }
    }
    return gens;
}

struct DoubleCosets {
    const FiniteGroup* G = nullptr;
    std::vector<int> left, right;  // generators of H_B (left), H_A (right)
    std::vector<int> label;        // -1 = not yet computed

    int of(int e) {
        if (label[e] >= 0) return label[e];
        std::vector<int> orbit{e};
        std::vector<char> seen(G->order, 0);
        seen[e] = 1;
        for (size_t k = 0; k < orbit.size(); ++k) {
            int x = orbit[k];
            for (int s : left) {
                int y = G->m(s, x);
                if (!seen[y]) { seen[y] = 1; orbit.push_back(y); }
            }
            for (int s : right) {
                int y = G->m(x, s);
                if (!seen[y]) { seen[y] = 1; orbit.push_back(y); }
            }
        }
        int mn = *std::min_element(orbit.begin(), orbit.end());
        for (int x : orbit) label[x] = mn;
        return mn;
    }
};

std::vector<int> image_elems(const GroupoidFunctor& f, int c) {
    std::set<int> s(f.ai[c].begin(), f.ai[c].end());
    return {s.begin(), s.end()};
}

// first failure, or empty
std::string diagnose(const CommutingSquare& sq) {
    if (!commutes(sq)) throw DecompError(ErrorKind::NotCommuting, "square does not commute strictly");
    const auto& P = *sq.left.dom;
    const auto& A = *sq.bottom.dom;
    const auto& B = *sq.right.dom;
    const auto& C = *sq.bottom.cod;
    const auto& f = sq.bottom;
    const auto& g = sq.right;

    std::map<std::pair<int, int>, DoubleCosets> dcs;
    std::map<std::tuple<int, int, int>, int> key_of;
    for (int pc = 0; pc < P.num_components(); ++pc) {
        int p = P.base(pc);
        int x = sq.left.obj[p], y = sq.top.obj[p];
        int ca = A.comp[x], cb = B.comp[y];
        if (sq.within && !sq.within(ca, cb))
            return P.names[p] + " lies outside the truncated homotopy pullback";
        int z = f.obj[x];  // == g.obj[y]
        const auto& Gc = C.group_of(z);
        auto it = dcs.find({ca, cb});
        if (it == dcs.end()) {
            DoubleCosets d;
            d.G = &Gc;
            d.right = generators(Gc, image_elems(f, ca));
            d.left = generators(Gc, image_elems(g, cb));
            d.label.assign(Gc.order, -1);
            it = dcs.emplace(std::make_pair(ca, cb), std::move(d)).first;
        }
        // (x, y, id) ~ (ra, rb, g(y -> rb) o f(ra -> x))
        int h0 = Gc.m(Gc.i(g.ti[y]), f.ti[x]);
        auto key = std::make_tuple(ca, cb, it->second.of(h0));
        auto [kit, fresh] = key_of.emplace(key, pc);
        if (!fresh)
            return "components of " + P.names[P.base(kit->second)] + " and " + P.names[p] +
                   " map to the same component of the homotopy pullback";

        // loops: Aut(p) -> {(alpha, beta) : f alpha = g beta}
        const auto& Gp = *P.comps[pc].aut;
        std::set<std::pair<int, int>> pairs;
        for (int e = 0; e < Gp.order; ++e) {
            Morphism m{p, p, e};
            pairs.insert({sq.left.apply(m).elem, sq.top.apply(m).elem});
        }
        if (static_cast<int>(pairs.size()) != Gp.order)
            return "automorphisms of " + P.names[p] + " are not faithfully represented";
        std::vector<long long> ca_cnt(Gc.order, 0), cb_cnt(Gc.order, 0);
        for (int e = 0; e < A.aut_order(x); ++e) ca_cnt[f.apply({x, x, e}).elem]++;
        for (int e = 0; e < B.aut_order(y); ++e) cb_cnt[g.apply({y, y, e}).elem]++;
        long long target = 0;
        for (int e = 0; e < Gc.order; ++e) target += ca_cnt[e] * cb_cnt[e];
        if (target != Gp.order)
            return "automorphisms of " + P.names[p] + ": " + std::to_string(Gp.order) + " vs " +
                   std::to_string(target) + " in the homotopy pullback";
    }
    Rational want = pullback_cardinality(f, g, sq.within), have = cardinality(P);
    if (want != have)
        return "not essentially surjective: cardinality " + have.str() + " vs " + want.str();
    return {};
}

}  // namespace

bool is_pullback_square(const CommutingSquare& sq) { return diagnose(sq).empty(); }

std::string pullback_failure(const CommutingSquare& sq) { return diagnose(sq); }

bool is_pullback_square_explicit(const CommutingSquare& sq) {
    if (!commutes(sq)) throw DecompError(ErrorKind::NotCommuting, "square does not commute strictly");
    auto H = homotopy_pullback(sq.bottom, sq.right);
    if (sq.within) {
        std::vector<int> keep;
        for (int i = 0; i < H.P->num_objects(); ++i)
            if (sq.within(sq.bottom.dom->comp[H.pa.obj[i]], sq.right.dom->comp[H.pb.obj[i]])) keep.push_back(i);
        auto R = full_subgroupoid(H.P, keep);
        std::vector<int> gamma;
        for (int i = 0; i < R.sub->num_objects(); ++i) gamma.push_back(H.gamma[R.incl.obj[i]]);
        H = PullbackCone{R.sub, compose(H.pa, R.incl), compose(H.pb, R.incl), gamma};
    }
    const auto& Hp = *H.P;
    std::map<std::tuple<int, int, int>, int> idx;
    for (int i = 0; i < Hp.num_objects(); ++i) idx[{H.pa.obj[i], H.pb.obj[i], H.gamma[i]}] = i;
    const auto& P = *sq.left.dom;
    std::vector<int> obj(P.num_objects());
    for (int p = 0; p < P.num_objects(); ++p) {
        auto it = idx.find({sq.left.obj[p], sq.top.obj[p], 0});
        if (it == idx.end()) return false;
        obj[p] = it->second;
    }
    auto cmp = functor_from_maps(sq.left.dom, H.P, obj, [&](const Morphism& m) {
        Morphism a = sq.left.apply(m), b = sq.top.apply(m);
        for (const auto& h : Hp.hom(obj[m.src], obj[m.tgt]))
            if (H.pa.apply(h) == a && H.pb.apply(h) == b) return h;
        throw DecompError(ErrorKind::InvalidGroupoid, "comparison functor has no value");
    });
    return is_equivalence(cmp);
}

}  // namespace decomp
