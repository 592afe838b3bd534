#include "decomp/groupoid.hpp"
#include "decomp/error.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace decomp {

// --- FiniteGroupoid ---------------------------------------------------------

std::size_t FiniteGroupoid::num_morphisms() const {
    std::size_t n = 0;
    for (const auto& c : comps) n += c.objects.size() * c.objects.size() * c.aut->order;
    return n;
}

Morphism FiniteGroupoid::compose(const Morphism& g, const Morphism& f) const {
    if (f.tgt != g.src) throw DecompError(ErrorKind::TypeMismatch, "composing non-composable morphisms");
    return {f.src, g.tgt, group_of(f.src).m(g.elem, f.elem)};
}

Morphism FiniteGroupoid::inverse(const Morphism& m) const {
    return {m.tgt, m.src, group_of(m.src).i(m.elem)};
}

std::vector<Morphism> FiniteGroupoid::hom(int x, int y) const {
    std::vector<Morphism> out;
    if (!connected(x, y)) return out;
    int n = aut_order(x);
    out.reserve(n);
    for (int g = 0; g < n; ++g) out.push_back({x, y, g});
    return out;
}

int FiniteGroupoid::find(const std::string& name) const {
    for (int i = 0; i < num_objects(); ++i)
        if (names[i] == name) return i;
    return -1;
}

int FiniteGroupoid::add_component(GroupPtr aut, const std::vector<std::string>& objs) {
    Component c{std::move(aut), {}};
    int ci = num_components();
    for (const auto& o : objs) {
        c.objects.push_back(num_objects());
        names.push_back(o);
        comp.push_back(ci);
    }
    comps.push_back(std::move(c));
    return ci;
}

bool FiniteGroupoid::operator==(const FiniteGroupoid& o) const {
    if (names != o.names || comp != o.comp || comps.size() != o.comps.size()) return false;
    for (size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].objects != o.comps[i].objects) return false;
        if (comps[i].aut != o.comps[i].aut && !(*comps[i].aut == *o.comps[i].aut)) return false;
    }
    return true;
}

// --- tables -----------------------------------------------------------------

std::vector<Diagnostic> validate(const GroupoidTable& t) {
    std::vector<Diagnostic> out;
    std::unordered_map<std::string, int> obj;
    for (const auto& o : t.objects) {
        if (obj.count(o)) out.push_back({"DuplicateObject", {o}});
        obj[o] = 1;
    }
    std::unordered_map<std::string, const GroupoidTable::Mor*> mor;
    for (const auto& m : t.morphisms) {
        if (mor.count(m.id)) out.push_back({"DuplicateMorphism", {m.id}});
        mor[m.id] = &m;
        if (!obj.count(m.src) || !obj.count(m.tgt)) out.push_back({"UnknownObject", {m.id}});
    }
    if (!out.empty()) return out;

    for (const auto& o : t.objects) {
        auto it = t.identities.find(o);
        if (it == t.identities.end() || !mor.count(it->second)) {
            out.push_back({"MissingIdentity", {o}});
            continue;
        }
        const auto* m = mor[it->second];
        if (m->src != o || m->tgt != o) out.push_back({"MissingIdentity", {o, m->id}});
    }

    std::map<std::pair<std::string, std::string>, std::string> comp;
    for (const auto& c : t.compose) {
        const auto &g = c[0], &f = c[1], &gf = c[2];
        if (!mor.count(g) || !mor.count(f) || !mor.count(gf)) {
            out.push_back({"BadComposite", {g, f, gf}});
            continue;
        }
        const auto *G = mor[g], *F = mor[f], *GF = mor[gf];
        if (F->tgt != G->src || GF->src != F->src || GF->tgt != G->tgt) {
            out.push_back({"BadComposite", {g, f, gf}});
            continue;
        }
        auto key = std::make_pair(g, f);
        auto ex = comp.find(key);
        if (ex != comp.end() && ex->second != gf) out.push_back({"DuplicateComposite", {g, f}});
        comp[key] = gf;
    }

    // morphisms by source, for enumerating composable pairs and triples
    std::unordered_map<std::string, std::vector<const GroupoidTable::Mor*>> from;
    for (const auto& m : t.morphisms) from[m.src].push_back(&m);

    bool complete = true;
    for (const auto& f : t.morphisms)
        for (const auto* g : from[f.tgt])
            if (!comp.count({g->id, f.id})) {
                out.push_back({"MissingComposite", {g->id, f.id}});
                complete = false;
            }

    for (const auto& f : t.morphisms) {
        auto is = t.identities.find(f.src), it = t.identities.find(f.tgt);
        if (is == t.identities.end() || it == t.identities.end()) continue;
        auto a = comp.find({f.id, is->second});
        auto b = comp.find({it->second, f.id});
        if ((a != comp.end() && a->second != f.id) || (b != comp.end() && b->second != f.id))
            out.push_back({"Unit", {f.id}});
    }

    if (complete) {
        for (const auto& f : t.morphisms)
            for (const auto* g : from[f.tgt])
                for (const auto* h : from[g->tgt]) {
                    const auto& hg = comp[{h->id, g->id}];
                    const auto& gf = comp[{g->id, f.id}];
                    if (comp[{hg, f.id}] != comp[{h->id, gf}])
                        out.push_back({"Associativity", {h->id, g->id, f.id}});
                }
    }

    for (const auto& m : t.morphisms) {
        auto it = t.inverse.find(m.id);
        if (it == t.inverse.end() || !mor.count(it->second)) {
            out.push_back({"MissingInverse", {m.id}});
            continue;
        }
        const auto& inv = it->second;
        auto l = comp.find({inv, m.id}), r = comp.find({m.id, inv});
        auto is = t.identities.find(m.src), it2 = t.identities.find(m.tgt);
        bool ok = l != comp.end() && r != comp.end() && is != t.identities.end() &&
                  it2 != t.identities.end() && l->second == is->second && r->second == it2->second;
        if (!ok) out.push_back({"BadInverse", {m.id, inv}});
    }
    return out;
}

FiniteGroupoid from_table(const GroupoidTable& t, std::map<std::string, Morphism>* morph_ids) {
    auto diags = validate(t);
    if (!diags.empty())
        throw DecompError(ErrorKind::InvalidGroupoid,
                          diags.front().kind + (diags.front().ids.empty() ? "" : " " + diags.front().ids[0]));
    std::unordered_map<std::string, int> oi;
    for (size_t i = 0; i < t.objects.size(); ++i) oi[t.objects[i]] = static_cast<int>(i);
    std::map<std::pair<std::string, std::string>, std::string> comp;
    for (const auto& c : t.compose) comp[{c[0], c[1]}] = c[2];
    std::unordered_map<std::string, std::vector<const GroupoidTable::Mor*>> from;
    for (const auto& m : t.morphisms) from[m.src].push_back(&m);

    int n = static_cast<int>(t.objects.size());
    std::vector<int> cidx(n, -1);
    std::vector<std::string> transport(n);
    FiniteGroupoid g;
    g.names = t.objects;
    g.comp.assign(n, -1);
    std::vector<std::unordered_map<std::string, int>> loop_index;
    for (int r = 0; r < n; ++r) {
        if (g.comp[r] >= 0) continue;
        int c = g.num_components();
        Component cc;
        cc.objects.push_back(r);
        g.comp[r] = c;
        const std::string& idr = t.identities.at(t.objects[r]);
        transport[r] = idr;
        std::vector<std::string> loops{idr};
        std::unordered_map<std::string, int> li{{idr, 0}};
        for (const auto* m : from[t.objects[r]]) {
            int y = oi[m->tgt];
            if (y == r) {
                if (!li.count(m->id)) { li[m->id] = static_cast<int>(loops.size()); loops.push_back(m->id); }
            } else if (g.comp[y] < 0) {
                g.comp[y] = c;
                transport[y] = m->id;
                cc.objects.push_back(y);
            }
        }
        int k = static_cast<int>(loops.size());
        std::vector<int> mul(static_cast<size_t>(k) * k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) mul[a * k + b] = li.at(comp.at({loops[a], loops[b]}));
        cc.aut = FiniteGroup::from_table(k, std::move(mul));
        g.comps.push_back(std::move(cc));
        loop_index.push_back(std::move(li));
    }
    if (morph_ids) {
        morph_ids->clear();
        for (const auto& m : t.morphisms) {
            int x = oi[m.src], y = oi[m.tgt];
            const std::string& ty_inv = t.inverse.at(transport[y]);
            std::string l = comp.at({ty_inv, comp.at({m.id, transport[x]})});
            (*morph_ids)[m.id] = {x, y, loop_index[g.comp[x]].at(l)};
        }
    }
    return g;
}

std::string morphism_id(const FiniteGroupoid& g, const Morphism& m) {
    return g.names[m.src] + "->" + g.names[m.tgt] + "#" + std::to_string(m.elem);
}

GroupoidTable to_table(const FiniteGroupoid& g) {
    GroupoidTable t;
    t.objects = g.names;
    for (const auto& c : g.comps) {
        const auto& G = *c.aut;
        for (int x : c.objects)
            for (int y : c.objects)
                for (int e = 0; e < G.order; ++e) {
                    Morphism m{x, y, e};
                    t.morphisms.push_back({morphism_id(g, m), g.names[x], g.names[y]});
                    t.inverse[morphism_id(g, m)] = morphism_id(g, g.inverse(m));
                    for (int z : c.objects)
                        for (int h = 0; h < G.order; ++h) {
                            Morphism n{y, z, h};
                            t.compose.push_back({morphism_id(g, n), morphism_id(g, m),
                                                 morphism_id(g, g.compose(n, m))});
                        }
                }
        for (int x : c.objects) t.identities[g.names[x]] = morphism_id(g, g.identity(x));
    }
    return t;
}

// --- functors ---------------------------------------------------------------

Morphism GroupoidFunctor::apply(const Morphism& m) const {
    int fx = obj[m.src], fy = obj[m.tgt];
    const auto& G = cod->group_of(fx);
    int e = ai[dom->comp[m.src]][m.elem];
    return {fx, fy, G.m(ti[m.tgt], G.m(e, G.i(ti[m.src])))};
}

bool GroupoidFunctor::operator==(const GroupoidFunctor& o) const {
    if (dom != o.dom && !(*dom == *o.dom)) return false;
    if (cod != o.cod && !(*cod == *o.cod)) return false;
    return obj == o.obj && ti == o.ti && ai == o.ai;
}

std::vector<Diagnostic> validate(const GroupoidFunctor& f) {
    std::vector<Diagnostic> out;
    const auto& D = *f.dom;
    const auto& C = *f.cod;
    if (static_cast<int>(f.obj.size()) != D.num_objects() || f.ti.size() != f.obj.size() ||
        static_cast<int>(f.ai.size()) != D.num_components()) {
        out.push_back({"Shape", {}});
        return out;
    }
    for (int x = 0; x < D.num_objects(); ++x)
        if (f.obj[x] < 0 || f.obj[x] >= C.num_objects()) {
            out.push_back({"ObjectOutOfRange", {D.names[x]}});
            return out;
        }
    for (int c = 0; c < D.num_components(); ++c) {
        int b = D.base(c);
        const auto& G = *D.comps[c].aut;
        const auto& H = C.group_of(f.obj[b]);
        for (int x : D.comps[c].objects) {
            if (!C.connected(f.obj[b], f.obj[x])) out.push_back({"BrokenComponent", {D.names[x]}});
            if (f.ti[x] < 0 || f.ti[x] >= H.order) out.push_back({"ElemOutOfRange", {D.names[x]}});
        }
        if (f.ti[b] != 0) out.push_back({"Identity", {D.names[b]}});
        if (static_cast<int>(f.ai[c].size()) != G.order) {
            out.push_back({"Shape", {D.names[b]}});
            continue;
        }
        bool range = true;
        for (int e : f.ai[c]) range = range && e >= 0 && e < H.order;
        if (!range) { out.push_back({"ElemOutOfRange", {D.names[b]}}); continue; }
        if (f.ai[c][0] != 0) out.push_back({"Identity", {D.names[b]}});
        for (int a = 0; a < G.order; ++a)
            for (int bb = 0; bb < G.order; ++bb)
                if (f.ai[c][G.m(a, bb)] != H.m(f.ai[c][a], f.ai[c][bb])) {
                    out.push_back({"Composition", {D.names[b], std::to_string(a), std::to_string(bb)}});
                    a = G.order;
                    break;
                }
    }
    return out;
}

GroupoidFunctor identity_functor(GroupoidPtr g) {
    GroupoidFunctor f;
    f.dom = f.cod = g;
    int n = g->num_objects();
    f.obj.resize(n);
    for (int i = 0; i < n; ++i) f.obj[i] = i;
    f.ti.assign(n, 0);
    for (const auto& c : g->comps) {
        std::vector<int> id(c.aut->order);
        for (int e = 0; e < c.aut->order; ++e) id[e] = e;
        f.ai.push_back(std::move(id));
    }
    return f;
}

GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f) {
    if (f.cod != g.dom && !(*f.cod == *g.dom))
        throw DecompError(ErrorKind::TypeMismatch, "functor composite with mismatched middle groupoid");
    GroupoidFunctor h;
    h.dom = f.dom;
    h.cod = g.cod;
    const auto& D = *f.dom;
    int n = D.num_objects();
    h.obj.resize(n);
    h.ti.resize(n);
    for (int x = 0; x < n; ++x) h.obj[x] = g.obj[f.obj[x]];
    for (int c = 0; c < D.num_components(); ++c) {
        int b = D.base(c);
        int fb = f.obj[b];
        for (int x : D.comps[c].objects) h.ti[x] = g.apply({fb, f.obj[x], f.ti[x]}).elem;
        std::vector<int> a(f.ai[c].size());
        for (size_t e = 0; e < a.size(); ++e) a[e] = g.apply({fb, fb, f.ai[c][e]}).elem;
        h.ai.push_back(std::move(a));
    }
    return h;
}

GroupoidFunctor functor_from_maps(GroupoidPtr dom, GroupoidPtr cod, const std::vector<int>& obj,
                                  const std::function<Morphism(const Morphism&)>& mor) {
    GroupoidFunctor f;
    f.dom = dom;
    f.cod = cod;
    f.obj = obj;
    f.ti.assign(dom->num_objects(), 0);
    for (int c = 0; c < dom->num_components(); ++c) {
        int b = dom->base(c);
        for (int x : dom->comps[c].objects) {
            Morphism m = mor({b, x, 0});
            if (m.src != obj[b] || m.tgt != obj[x])
                throw DecompError(ErrorKind::TypeMismatch, "morphism map disagrees with object map");
            f.ti[x] = m.elem;
        }
        const auto& G = *dom->comps[c].aut;
        std::vector<int> a(G.order);
        for (int e = 0; e < G.order; ++e) a[e] = mor({b, b, e}).elem;
        f.ai.push_back(std::move(a));
    }
    return f;
}

GroupoidFunctor terminal_functor(GroupoidPtr g) {
    auto one = std::make_shared<FiniteGroupoid>(one_object(FiniteGroup::trivial()));
    std::vector<int> obj(g->num_objects(), 0);
    return functor_from_maps(g, one, obj, [](const Morphism&) { return Morphism{0, 0, 0}; });
}

// --- decisions ----------------------------------------------------------------

std::vector<IsoClass> iso_classes(const FiniteGroupoid& g) {
    std::vector<IsoClass> out;
    for (const auto& c : g.comps) out.push_back({c.objects[0], c.objects, c.aut->order});
    return out;
}

Rational cardinality(const FiniteGroupoid& g) {
    Rational s(0);
    for (const auto& c : g.comps) s += Rational(1, c.aut->order);
    return s;
}

static bool faithful_and_full_on_loops(const GroupoidFunctor& f) {
    const auto& D = *f.dom;
    for (int c = 0; c < D.num_components(); ++c) {
        int target = f.cod->aut_order(f.obj[D.base(c)]);
        if (target != D.comps[c].aut->order) return false;
        std::vector<char> seen(target, 0);
        for (int e : f.ai[c]) {
            if (seen[e]) return false;
            seen[e] = 1;
        }
    }
    return true;
}

bool is_fully_faithful(const GroupoidFunctor& f) {
    std::vector<char> hit(f.cod->num_components(), 0);
    for (int c = 0; c < f.dom->num_components(); ++c) {
        int cc = f.cod->comp[f.obj[f.dom->base(c)]];
        if (hit[cc]) return false;  // two components collapse: empty hom maps onto nonempty
        hit[cc] = 1;
    }
    return faithful_and_full_on_loops(f);
}

std::vector<bool> essential_image(const GroupoidFunctor& f) {
    std::vector<bool> hitc(f.cod->num_components(), false);
    for (int x = 0; x < f.dom->num_objects(); ++x) hitc[f.cod->comp[f.obj[x]]] = true;
    std::vector<bool> out(f.cod->num_objects());
    for (int y = 0; y < f.cod->num_objects(); ++y) out[y] = hitc[f.cod->comp[y]];
    return out;
}

bool is_equivalence(const GroupoidFunctor& f) {
    if (!is_fully_faithful(f)) return false;
    std::vector<char> hit(f.cod->num_components(), 0);
    for (int c = 0; c < f.dom->num_components(); ++c) hit[f.cod->comp[f.obj[f.dom->base(c)]]] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

Inclusion full_subgroupoid(GroupoidPtr g, const std::vector<int>& keep) {
    std::vector<char> in(g->num_objects(), 0);
    for (int x : keep) in[x] = 1;
    auto sub = std::make_shared<FiniteGroupoid>();
    std::vector<int> obj;
    for (const auto& c : g->comps) {
        std::vector<std::string> names;
        for (int x : c.objects)
            if (in[x]) { names.push_back(g->names[x]); obj.push_back(x); }
        if (!names.empty()) sub->add_component(c.aut, names);
    }
    // Same group and elem indices: the transport to x is (base', x, 0).
    Inclusion r;
    r.sub = sub;
    r.incl.dom = sub;
    r.incl.cod = g;
    r.incl.obj = obj;
    r.incl.ti.assign(obj.size(), 0);
    for (const auto& c : sub->comps) {
        std::vector<int> id(c.aut->order);
        for (int e = 0; e < c.aut->order; ++e) id[e] = e;
        r.incl.ai.push_back(std::move(id));
    }
    return r;
}

Inclusion essential_image_complement(const GroupoidFunctor& f) {
    if (!is_fully_faithful(f)) throw DecompError(ErrorKind::NotMono, "functor is not fully faithful");
    auto img = essential_image(f);
    std::vector<int> keep;
    for (int y = 0; y < f.cod->num_objects(); ++y)
        if (!img[y]) keep.push_back(y);
    return full_subgroupoid(f.cod, keep);
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& g, const FiniteGroupoid& h) {
    std::set<std::string> seen(g.names.begin(), g.names.end());
    bool clash = std::any_of(h.names.begin(), h.names.end(), [&](const auto& s) { return seen.count(s); });
    auto name = [&](int side, const std::string& s) { return clash ? std::to_string(side) + ":" + s : s; };
    FiniteGroupoid u;
    for (const auto& c : g.comps) {
        std::vector<std::string> ns;
        for (int x : c.objects) ns.push_back(name(0, g.names[x]));
        u.add_component(c.aut, ns);
    }
    for (const auto& c : h.comps) {
        std::vector<std::string> ns;
        for (int x : c.objects) ns.push_back(name(1, h.names[x]));
        u.add_component(c.aut, ns);
    }
    return u;
}

FiniteGroupoid product(const FiniteGroupoid& g, const FiniteGroupoid& h) {
    FiniteGroupoid p;
    for (const auto& a : g.comps)
        for (const auto& b : h.comps) {
            std::vector<std::string> ns;
            for (int x : a.objects)
                for (int y : b.objects) ns.push_back("(" + g.names[x] + "," + h.names[y] + ")");
            p.add_component(FiniteGroup::product(*a.aut, *b.aut), ns);
        }
    return p;
}

FiniteGroupoid discrete_groupoid(int n, const std::string& prefix) {
    FiniteGroupoid g;
    for (int i = 0; i < n; ++i) g.add_component(FiniteGroup::trivial(), {prefix + std::to_string(i)});
    return g;
}

FiniteGroupoid one_object(GroupPtr grp, const std::string& name) {
    FiniteGroupoid g;
    g.add_component(std::move(grp), {name});
    return g;
}

FiniteGroupoid empty_groupoid() { return {}; }

}  // namespace decomp
