#include "decomp/io.hpp"

#include "decomp/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

namespace decomp {

namespace {

[[noreturn]] void bad(const std::string& what) { throw DecompError(ErrorKind::ParseError, what); }

template <class F>
auto guarded(const char* where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        bad(std::string(where) + ": " + e.what());
    } catch (const std::out_of_range& e) {
        bad(std::string(where) + ": unknown id");
    }
}

using MorKey = std::tuple<int, int, int>;

std::map<MorKey, std::string> reverse_ids(const std::map<std::string, Morphism>& ids) {
    std::map<MorKey, std::string> r;
    for (const auto& [id, m] : ids) r[{m.src, m.tgt, m.elem}] = id;
    return r;
}

std::map<std::string, Morphism> default_ids(const FiniteGroupoid& g) {
    std::map<std::string, Morphism> ids;
    for (const auto& c : g.comps)
        for (int x : c.objects)
            for (int y : c.objects)
                for (int e = 0; e < c.aut->order; ++e) ids[morphism_id(g, {x, y, e})] = {x, y, e};
    return ids;
}

std::string key(int n, int i) { return std::to_string(n) + "," + std::to_string(i); }

struct Fnv {
    std::uint64_t h = 1469598103934665603ull;
    void add(const std::string& s) {
        for (unsigned char c : s) { h ^= c; h *= 1099511628211ull; }
        h ^= 0xff;
        h *= 1099511628211ull;
    }
    void add(long v) { add(std::to_string(v)); }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
};

void hash_functor(Fnv& h, const GroupoidFunctor& f) {
    for (int x : f.obj) h.add(x);
    for (int t : f.ti) h.add(t);
    for (const auto& a : f.ai)
        for (int e : a) h.add(e);
}

}  // namespace

// --- groupoids -----------------------------------------------------------------

Json groupoid_to_json(const FiniteGroupoid& g) {
    auto t = to_table(g);
    Json j;
    j["objects"] = t.objects;
    j["morphisms"] = Json::array();
    for (const auto& m : t.morphisms) j["morphisms"].push_back({{"id", m.id}, {"src", m.src}, {"tgt", m.tgt}});
    j["identities"] = t.identities;
    j["compose"] = Json::array();
    for (const auto& c : t.compose) j["compose"].push_back({c[0], c[1], c[2]});
    j["inverse"] = t.inverse;
    return j;
}

GroupoidTable table_from_json(const Json& j) {
    return guarded("groupoid", [&] {
        GroupoidTable t;
        t.objects = j.at("objects").get<std::vector<std::string>>();
        for (const auto& m : j.at("morphisms"))
            t.morphisms.push_back({m.at("id").get<std::string>(), m.at("src").get<std::string>(), m.at("tgt").get<std::string>()});
        t.identities = j.at("identities").get<std::map<std::string, std::string>>();
        for (const auto& c : j.at("compose")) {
            if (c.size() != 3) bad("compose entries are [g, f, gf]");
            t.compose.push_back({c[0].get<std::string>(), c[1].get<std::string>(), c[2].get<std::string>()});
        }
        t.inverse = j.at("inverse").get<std::map<std::string, std::string>>();
        return t;
    });
}

FiniteGroupoid groupoid_from_json(const Json& j, std::map<std::string, Morphism>* ids) {
    return from_table(table_from_json(j), ids);
}

// --- functors ------------------------------------------------------------------

Json functor_to_json(const GroupoidFunctor& f) {
    const auto& D = *f.dom;
    const auto& C = *f.cod;
    Json j;
    j["objects"] = Json::object();
    for (int x = 0; x < D.num_objects(); ++x) j["objects"][D.names[x]] = C.names[f.obj[x]];
    j["morphisms"] = Json::object();
    for (const auto& [id, m] : default_ids(D)) j["morphisms"][id] = morphism_id(C, f.apply(m));
    return j;
}

GroupoidFunctor functor_from_json(const Json& j, GroupoidPtr dom, const std::map<std::string, Morphism>& dom_ids,
                                  GroupoidPtr cod, const std::map<std::string, Morphism>& cod_ids) {
    return guarded("functor", [&] {
        const auto& D = *dom;
        std::vector<int> obj(D.num_objects(), -1);
        for (int x = 0; x < D.num_objects(); ++x) {
            int y = cod->find(j.at("objects").at(D.names[x]).get<std::string>());
            if (y < 0) bad("functor sends " + D.names[x] + " to an unknown object");
            obj[x] = y;
        }
        auto rev = reverse_ids(dom_ids);
        const auto& mj = j.at("morphisms");
        auto image = [&](const std::string& id) { return cod_ids.at(mj.at(id).get<std::string>()); };
        auto F = functor_from_maps(dom, cod, obj, [&](const Morphism& m) { return image(rev.at({m.src, m.tgt, m.elem})); });
        for (const auto& [id, m] : dom_ids)
            if (!(F.apply(m) == image(id))) bad("morphism map is not functorial at " + id);
        return F;
    });
}

// --- truncated simplicial groupoids ----------------------------------------------

Json tsg_to_json(const TSG& X) {
    Json j;
    j["K"] = X.K;
    j["levels"] = Json::array();
    for (const auto& g : X.X) j["levels"].push_back(groupoid_to_json(*g));
    j["faces"] = Json::object();
    for (int n = 1; n <= X.K; ++n)
        for (int i = 0; i <= n; ++i) j["faces"][key(n, i)] = functor_to_json(X.face(n, i));
    j["degeneracies"] = Json::object();
    for (int n = 0; n < X.K; ++n)
        for (int i = 0; i <= n; ++i) j["degeneracies"][key(n, i)] = functor_to_json(X.degen(n, i));

    Json meta = Json::object();
    const auto& X1 = *X.X[1];
    if (!X.class_ids.empty() || !X.sizes.empty()) {
        for (int x = 0; x < X1.num_objects(); ++x) {
            if (!X.class_ids.empty()) meta["classIds"][X1.names[x]] = X.class_ids[X1.comp[x]];
            if (!X.sizes.empty()) meta["sizes"][X1.names[x]] = X.sizes[X1.comp[x]];
        }
    }
    if (X.size_bound) {
        meta["sizeBound"] = *X.size_bound;
        meta["levelSizes"] = Json::array();
        for (size_t n = 0; n < X.level_sizes.size(); ++n) {
            Json lv = Json::object();
            for (int x = 0; x < X.X[n]->num_objects(); ++x) lv[X.X[n]->names[x]] = X.level_sizes[n][X.X[n]->comp[x]];
            meta["levelSizes"].push_back(lv);
        }
    }
    if (!meta.empty()) j["meta"] = meta;
    return j;
}

TSG tsg_from_json(const Json& j) {
    return guarded("tsg", [&] {
        TSG X;
        X.K = j.at("K").get<int>();
        if (X.K < 1) bad("K must be at least 1");
        const auto& lv = j.at("levels");
        if (static_cast<int>(lv.size()) != X.K + 1) bad("expected K+1 levels");
        std::vector<std::map<std::string, Morphism>> ids(X.K + 1);
        for (int n = 0; n <= X.K; ++n) X.X.push_back(std::make_shared<FiniteGroupoid>(groupoid_from_json(lv[n], &ids[n])));
        X.d.resize(X.K + 1);
        X.s.resize(X.K);
        for (int n = 1; n <= X.K; ++n)
            for (int i = 0; i <= n; ++i)
                X.d[n].push_back(functor_from_json(j.at("faces").at(key(n, i)), X.X[n], ids[n], X.X[n - 1], ids[n - 1]));
        for (int n = 0; n < X.K; ++n)
            for (int i = 0; i <= n; ++i)
                X.s[n].push_back(functor_from_json(j.at("degeneracies").at(key(n, i)), X.X[n], ids[n], X.X[n + 1], ids[n + 1]));

        if (j.contains("meta")) {
            const auto& m = j["meta"];
            const auto& X1 = *X.X[1];
            auto per_comp = [&](const FiniteGroupoid& g, const Json& by_name, auto tag) {
                using T = decltype(tag);
                std::vector<T> v(g.num_components());
                for (int c = 0; c < g.num_components(); ++c) v[c] = by_name.at(g.names[g.base(c)]).template get<T>();
                return v;
            };
            if (m.contains("classIds")) X.class_ids = per_comp(X1, m["classIds"], std::string());
            if (m.contains("sizes")) X.sizes = per_comp(X1, m["sizes"], 0);
            if (m.contains("sizeBound")) {
                X.size_bound = m["sizeBound"].get<int>();
                const auto& ls = m.at("levelSizes");
                for (int n = 0; n <= X.K; ++n) X.level_sizes.push_back(per_comp(*X.X[n], ls.at(n), 0));
            }
        }
        return X;
    });
}

// --- oracles -------------------------------------------------------------------

Json oracle_to_json(const IncidenceOracle& O) {
    Json j;
    j["classes"] = Json::array();
    for (const auto& c : O.classes) {
        Json cj{{"id", c.id}, {"weight", c.weight.pq()}, {"degenerate", c.degenerate}};
        if (c.size) cj["size"] = *c.size;
        if (c.label) cj["label"] = *c.label;
        if (!c.safe) cj["safe"] = false;
        j["classes"].push_back(cj);
    }
    j["twoFiber"] = Json::array();
    for (int f = 0; f < O.size(); ++f)
        for (const auto& e : O.fibers[f])
            j["twoFiber"].push_back({O.classes[f].id, O.classes[e.a].id, O.classes[e.b].id, e.value.pq()});
    if (O.effective) {
        j["effectiveFiber"] = Json::array();
        for (const auto& [fr, v] : *O.effective) j["effectiveFiber"].push_back({O.classes[fr.first].id, fr.second, v.pq()});
    }
    if (O.monoidal) {
        Json m{{"unit", O.classes[O.monoidal->unit].id}, {"product", Json::array()}};
        for (const auto& [xy, p] : O.monoidal->product)
            m["product"].push_back({O.classes[xy.first].id, O.classes[xy.second].id, O.classes[p].id});
        j["monoidal"] = m;
    }
    return j;
}

IncidenceOracle oracle_from_json(const Json& j) {
    IncidenceOracle O;
    guarded("oracle", [&] {
        for (const auto& c : j.at("classes")) {
            ArrowClass a;
            a.id = c.at("id").get<std::string>();
            a.weight = Rational::parse(c.at("weight").get<std::string>());
            a.degenerate = c.value("degenerate", false);
            if (c.contains("size")) a.size = c["size"].get<int>();
            if (c.contains("label")) a.label = c["label"].get<std::string>();
            a.safe = c.value("safe", true);
            O.add_class(a);
        }
        auto cls = [&](const Json& v) {
            auto id = v.get<std::string>();
            if (!O.has(id)) bad("unknown class " + id);
            return O.find(id);
        };
        for (const auto& t : j.at("twoFiber")) {
            if (t.size() != 4) bad("twoFiber entries are [f, a, b, value]");
            O.add_two_fiber(cls(t[0]), cls(t[1]), cls(t[2]), Rational::parse(t[3].get<std::string>()));
        }
        if (j.contains("effectiveFiber")) {
            O.effective.emplace();
            for (const auto& t : j["effectiveFiber"]) (*O.effective)[{cls(t.at(0)), t.at(1).get<int>()}] = Rational::parse(t.at(2).get<std::string>());
        }
        if (j.contains("monoidal")) {
            Monoidal m;
            m.unit = cls(j["monoidal"].at("unit"));
            for (const auto& p : j["monoidal"].at("product")) m.product[{cls(p.at(0)), cls(p.at(1))}] = cls(p.at(2));
            O.monoidal = m;
        }
        return 0;
    });
    O.finalize();
    return O;
}

Json function_to_json(const IncidenceOracle& O, const IncidenceFunction& f) {
    Json j = Json::object();
    for (int c = 0; c < O.size(); ++c) j[O.classes[c].id] = f[c].pq();
    return j;
}

IncidenceFunction function_from_json(const IncidenceOracle& O, const Json& j) {
    return guarded("function", [&] {
        if (!j.is_object()) bad("function must map class ids to \"p/q\"");
        IncidenceFunction f(O.size());
        for (const auto& [id, v] : j.items()) f[O.find(id)] = Rational::parse(v.get<std::string>());
        return f;
    });
}

Json tensor_to_json(const IncidenceOracle& O, const TensorVector& t) {
    Json j = Json::array();
    for (const auto& [ab, v] : t) j.push_back({O.classes[ab.first].id, O.classes[ab.second].id, v.pq()});
    return j;
}

// --- fingerprints ------------------------------------------------------------------

std::string fnv1a_hex(const std::string& s) {
    Fnv h;
    h.add(s);
    return h.hex();
}

std::string fingerprint(const TSG& X) {
    Fnv h;
    h.add(X.K);
    for (const auto& g : X.X) {
        for (const auto& n : g->names) h.add(n);
        for (int c : g->comp) h.add(c);
        for (const auto& c : g->comps) {
            h.add(c.aut->order);
            for (int v : c.aut->mul) h.add(v);
        }
    }
    for (const auto& fs : X.d)
        for (const auto& f : fs) hash_functor(h, f);
    for (const auto& fs : X.s)
        for (const auto& f : fs) hash_functor(h, f);
    for (const auto& c : X.class_ids) h.add(c);
    return h.hex();
}

std::string fingerprint(const IncidenceOracle& O) { return fnv1a_hex(oracle_to_json(O).dump()); }

Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        bad(path + ": " + e.what());
    }
}

}  // namespace decomp
