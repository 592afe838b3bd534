#include "decomp/cli.hpp"

#include "decomp/gallery.hpp"
#include "decomp/incidence.hpp"
#include "decomp/io.hpp"
#include "decomp/simplicial.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace decomp {

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::NotExplicit: return 3;
    case ErrorKind::ParseError:
    case ErrorKind::InvalidGroupoid: return 4;
    case ErrorKind::UnknownClass: return 5;
    case ErrorKind::TruncationUnsafe: return 6;
    case ErrorKind::NotTightAtTruncation: return 7;
    default: return 1;
    }
}

namespace {

struct SpaceOpts {
    std::string ref;
    int n = -1, q = 2, bound = -1, K = 4;
    bool explicit_oracle = false;
};

struct Entry {
    std::string name, params, description;
    std::function<TSG(const SpaceOpts&)> tsg;                 // empty: oracle only
    std::function<IncidenceOracle(const SpaceOpts&)> oracle;  // empty: to_oracle(tsg)
    std::function<bool(const std::string&)> connected;        // for mu --connected
};

int N(const SpaceOpts& o, int dflt = 3) { return o.n < 0 ? dflt : o.n; }

bool graph_connected(const std::string& id) {
    auto colon = id.find(':');
    int n = std::stoi(id.substr(1, colon - 1));
    if (n == 0) return false;
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::function<int(int)> root = [&](int x) { return p[x] == x ? x : p[x] = root(p[x]); };
    for (size_t i = colon + 1; i + 1 < id.size(); i += 3) p[root(id[i] - '0')] = root(id[i + 1] - '0');
    for (int v = 1; v < n; ++v)
        if (root(v) != root(0)) return false;
    return true;
}

const std::vector<Entry>& registry() {
    static const std::vector<Entry> R = [] {
        std::vector<Entry> r;
        r.push_back({"chain", "--n (default 2)", "nerve of the chain poset 0<1<...<n",
                     [](const SpaceOpts& o) { return poset_nerve(chain_poset(N(o, 2)), o.K); }, {}, {}});
        r.push_back({"antichain", "--n (default 2)", "nerve of an n-element antichain",
                     [](const SpaceOpts& o) { return poset_nerve(antichain(N(o, 2)), o.K); }, {}, {}});
        r.push_back({"boolean", "--n (default 2)", "nerve of the Boolean lattice of subsets of an n-set",
                     [](const SpaceOpts& o) { return poset_nerve(boolean_lattice(N(o, 2)), o.K); }, {}, {}});
        r.push_back({"nongraded", "", "nerve of a five-element poset with chains of lengths 2 and 3 between its ends",
                     [](const SpaceOpts& o) { return poset_nerve(nongraded_poset(), o.K); }, {}, {}});
        r.push_back({"corrupted", "", "chain nerve with one inner face redirected (negative control)",
                     [](const SpaceOpts& o) { return corrupted_poset_nerve(std::max(o.K, 3)); }, {}, {}});
        r.push_back({"bz2", "", "fat nerve of the group Z/2 as a one-object category",
                     [](const SpaceOpts& o) { return bz2_fat_nerve(o.K).tsg; }, {}, {}});
        r.push_back({"bz2-strict", "", "ordinary (strict) nerve of the group Z/2",
                     [](const SpaceOpts& o) { return strict_nerve(group_category(*FiniteGroup::cyclic(2)), o.K); }, {}, {}});
        r.push_back({"natplus", "--bound (default 8)", "additive monoid of natural numbers (oracle)", {},
                     [](const SpaceOpts& o) { return nat_plus_oracle(o.bound < 0 ? 8 : o.bound); }, {}});
        r.push_back({"divisibility", "--bound (default 12)", "multiplicative monoid of positive integers (oracle)", {},
                     [](const SpaceOpts& o) { return divisibility_oracle(o.bound < 0 ? 12 : o.bound); }, {}});
        r.push_back({"binomial", "--n (default 3)", "finite sets and bijections: the binomial coalgebra",
                     [](const SpaceOpts& o) { return binomial_space(N(o), o.K).tsg; },
                     [](const SpaceOpts& o) { return o.explicit_oracle ? binomial_space_oracle(N(o), o.K) : binomial_oracle(N(o)); },
                     {}});
        r.push_back({"graphs", "--n (default 3, oracle up to 6)", "simple graphs, split along vertex sets",
                     [](const SpaceOpts& o) { return graphs_space(N(o), o.K).tsg; },
                     [](const SpaceOpts& o) { return o.explicit_oracle ? graphs_space_oracle(N(o), o.K) : graphs_oracle(N(o)); },
                     graph_connected});
        r.push_back({"forests", "--n (default 3)", "Connes-Kreimer rooted forests with admissible cuts",
                     [](const SpaceOpts& o) { return forests_space(N(o), o.K).tsg; },
                     [](const SpaceOpts& o) { return forests_space_oracle(N(o), o.K); },
                     [](const std::string& id) { return id != "empty" && id.find(")(") == std::string::npos; }});
        r.push_back({"qvect", "--q 2|3, --n (default 3; explicit model n<=3 for q=2, n<=2 for q=3)",
                     "finite vector spaces over F_q: q-binomial / Hall coalgebra",
                     [](const SpaceOpts& o) { return qvect_space(o.q, N(o), o.K).tsg; },
                     [](const SpaceOpts& o) { return o.explicit_oracle ? to_oracle(qvect_space(o.q, N(o), o.K).tsg) : qvect_oracle(o.q, N(o)); },
                     {}});
        r.push_back({"surjections", "--n (default 3)", "fat nerve of finite sets and surjections: Faa di Bruno",
                     [](const SpaceOpts& o) { return surjections_space(N(o), o.K).tsg; },
                     [](const SpaceOpts& o) { return surjections_oracle(N(o), o.K); },
                     [](const std::string& id) { return id.find("->1:") != std::string::npos; }});
        r.push_back({"injections", "--n (default 3)", "fat nerve of finite sets and injections",
                     [](const SpaceOpts& o) { return injection_fixture(N(o), o.K)->plain.tsg; }, {}, {}});
        r.push_back({"injections-ordered", "--n (default 3)", "fat nerve of finite ordinals and monotone injections",
                     [](const SpaceOpts& o) { return injection_fixture(N(o), o.K)->ordered.tsg; }, {}, {}});
        return r;
    }();
    return R;
}

// --- resolved spaces -----------------------------------------------------------

struct Space {
    std::string label;
    const Entry* entry = nullptr;
    SpaceOpts opts;
    std::optional<Json> file;
    bool file_is_tsg = false;

    std::shared_ptr<const TSG> tsg_;
    std::shared_ptr<const IncidenceOracle> oracle_;

    bool explicit_available() const { return file ? file_is_tsg : static_cast<bool>(entry->tsg); }

    static std::optional<std::string> cache_path(const std::string& what, const std::string& key) {
        const char* dir = std::getenv("DECOMP_CACHE_DIR");
        if (!dir || !*dir) return std::nullopt;
        std::filesystem::create_directories(dir);
        return (std::filesystem::path(dir) / (fnv1a_hex(key) + "." + what + ".json")).string();
    }
    static void store(const std::string& path, const Json& j) {
        std::ofstream o(path + ".tmp");
        o << j.dump();
        o.close();
        std::filesystem::rename(path + ".tmp", path);
    }

    const TSG& tsg() {
        if (tsg_) return *tsg_;
        if (!explicit_available())
            throw DecompError(ErrorKind::NotExplicit, label + " is given by counting data only; no simplicial model");
        if (file) {
            tsg_ = std::make_shared<TSG>(tsg_from_json(*file));
        } else if (auto p = cache_path("tsg", label)) {
            if (std::filesystem::exists(*p)) {
                tsg_ = std::make_shared<TSG>(tsg_from_json(parse_json_file(*p)));
            } else {
                tsg_ = std::make_shared<TSG>(entry->tsg(opts));
                store(*p, tsg_to_json(*tsg_));
            }
        } else {
            tsg_ = std::make_shared<TSG>(entry->tsg(opts));
        }
        return *tsg_;
    }

    const IncidenceOracle& oracle() {
        if (oracle_) return *oracle_;
        auto build = [&]() -> IncidenceOracle {
            if (file) return file_is_tsg ? to_oracle(tsg()) : oracle_from_json(*file);
            if (entry->oracle) return entry->oracle(opts);
            return to_oracle(tsg());
        };
        if (auto p = file ? std::nullopt : cache_path("oracle", label + (opts.explicit_oracle ? " explicit" : ""))) {
            if (std::filesystem::exists(*p)) {
                oracle_ = std::make_shared<IncidenceOracle>(oracle_from_json(parse_json_file(*p)));
            } else {
                oracle_ = std::make_shared<IncidenceOracle>(build());
                store(*p, oracle_to_json(*oracle_));
            }
        } else {
            oracle_ = std::make_shared<IncidenceOracle>(build());
        }
        return *oracle_;
    }
};

Space resolve(const SpaceOpts& o) {
    Space s;
    s.opts = o;
    for (const auto& e : registry())
        if (e.name == o.ref) s.entry = &e;
    if (s.entry) {
        std::ostringstream l;
        l << o.ref;
        if (o.ref == "qvect") l << " q=" << o.q;
        if (o.ref == "natplus" || o.ref == "divisibility")
            l << " bound=" << (o.bound < 0 ? (o.ref == "natplus" ? 8 : 12) : o.bound);
        else if (!s.entry->params.empty() && s.entry->params.rfind("--n", 0) == 0)
            l << " n=" << N(o, s.entry->params.find("default 2") != std::string::npos ? 2 : 3);
        else if (o.ref == "qvect")
            l << " n=" << N(o);
        if (s.entry->tsg) l << " K=" << o.K;
        s.label = l.str();
        return s;
    }
    if (std::filesystem::exists(o.ref)) {
        s.file = parse_json_file(o.ref);
        if (s.file->contains("levels")) s.file_is_tsg = true;
        else if (!s.file->contains("classes")) throw DecompError(ErrorKind::ParseError, o.ref + ": neither a TSG nor an oracle");
        s.label = o.ref;
        return s;
    }
    throw CLI::ValidationError("SPACE", "unknown space '" + o.ref + "' (see `list`)");
}

int find_arrow(const IncidenceOracle& O, const std::string& a) {
    if (O.has(a)) return O.find(a);
    for (int c = 0; c < O.size(); ++c)
        if (O.classes[c].label && *O.classes[c].label == a) return c;
    // K<n>: complete graph
    if (a.size() >= 2 && a[0] == 'K' && std::all_of(a.begin() + 1, a.end(), ::isdigit)) {
        int n = std::stoi(a.substr(1));
        Label e;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) { e.push_back(u); e.push_back(v); }
        if (n <= 9 && O.has(graph_id(n, e))) return O.find(graph_id(n, e));
    }
    return O.find(a);  // throws UnknownClass
}

// --- output helpers ------------------------------------------------------------

std::string show(const Rational& r) {
    if (r.is_integer()) return r.str();
    return r.decimal(6) + " (" + r.str() + ")";
}

std::string mark(bool b) { return b ? "✓" : "✗"; }

void table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> w;
    auto width = [](const std::string& s) {
        size_t n = 0;
        for (unsigned char c : s) n += (c & 0xC0) != 0x80;
        return n;
    };
    for (const auto& r : rows)
        for (size_t i = 0; i < r.size(); ++i) {
            if (w.size() <= i) w.push_back(0);
            w[i] = std::max(w[i], width(r[i]));
        }
    for (const auto& r : rows) {
        std::string line;
        for (size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(w[i] - width(r[i]) + 2, ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << "\n";
    }
}

struct Ctx {
    std::string format = "table";
    int jobs = 1;
    unsigned seed = 1;
    bool timing = false;
    std::ostream* out;
    std::ostream* err;
    bool json() const { return format == "json"; }
};

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 1 || n < 2) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> ts;
    std::vector<std::exception_ptr> errs(jobs);
    for (int t = 0; t < jobs; ++t)
        ts.emplace_back([&, t] {
            try {
                for (int i = t; i < n; i += jobs) fn(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    for (auto& t : ts) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

Json report(const std::string& cmd, Space& s, const std::string& fp, Json results) {
    return Json{{"command", cmd}, {"space", {{"ref", s.label}, {"fingerprint", fp}}}, {"results", std::move(results)}};
}

Json squares_json(const std::vector<SquareReport>& r) {
    Json a = Json::array();
    for (const auto& q : r) {
        Json x{{"square", q.name}, {"pullback", q.pullback}};
        if (!q.reason.empty()) x["reason"] = q.reason;
        a.push_back(x);
    }
    return a;
}

int passed(const std::vector<SquareReport>& r) {
    return static_cast<int>(std::count_if(r.begin(), r.end(), [](const SquareReport& q) { return q.pullback; }));
}

// --- commands ------------------------------------------------------------------

int cmd_list(Ctx& c) {
    if (c.json()) {
        Json a = Json::array();
        for (const auto& e : registry())
            a.push_back({{"name", e.name}, {"parameters", e.params}, {"description", e.description},
                         {"explicit", static_cast<bool>(e.tsg)}});
        *c.out << a.dump(2) << "\n";
        return 0;
    }
    std::vector<std::vector<std::string>> rows{{"name", "model", "parameters", "description"}};
    for (const auto& e : registry()) rows.push_back({e.name, e.tsg ? "explicit" : "oracle", e.params, e.description});
    table(*c.out, rows);
    return 0;
}

int cmd_check(Ctx& c, Space& s) {
    const TSG& X = s.tsg();
    auto diags = validate_tsg(X);
    auto seg = segal_check(X);
    auto dec = decomposition_check(X);
    auto comp = completeness_report(X);
    bool ok = diags.empty() && all_pass(dec) && comp.complete;
    if (c.json()) {
        Json dj = Json::array();
        for (const auto& d : diags) dj.push_back({{"kind", d.kind}, {"ids", d.ids}});
        Json res{{"validate", dj},
                 {"segal", squares_json(seg)},
                 {"decomposition", squares_json(dec)},
                 {"completeness", {{"complete", comp.complete}, {"degeneraciesMono", comp.all_degeneracies_mono}, {"nonMono", comp.non_mono}}},
                 {"segalSpace", all_pass(seg)},
                 {"decompositionSpace", all_pass(dec)},
                 {"pass", ok}};
        *c.out << report("check", s, fingerprint(X), res).dump(2) << "\n";
        return ok ? 0 : 1;
    }
    auto& o = *c.out;
    o << "space          " << s.label << "  [" << fingerprint(X) << "]\n";
    o << "validate       " << mark(diags.empty()) << "  " << diags.size() << " diagnostics\n";
    for (size_t i = 0; i < diags.size() && i < 10; ++i) {
        o << "                 " << diags[i].kind;
        for (const auto& id : diags[i].ids) o << " " << id;
        o << "\n";
    }
    o << "segal          " << mark(all_pass(seg)) << "  " << passed(seg) << "/" << seg.size() << "\n";
    for (const auto& q : seg)
        if (!q.pullback) o << "                 " << q.name << ": " << q.reason << "\n";
    o << "decomposition  " << mark(all_pass(dec)) << "  " << passed(dec) << "/" << dec.size() << "\n";
    for (const auto& q : dec)
        if (!q.pullback) o << "                 " << q.name << ": " << q.reason << "\n";
    o << "complete       " << mark(comp.complete) << "\n";
    return ok ? 0 : 1;
}

int cmd_delta(Ctx& c, Space& s, const std::string& arrow) {
    const auto& O = s.oracle();
    int f = find_arrow(O, arrow);
    auto d = comultiply(O, f);
    if (c.json()) {
        *c.out << report("delta", s, fingerprint(O), {{"arrow", O.classes[f].id}, {"terms", tensor_to_json(O, d)}}).dump(2) << "\n";
        return 0;
    }
    *c.out << "Delta(" << O.classes[f].id << ") =\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& [ab, v] : d) rows.push_back({"  " + show(v), O.classes[ab.first].id, "⊗", O.classes[ab.second].id});
    table(*c.out, rows);
    return 0;
}

std::vector<int> selected(const IncidenceOracle& O, Space& s, const std::string& arrow, bool connected) {
    if (!arrow.empty()) return {find_arrow(O, arrow)};
    std::vector<int> v;
    if (connected && !(s.entry && s.entry->connected))
        throw CLI::ValidationError("--connected", "no notion of connected class for " + s.label);
    for (int f = 0; f < O.size(); ++f)
        if (!connected || s.entry->connected(O.classes[f].id)) v.push_back(f);
    return v;
}

int cmd_mu(Ctx& c, Space& s, int rmax, const std::string& arrow, bool connected) {
    const auto& O = s.oracle();
    int R = rmax < 0 ? default_rmax(O) : rmax;
    auto sel = selected(O, s, arrow, connected);
    auto part = mobius_partial(O, R);
    std::optional<IncidenceFunction> rec;
    std::string rec_error;
    try {
        rec = mobius_recursive(O);
    } catch (const DecompError& e) {
        rec_error = e.what();
    }
    std::vector<std::optional<Rational>> zp(sel.size());
    parallel_for(static_cast<int>(sel.size()), c.jobs, [&](int i) {
        if (part.defined[sel[i]]) zp[i] = zeta_polynomial(O, sel[i], R).at_minus_one;
    });
    auto z = zeta(O), eps = epsilon(O);
    auto zm = convolve(O, z, part.mu), mz = convolve(O, part.mu, z);
    bool agree = rec_error.empty(), inverse = true;
    std::vector<std::string> not_tight;
    for (size_t i = 0; i < sel.size(); ++i) {
        int f = sel[i];
        if (!part.defined[f]) { not_tight.push_back(O.classes[f].id); continue; }
        if (rec && (*rec)[f] != part.mu[f]) agree = false;
        if (!zp[i] || *zp[i] != part.mu[f]) agree = false;
        if (zm[f] != eps[f] || mz[f] != eps[f]) inverse = false;
    }
    if (c.json()) {
        Json cls = Json::array();
        for (size_t i = 0; i < sel.size(); ++i) {
            int f = sel[i];
            Json x{{"id", O.classes[f].id}};
            if (part.defined[f]) {
                x["mu"] = part.mu[f].pq();
                x["length"] = *part.len[f];
                if (rec) x["recursive"] = (*rec)[f].pq();
                if (zp[i]) x["zetaPolynomialAtMinusOne"] = zp[i]->pq();
            } else {
                x["mu"] = nullptr;
            }
            cls.push_back(x);
        }
        Json res{{"rmax", R}, {"classes", cls}, {"agree", agree}, {"inverse", inverse}, {"notTight", not_tight}};
        if (!rec_error.empty()) res["recursiveError"] = rec_error;
        *c.out << report("mu", s, fingerprint(O), res).dump(2) << "\n";
    } else {
        std::vector<std::vector<std::string>> rows{{"class", "mu", "recursive", "zeta-poly(-1)", "length"}};
        for (size_t i = 0; i < sel.size(); ++i) {
            int f = sel[i];
            if (!part.defined[f]) { rows.push_back({O.classes[f].id, "not tight", "", "", ""}); continue; }
            rows.push_back({O.classes[f].id, show(part.mu[f]), rec ? show((*rec)[f]) : "-", zp[i] ? show(*zp[i]) : "-",
                            std::to_string(*part.len[f])});
        }
        table(*c.out, rows);
        *c.out << "routes agree   " << mark(agree) << (rec_error.empty() ? "" : "  (" + rec_error + ")") << "\n";
        *c.out << "zeta*mu = eps = mu*zeta   " << mark(inverse) << "\n";
    }
    if (!not_tight.empty()) {
        std::string l;
        for (const auto& id : not_tight) l += (l.empty() ? "" : ", ") + id;
        throw DecompError(ErrorKind::NotTightAtTruncation, "not tight within rmax=" + std::to_string(R) + ": " + l);
    }
    return agree && inverse ? 0 : 1;
}

IncidenceFunction named_function(const IncidenceOracle& O, const std::string& spec) {
    if (spec == "zeta") return zeta(O);
    if (spec == "epsilon" || spec == "eps") return epsilon(O);
    if (spec == "mu") return mobius(O);
    if (spec.rfind("phi", 0) == 0 && spec.size() > 3 && std::all_of(spec.begin() + 3, spec.end(), ::isdigit))
        return phi(O, std::stoi(spec.substr(3)));
    if (spec.rfind("delta:", 0) == 0) return delta_fn(O, find_arrow(O, spec.substr(6)));
    if (std::filesystem::exists(spec)) return function_from_json(O, parse_json_file(spec));
    throw CLI::ValidationError("FUNCTION", "expected zeta, epsilon, mu, phi<r>, delta:<id> or a JSON file, got '" + spec + "'");
}

int cmd_convolve(Ctx& c, Space& s, const std::string& lhs, const std::string& rhs, const std::string& arrow) {
    const auto& O = s.oracle();
    auto a = named_function(O, lhs), b = named_function(O, rhs);
    Json vals = Json::object();
    std::vector<std::vector<std::string>> rows{{"class", "value"}};
    if (!arrow.empty()) {
        int f = find_arrow(O, arrow);
        auto v = convolve_at(O, a, b, f);
        vals[O.classes[f].id] = v.pq();
        rows.push_back({O.classes[f].id, show(v)});
    } else {
        auto r = convolve(O, a, b);
        for (int f = 0; f < O.size(); ++f) {
            if (!O.closed[f]) continue;
            vals[O.classes[f].id] = r[f].pq();
            rows.push_back({O.classes[f].id, show(r[f])});
        }
    }
    if (c.json())
        *c.out << report("convolve", s, fingerprint(O), {{"lhs", lhs}, {"rhs", rhs}, {"values", vals}}).dump(2) << "\n";
    else
        table(*c.out, rows);
    return 0;
}

int cmd_length(Ctx& c, Space& s, int rmax, const std::string& arrow) {
    const auto& O = s.oracle();
    int R = rmax < 0 ? default_rmax(O) : rmax;
    auto sel = selected(O, s, arrow, false);
    Json vals = Json::object();
    std::vector<std::vector<std::string>> rows{{"class", "length"}};
    std::vector<std::string> bad;
    for (int f : sel) {
        auto l = length(O, f, R);
        vals[O.classes[f].id] = l ? Json(*l) : Json(nullptr);
        rows.push_back({O.classes[f].id, l ? std::to_string(*l) : "not tight"});
        if (!l) bad.push_back(O.classes[f].id);
    }
    if (c.json())
        *c.out << report("length", s, fingerprint(O), {{"rmax", R}, {"lengths", vals}}).dump(2) << "\n";
    else
        table(*c.out, rows);
    if (!bad.empty()) {
        std::string l;
        for (const auto& id : bad) l += (l.empty() ? "" : ", ") + id;
        throw DecompError(ErrorKind::NotTightAtTruncation, "not tight within rmax=" + std::to_string(R) + ": " + l);
    }
    return 0;
}

std::string poly_str(const std::vector<Rational>& co) {
    std::string s;
    for (int k = static_cast<int>(co.size()) - 1; k >= 0; --k) {
        if (co[k].is_zero()) continue;
        Rational a = co[k];
        std::string sign = a.sign() < 0 ? " - " : (s.empty() ? "" : " + ");
        if (s.empty() && a.sign() < 0) sign = "-";
        Rational m = a.sign() < 0 ? -a : a;
        std::string mono = k == 0 ? "" : (k == 1 ? "r" : "r^" + std::to_string(k));
        std::string coef = (m == Rational(1) && k > 0) ? "" : m.str() + (k > 0 ? " " : "");
        s += sign + coef + mono;
    }
    return s.empty() ? "0" : s;
}

int cmd_zetapoly(Ctx& c, Space& s, const std::string& arrow, int rmax) {
    const auto& O = s.oracle();
    int f = find_arrow(O, arrow);
    auto zp = zeta_polynomial(O, f, rmax);
    if (c.json()) {
        Json table_j = Json::array();
        for (const auto& v : zp.table) table_j.push_back(v.pq());
        Json res{{"arrow", O.classes[f].id}, {"values", table_j}};
        if (zp.coeffs) {
            Json co = Json::array();
            for (const auto& v : *zp.coeffs) co.push_back(v.pq());
            res["coefficients"] = co;
            res["atMinusOne"] = zp.at_minus_one->pq();
        } else {
            res["coefficients"] = nullptr;
        }
        *c.out << report("zetapoly", s, fingerprint(O), res).dump(2) << "\n";
    } else {
        std::vector<std::vector<std::string>> rows{{"r", "zeta^r"}};
        for (size_t r = 0; r < zp.table.size(); ++r) rows.push_back({std::to_string(r), show(zp.table[r])});
        table(*c.out, rows);
        if (zp.coeffs)
            *c.out << "polynomial  " << poly_str(*zp.coeffs) << "\nvalue at -1  " << show(*zp.at_minus_one) << "\n";
        else
            *c.out << "no polynomial fits the table\n";
    }
    if (!zp.coeffs) throw DecompError(ErrorKind::NotPolynomialAtTruncation, O.classes[f].id);
    return 0;
}

int cmd_verify(Ctx& c, Space& s) {
    std::vector<std::pair<std::string, std::pair<bool, std::string>>> checks;
    auto add = [&](const std::string& name, bool ok, const std::string& note = "") { checks.push_back({name, {ok, note}}); };
    const auto& O = s.oracle();

    std::vector<char> co(O.size(), 1), cu(O.size(), 1);
    parallel_for(O.size(), c.jobs, [&](int f) {
        if (!O.closed[f]) return;
        co[f] = coassociativity_check(O, f);
        cu[f] = counit_check(O, f);
    });
    add("coassociativity", std::all_of(co.begin(), co.end(), [](char b) { return b; }));
    add("counit", std::all_of(cu.begin(), cu.end(), [](char b) { return b; }));
    add("grading", grading_check(O));

    std::mt19937 rng(c.seed);
    bool assoc = true, neutral = true;
    auto eps = epsilon(O);
    for (int t = 0; t < 3; ++t) {
        std::vector<IncidenceFunction> fs(3, IncidenceFunction(O.size()));
        for (auto& fn : fs)
            for (auto& x : fn) x = Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
        auto l = convolve(O, convolve(O, fs[0], fs[1]), fs[2]), r = convolve(O, fs[0], convolve(O, fs[1], fs[2]));
        auto e1 = convolve(O, eps, fs[0]), e2 = convolve(O, fs[0], eps);
        for (int f = 0; f < O.size(); ++f) {
            if (!O.closed[f]) continue;
            assoc = assoc && l[f] == r[f];
            neutral = neutral && e1[f] == fs[0][f] && e2[f] == fs[0][f];
        }
    }
    add("convolution associative (random)", assoc, "seed " + std::to_string(c.seed));
    add("epsilon neutral (random)", neutral);

    auto part = mobius_partial(O);
    bool agree = true, inverse = true;
    auto rec = mobius_recursive(O);
    auto z = zeta(O);
    auto zm = convolve(O, z, part.mu), mz = convolve(O, part.mu, z);
    int tight = 0;
    for (int f = 0; f < O.size(); ++f) {
        if (!part.defined[f]) continue;
        ++tight;
        auto zp = zeta_polynomial(O, f);
        agree = agree && rec[f] == part.mu[f] && zp.at_minus_one && *zp.at_minus_one == part.mu[f];
        inverse = inverse && zm[f] == eps[f] && mz[f] == eps[f];
    }
    add("mobius: three routes agree", agree, std::to_string(tight) + " tight classes");
    add("zeta*mu = eps = mu*zeta", inverse);
    if (O.monoidal) add("bialgebra", bialgebra_check(O, monoidal_pairs(O)));

    if (s.explicit_available()) {
        const TSG& X = s.tsg();
        add("simplicial identities", validate_tsg(X).empty());
        add("decomposition squares", all_pass(decomposition_check(X)));
        add("complete", completeness_check(X));
        auto E = to_oracle(X);
        if (X.K >= 3) {
            bool eff = true;
            for (int r = 1; r <= 3; ++r) {
                auto ph = phi(E, r);
                for (int comp = 0; comp < X.X[1]->num_components(); ++comp) {
                    int k = E.find(X.class_id(comp));
                    if (E.closed[k]) eff = eff && ph[k] == effective_fiber_cardinality(X, comp, r);
                }
            }
            add("Phi_r = effective fibres (r <= 3)", eff);
        }
        {
            bool same = O.size() == E.size();
            for (int f = 0; same && f < O.size(); ++f) {
                if (!E.has(O.classes[f].id)) { same = false; break; }
                int g = E.find(O.classes[f].id);
                auto a = comultiply(O, f), b = comultiply(E, g);
                TensorVector b2;
                for (const auto& [ab, v] : b) b2[{O.find(E.classes[ab.first].id), O.find(E.classes[ab.second].id)}] = v;
                same = same && a == b2;
            }
            add("oracle matches simplicial model", same);
        }
        if (s.entry && s.entry->name == "forests" && N(s.opts) >= 3) {
            int T = -1;
            for (int comp = 0; comp < X.X[1]->num_components(); ++comp)
                if (X.class_id(comp) == "(()())") T = comp;
            auto fib = homotopy_fiber(X.face(2, 1), X.X[1]->base(T));
            bool trivial = std::all_of(fib.total->comps.begin(), fib.total->comps.end(),
                                       [](const Component& k) { return k.aut->order == 1; });
            add("cherry: 5-point cut fibre", fib.total->num_components() == 5 && trivial,
                std::to_string(fib.total->num_components()) + " points");
        }
    }

    bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& k) { return k.second.first; });
    if (c.json()) {
        Json a = Json::array();
        for (const auto& [name, r] : checks) {
            Json x{{"check", name}, {"pass", r.first}};
            if (!r.second.empty()) x["note"] = r.second;
            a.push_back(x);
        }
        *c.out << report("verify", s, fingerprint(O), {{"checks", a}, {"pass", ok}}).dump(2) << "\n";
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [name, r] : checks) rows.push_back({mark(r.first), name, r.second});
        table(*c.out, rows);
    }
    return ok ? 0 : 1;
}

int cmd_dump(Ctx& c, Space& s, const std::string& what) {
    if (what == "tsg")
        *c.out << tsg_to_json(s.tsg()).dump(2) << "\n";
    else
        *c.out << oracle_to_json(s.oracle()).dump(2) << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Incidence coalgebras, Mobius inversion and decomposition-space checks", "decomp"};
    app.require_subcommand(1);
    Ctx ctx;
    ctx.out = &out;
    ctx.err = &err;
    app.add_option("--format", ctx.format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--jobs", ctx.jobs, "parallel per-class evaluation")->check(CLI::PositiveNumber);
    app.add_option("--seed", ctx.seed, "seed for randomized property sampling");
    app.add_flag("--timing", ctx.timing, "report wall time (on stderr)");

    SpaceOpts so;
    std::string arrow, lhs, rhs, what = "oracle";
    int rmax = -1;
    bool connected = false;
    auto space_cmd = [&](const std::string& name, const std::string& desc) {
        auto* sc = app.add_subcommand(name, desc);
        sc->fallthrough();
        sc->add_option("space", so.ref, "gallery name or JSON file")->required();
        sc->add_option("--n", so.n, "size bound / parameter");
        sc->add_option("--q", so.q, "field size");
        sc->add_option("--bound", so.bound, "bound for oracle-only monoids");
        sc->add_option("--K", so.K, "truncation level")->check(CLI::Range(2, 8));
        sc->add_flag("--explicit", so.explicit_oracle, "derive the oracle from the simplicial model");
        return sc;
    };
    auto* list = app.add_subcommand("list", "gallery constructors");
    list->fallthrough();
    auto* check = space_cmd("check", "simplicial identities, Segal, decomposition and completeness checks");
    auto* delta = space_cmd("delta", "comultiplication of one class");
    delta->add_option("--arrow", arrow, "class id or label")->required();
    auto* mu = space_cmd("mu", "Mobius function by three routes");
    mu->add_option("--rmax", rmax, "truncation of the Phi series");
    mu->add_option("--arrow", arrow, "restrict to one class");
    mu->add_flag("--connected", connected, "only connected classes");
    auto* conv = space_cmd("convolve", "convolution of two functions");
    conv->add_option("lhs", lhs, "zeta | epsilon | mu | phi<r> | delta:<id> | file.json")->required();
    conv->add_option("rhs", rhs, "same choices as lhs")->required();
    conv->add_option("--arrow", arrow, "evaluate at one class");
    auto* len = space_cmd("length", "lengths of classes");
    len->add_option("--rmax", rmax, "truncation");
    len->add_option("--arrow", arrow, "restrict to one class");
    auto* zp = space_cmd("zetapoly", "zeta polynomial of a class");
    zp->add_option("--arrow", arrow, "class id or label")->required();
    zp->add_option("--rmax", rmax, "number of interpolation points");
    auto* verify = space_cmd("verify", "full invariant suite");
    auto* dump = space_cmd("dump", "print the space as JSON");
    dump->add_option("--what", what, "tsg | oracle")->check(CLI::IsMember({"tsg", "oracle"}));

    auto t0 = std::chrono::steady_clock::now();
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        if (list->parsed()) return cmd_list(ctx);
        Space s = resolve(so);
        int rc = 0;
        if (check->parsed()) rc = cmd_check(ctx, s);
        else if (delta->parsed()) rc = cmd_delta(ctx, s, arrow);
        else if (mu->parsed()) rc = cmd_mu(ctx, s, rmax, arrow, connected);
        else if (conv->parsed()) rc = cmd_convolve(ctx, s, lhs, rhs, arrow);
        else if (len->parsed()) rc = cmd_length(ctx, s, rmax, arrow);
        else if (zp->parsed()) rc = cmd_zetapoly(ctx, s, arrow, rmax);
        else if (verify->parsed()) rc = cmd_verify(ctx, s);
        else if (dump->parsed()) rc = cmd_dump(ctx, s, what);
        if (ctx.timing)
            err << "time " << std::fixed << std::setprecision(3)
                << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
        return rc;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
        return 2;
    } catch (const DecompError& e) {
        err << e.what() << "\n";
        return exit_code(e.kind());
    }
}

}  // namespace decomp
