// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Expected values come from the brute-force oracles in oracles.hpp or are
// written out here; time limits are wall-clock seconds.

#include "decomp/error.hpp"
#include "decomp/gallery.hpp"
#include "decomp/incidence.hpp"
#include "decomp/simplicial.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace decomp;
using namespace decomp::testing;

namespace {

// Collects failed expectations for one criterion.
struct Ctx {
    std::vector<std::string> failures;
    int checks = 0;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures.size() < 8) failures.push_back(what);
        else if (!ok) failures.back() = "...";
    }
    void eq(const Rational& got, const Rational& want, const std::string& what) {
        std::ostringstream s;
        s << what << ": got " << got.str() << ", want " << want.str();
        expect(got == want, s.str());
    }
};

struct Criterion {
    int number;
    std::string name;
    double limit_s;
    std::function<void(Ctx&)> body;
};

struct Space {
    std::string name;
    TSG X;
    bool segal;  // expected segal_check outcome, all squares
};

std::vector<Space> gallery_spaces() {
    auto inj = injection_fixture(3);
    return {
        {"chain(3)", poset_nerve(chain_poset(3), 4), true},
        {"antichain(3)", poset_nerve(antichain(3), 4), true},
        {"boolean(2)", poset_nerve(boolean_lattice(2), 4), true},
        {"nongraded", poset_nerve(nongraded_poset(), 4), true},
        {"bz2 fat nerve", bz2_fat_nerve(4).tsg, true},
        {"S3 strict nerve", strict_nerve(group_category(*FiniteGroup::symmetric(3)), 4), true},
        {"binomial(3)", binomial_space(3).tsg, true},
        {"surjections(3)", surjections_space(3).tsg, true},
        {"injections(3)", inj->plain.tsg, true},
        {"ordered injections(3)", inj->ordered.tsg, true},
        {"graphs(3)", graphs_space(3).tsg, false},
        {"qvect(2,3)", qvect_space(2, 3).tsg, false},
        {"qvect(3,2)", qvect_space(3, 2).tsg, false},
        {"forests(3)", forests_space(3).tsg, false},
    };
}

struct NamedOracle {
    std::string name;
    IncidenceOracle O;
};

std::vector<NamedOracle> all_oracles() {
    auto inj = injection_fixture(3);
    return {
        {"natplus(8)", nat_plus_oracle(8)},
        {"divisibility(12)", divisibility_oracle(12)},
        {"binomial(4)", binomial_oracle(4)},
        {"qvect(2,3)", qvect_oracle(2, 3)},
        {"qvect(3,2)", qvect_oracle(3, 2)},
        {"surjections(3)", surjections_oracle(3)},
        {"graphs(4)", graphs_oracle(4)},
        {"graphs space(3)", graphs_space_oracle(3)},
        {"forests space(3)", forests_space_oracle(3)},
        {"binomial space(3)", binomial_space_oracle(3)},
        {"qvect space(2,3)", to_oracle(qvect_space(2, 3).tsg)},
        {"injections(3)", to_oracle(inj->plain.tsg)},
        {"ordered injections(3)", to_oracle(inj->ordered.tsg)},
        {"chain(3)", to_oracle(poset_nerve(chain_poset(3), 4))},
        {"boolean(3)", to_oracle(poset_nerve(boolean_lattice(3), 4))},
    };
}

std::string cls(const IncidenceOracle& O, int f) { return O.classes[f].id; }

// --- 1 ---------------------------------------------------------------------

void axiom_matrix(Ctx& c) {
    for (auto& s : gallery_spaces()) {
        c.expect(validate_tsg(s.X).empty(), s.name + ": simplicial identities");
        c.expect(all_pass(decomposition_check(s.X)), s.name + ": decomposition squares");
        auto seg = segal_check(s.X);
        c.expect(all_pass(seg) == s.segal, s.name + ": segal = " + bits(seg));
        if (!s.segal) c.expect(!seg[0].pullback, s.name + ": segal fails at n=1");
    }
}

// --- 2 ---------------------------------------------------------------------

void decalage_segal(Ctx& c) {
    for (auto& s : gallery_spaces())
        for (bool up : {false, true}) {
            auto D = up ? decalage_upper(s.X) : decalage_lower(s.X);
            std::string tag = s.name + (up ? " upper" : " lower");
            c.expect(all_pass(segal_check(D->dec)), tag + ": decalage is Segal");
            auto r = culf_check(D->counit);
            c.expect(r.culf && r.precondition_verified, tag + ": counit is cULF");
        }
}

// --- 3 ---------------------------------------------------------------------

void binomial_coalgebra(Ctx& c) {
    std::vector<std::vector<long>> C(5, std::vector<long>(5, 0));
    for (int n = 0; n <= 4; ++n) {
        C[n][0] = 1;
        for (int k = 1; k <= n; ++k) C[n][k] = C[n - 1][k - 1] + (k < n ? C[n - 1][k] : 0);
    }
    for (auto& [name, O] : std::vector<NamedOracle>{{"oracle", binomial_oracle(4)}, {"model", to_oracle(binomial_space(4, 3).tsg)}}) {
        for (int n = 0; n <= 4; ++n) {
            auto d = comultiply(O, O.find(std::to_string(n)));
            c.expect(static_cast<int>(d.size()) == n + 1, name + ": Delta(" + std::to_string(n) + ") has n+1 terms");
            for (int a = 0; a <= n; ++a)
                c.eq(d[{O.find(std::to_string(a)), O.find(std::to_string(n - a))}], Rational(C[n][a]),
                     name + " c^" + std::to_string(n) + "_" + std::to_string(a));
        }
        auto mu = mobius(O);
        for (int n = 0; n <= 4; ++n) c.eq(mu[O.find(std::to_string(n))], Rational(n % 2 ? -1 : 1), name + " mu(" + std::to_string(n) + ")");
    }
}

// --- 4 ---------------------------------------------------------------------

void qbinomials(Ctx& c) {
    auto O = qvect_oracle(2, 3);
    auto E = to_oracle(qvect_space(2, 3).tsg);
    for (int n = 0; n <= 3; ++n) {
        auto sub = brute_subspaces(2, n);
        for (int k = 0; k <= n; ++k) {
            auto tag = "(" + std::to_string(n) + "," + std::to_string(k) + ")_2";
            auto f = std::to_string(n), a = std::to_string(k), b = std::to_string(n - k);
            c.eq(section_coefficient(O, f, a, b), Rational(sub[k]), "oracle " + tag);
            c.eq(section_coefficient(E, f, a, b), Rational(sub[k]), "model " + tag);
        }
    }
    c.eq(section_coefficient(O, "2", "1", "1"), Rational(3), "(2,1)_2");
    c.eq(section_coefficient(O, "3", "1", "2"), Rational(7), "(3,1)_2");
    c.eq(section_coefficient(O, "3", "2", "1"), Rational(7), "(3,2)_2");
    const long want[] = {1, -1, 2, -8};
    for (auto* P : {&O, &E}) {
        auto mu = mobius(*P);
        for (int n = 0; n <= 3; ++n) c.eq(mu[P->find(std::to_string(n))], Rational(want[n]), "mu(" + std::to_string(n) + ")");
    }
}

// --- 5 ---------------------------------------------------------------------

void faa_di_bruno(Ctx& c) {
    auto X = surjections_space(3).tsg;
    auto O = surjections_oracle(3);
    const std::string F = "3->1:3", A = "3->2:1+2", B = "2->1:2";
    c.eq(section_coefficient(O, F, A, B), Rational(3), "oracle route");

    // triple fibre: sum over X_2 classes over (f, a, b) of |Aut f| / |Aut sigma|
    int f = comp_of(X, F), a = comp_of(X, A), b = comp_of(X, B);
    c.expect(f >= 0 && a >= 0 && b >= 0, "classes present in the model");
    if (f < 0 || a < 0 || b < 0) return;
    const auto& X1 = *X.X[1];
    const auto& X2 = *X.X[2];
    Rational triple, segal;
    int hits = 0;
    for (int k = 0; k < X2.num_components(); ++k) {
        int s = X2.base(k);
        if (X1.comp[X.face(2, 1)(s)] != f || X1.comp[X.face(2, 2)(s)] != a || X1.comp[X.face(2, 0)(s)] != b) continue;
        ++hits;
        triple += Rational(X1.comps[f].aut->order, X2.comps[k].aut->order);
        int y = X.face(1, 0)(X.face(2, 2)(s));
        segal = segal_section_coefficient(X.X[0]->aut_order(y), X1.comps[f].aut->order, X1.comps[a].aut->order,
                                          X1.comps[b].aut->order);
    }
    c.expect(hits == 1, "one X_2 class over the triple");
    c.eq(triple, Rational(3), "triple-fibre route");
    c.eq(segal, Rational(3), "Segal formula route");

    auto mu = mobius(O);
    c.eq(mu[O.find("1->1:1")], Rational(1), "mu(1->1)");
    c.eq(mu[O.find("2->1:2")], Rational(-1), "mu(2->1)");
    c.eq(mu[O.find("3->1:3")], Rational(2), "mu(3->1)");
}

// --- 6 ---------------------------------------------------------------------

void cherry(Ctx& c) {
    auto F = forests_space(3).tsg;
    int T = comp_of(F, "(()())");
    c.expect(T >= 0, "cherry class present");
    if (T < 0) return;
    auto fib = homotopy_fiber(F.face(2, 1), F.X[1]->base(T));
    c.expect(fib.total->num_components() == 5, "fibre has 5 components, got " + std::to_string(fib.total->num_components()));
    for (auto& k : fib.total->comps) c.expect(k.aut->order == 1, "fibre points have no automorphisms");
    c.eq(cardinality(*fib.total), Rational(5), "fibre cardinality");

    // brute force: down-closed vertex subsets of the tree
    auto par = parse_forest("(()())");
    int cuts = 0;
    std::map<std::pair<std::string, std::string>, int> collapsed;
    for (int S = 0; S < 8; ++S) {
        bool down = true;
        for (int v = 0; v < 3; ++v)
            if ((S >> v & 1) && par[v] >= 0 && !(S >> par[v] & 1)) down = false;
        if (!down) continue;
        ++cuts;
        ++collapsed[{fcanon(restrict_forest(par, S)), fcanon(restrict_forest(par, 7 ^ S))}];
    }
    c.expect(cuts == 5, "brute force: 5 cuts");
    c.expect(collapsed.size() == 4, "brute force: 4 iso classes of cuts");
    int classes = 0;
    for (int k = 0; k < F.X[2]->num_components(); ++k)
        if (F.X[1]->comp[F.face(2, 1)(F.X[2]->base(k))] == T) ++classes;
    c.expect(classes == 4, "iso-class collapse gives 4");
}

// --- 7 ---------------------------------------------------------------------

void schmitt_graphs(Ctx& c) {
    for (auto& [name, O] : std::vector<NamedOracle>{{"oracle", graphs_oracle(4)}, {"model", graphs_space_oracle(3)}}) {
        std::map<long, int> by_canon;
        for (int k = 0; k < O.size(); ++k) by_canon[canon(parse_graph(cls(O, k)))] = k;
        c.expect(static_cast<int>(by_canon.size()) == O.size(), name + ": ids are distinct graphs");
        auto mu = mobius(O);
        for (int f = 0; f < O.size(); ++f) {
            G g = parse_graph(cls(O, f));
            std::map<std::pair<int, int>, long> brute;
            for (int S = 0; S < (1 << g.n); ++S)
                ++brute[{by_canon.at(canon(induced(g, S))), by_canon.at(canon(induced(g, ((1 << g.n) - 1) ^ S)))}];
            auto d = comultiply(O, f);
            c.expect(d.size() == brute.size(), name + " " + cls(O, f) + ": number of terms");
            for (auto& [ab, k] : brute) c.eq(d[ab], Rational(k), name + " " + cls(O, f) + " term");
            c.eq(mu[f], Rational(g.n % 2 ? -1 : 1), name + " mu(" + cls(O, f) + ")");
        }
        auto d = comultiply(O, O.find("g2:01"));
        c.expect(d.size() == 3, name + ": Delta(K2) has 3 terms");
        c.eq(d[{O.find("g0:"), O.find("g2:01")}], Rational(1), name + " empty x K2");
        c.eq(d[{O.find("g1:"), O.find("g1:")}], Rational(2), name + " point x point");
        c.eq(d[{O.find("g2:01"), O.find("g0:")}], Rational(1), name + " K2 x empty");
    }
}

// --- 8, 9 ------------------------------------------------------------------

void three_routes(Ctx& c) {
    std::vector<NamedOracle> os = {{"natplus(8)", nat_plus_oracle(8)},
                                   {"divisibility(12)", divisibility_oracle(12)},
                                   {"binomial(4)", binomial_oracle(4)},
                                   {"qvect(2,3)", qvect_oracle(2, 3)},
                                   {"surjections(3)", surjections_oracle(3)}};
    for (auto& [name, O] : os) {
        auto m = mobius_partial(O);
        auto rec = mobius_recursive(O);
        int n = 0;
        for (int f = 0; f < O.size(); ++f) {
            if (!m.defined[f] || !O.closed[f]) continue;
            ++n;
            c.eq(rec[f], m.mu[f], name + " " + cls(O, f) + ": triangular solve");
            auto zp = zeta_polynomial(O, f);
            c.expect(zp.at_minus_one.has_value(), name + " " + cls(O, f) + ": zeta polynomial exists");
            if (zp.at_minus_one) c.eq(*zp.at_minus_one, m.mu[f], name + " " + cls(O, f) + ": zeta polynomial at -1");
        }
        c.expect(n == O.size(), name + ": every class tight and safe");
    }
    // divisibility against the arithmetic sieve
    auto D = divisibility_oracle(12);
    auto mu = mobius(D);
    for (int k = 1; k <= 12; ++k) c.eq(mu[D.find(std::to_string(k))], Rational(sieve_mu(k)), "sieve mu(" + std::to_string(k) + ")");
}

void inversion(Ctx& c) {
    for (auto& [name, O] : all_oracles()) {
        auto m = mobius_partial(O);
        auto z = zeta(O), eps = epsilon(O);
        auto zm = convolve(O, z, m.mu), mz = convolve(O, m.mu, z);
        int n = 0;
        for (int f = 0; f < O.size(); ++f) {
            if (!m.defined[f] || !O.closed[f]) continue;
            ++n;
            c.eq(zm[f], eps[f], name + " " + cls(O, f) + ": zeta*mu");
            c.eq(mz[f], eps[f], name + " " + cls(O, f) + ": mu*zeta");
        }
        c.expect(n > 0, name + ": some class checked");
    }
}

// --- 10 --------------------------------------------------------------------

void properties(Ctx& c) {
    for (auto& [name, O] : all_oracles())
        for (int f = 0; f < O.size(); ++f) {
            if (!O.closed[f]) continue;
            c.expect(coassociativity_check(O, f), name + " " + cls(O, f) + ": coassociative");
            c.expect(counit_check(O, f), name + " " + cls(O, f) + ": counit");
        }

    std::mt19937 rng(2024);
    for (int done = 0; done < 100;) {
        auto E = random_groupoid(rng), B = random_groupoid(rng);
        if (B->num_objects() == 0) continue;
        auto F = random_functor(E, B, rng);
        c.expect(validate(F).empty(), "random functor is a functor");
        Rational sum;
        for (const auto& k : iso_classes(*B)) sum += homotopy_fiber_cardinality(F, k.rep) * Rational(1, k.aut_order);
        c.eq(sum, cardinality(*E), "fibre-sum formula");
        for (const auto& k : iso_classes(*B)) {
            auto one = std::make_shared<FiniteGroupoid>(discrete_groupoid(1));
            auto pt = functor_from_maps(one, B, {k.rep}, [&](const Morphism&) { return Morphism{k.rep, k.rep, 0}; });
            c.eq(cardinality(*homotopy_fiber(pt, k.rep).total) * Rational(1, k.aut_order), Rational(1), "loop-space identity");
        }
        ++done;
    }

    for (auto X : {binomial_space(3).tsg, forests_space(3).tsg})
        for (int n = 1; n <= 3; ++n) {
            Rational total;
            std::vector<int> seen(X.X[n]->num_objects(), 0);
            for (int w = 0; w < (1 << n); ++w) {
                std::string word;
                for (int i = 0; i < n; ++i) word += (w >> i & 1) ? 'a' : '0';
                auto inc = word_subgroupoid(X, word);
                total += cardinality(*inc.sub);
                for (int x = 0; x < inc.sub->num_objects(); ++x) ++seen[inc.incl(x)];
                c.expect(is_fully_faithful(inc.incl), "word piece is full: " + word);
            }
            c.eq(total, cardinality(*X.X[n]), "word pieces cover X_" + std::to_string(n));
            c.expect(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }), "word pieces are disjoint");
        }

    for (auto X : {binomial_space(3).tsg, forests_space(3).tsg, surjections_space(3).tsg}) {
        auto O = to_oracle(X);
        for (int r = 1; r <= 3; ++r) {
            auto ph = phi(O, r);
            for (int f = 0; f < X.X[1]->num_components(); ++f) {
                int k = O.find(X.class_id(f));
                if (!O.closed[k]) continue;
                c.eq(ph[k], cardinality(*effective_fiber(X, f, r).total), X.class_id(f) + ": Phi_" + std::to_string(r));
            }
        }
    }

    auto Gs = graphs_space(3), Bs = binomial_space(3);
    auto m = graphs_to_binomial(Gs, Bs);
    c.expect(culf_check(m).culf, "graphs -> binomial is cULF");
    auto OG = to_oracle(Gs.tsg), OB = to_oracle(Bs.tsg);
    auto muG = mobius(OG), muB = mobius(OB);
    for (int r = 0; r <= 3; ++r) {
        auto pg = phi(OG, r), pb = phi(OB, r);
        for (int k = 0; k < Gs.tsg.X[1]->num_components(); ++k) {
            int img = Bs.tsg.X[1]->comp[m.f[1](Gs.tsg.X[1]->base(k))];
            int i = OG.find(Gs.tsg.class_id(k)), j = OB.find(Bs.tsg.class_id(img));
            c.eq(pg[i], pb[j], "graphs Phi transport");
            if (r == 0) c.eq(muG[i], muB[j], "graphs mu transport");
        }
    }
    auto fx = injection_fixture(3);
    c.expect(culf_check(fx->forget).culf, "injection forget is cULF");
    auto OO = to_oracle(fx->ordered.tsg), OP = to_oracle(fx->plain.tsg);
    auto muO = mobius(OO), muP = mobius(OP);
    const auto& Y = fx->ordered.tsg;
    const auto& Xp = fx->plain.tsg;
    for (int k = 0; k < Y.X[1]->num_components(); ++k) {
        int img = Xp.X[1]->comp[fx->forget.f[1](Y.X[1]->base(k))];
        int i = OO.find(Y.class_id(k)), j = OP.find(Xp.class_id(img));
        for (int r = 1; r <= 3; ++r) c.eq(phi(OO, r)[i], phi(OP, r)[j], "injections Phi transport");
        c.eq(muO[i], muP[j], "injections mu transport");
    }
}

// --- 11 --------------------------------------------------------------------

void negative_controls(Ctx& c) {
    c.expect(!all_pass(decomposition_check(corrupted_poset_nerve(3))), "corrupted nerve fails decomposition_check");

    auto B = binomial_oracle(3);
    int f = B.find("3");
    c.expect(coassociativity_check(B, f), "unperturbed binomial is coassociative");
    c.expect(!coassociativity_check(perturbed(B, f, B.find("1"), B.find("2"), Rational(5)), f),
             "perturbed oracle fails coassociativity");

    c.expect(!grading_check(to_oracle(poset_nerve(nongraded_poset(), 4))), "non-graded poset fails grading");
    for (auto& [name, O] : all_oracles()) c.expect(grading_check(O), name + " passes grading");
}

}  // namespace

int main() {
    std::vector<Criterion> cs = {
        {1, "axiom matrix: decomposition and Segal on the gallery", 60, axiom_matrix},
        {2, "decalages are Segal with cULF counits", 60, decalage_segal},
        {3, "binomial coefficients and mu = (-1)^n", 10, binomial_coalgebra},
        {4, "q-binomials by subspace enumeration, mu = (-1)^n 2^C(n,2)", 30, qbinomials},
        {5, "Faa di Bruno coefficient 3 by three routes, connected mu", 60, faa_di_bruno},
        {6, "Connes-Kreimer cherry: 5-point fibre vs 4 classes", 10, cherry},
        {7, "Schmitt graphs: Delta(K2) and mu = (-1)^#V", 60, schmitt_graphs},
        {8, "three-route Mobius agreement", 90, three_routes},
        {9, "zeta*mu = eps = mu*zeta", 90, inversion},
        {10, "property suites", 120, properties},
        {11, "negative controls", 10, negative_controls},
    };
    int failed = 0;
    double total = 0;
    for (auto& cr : cs) {
        Ctx ctx;
        std::string error;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.body(ctx);
        } catch (const std::exception& e) {
            error = e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        total += s;
        bool ok = error.empty() && ctx.failures.empty() && s <= cr.limit_s;
        failed += !ok;
        std::printf("%s  %2d  %-60s %6d checks  %7.3f s (limit %g s)\n", ok ? "PASS" : "FAIL", cr.number, cr.name.c_str(),
                    ctx.checks, s, cr.limit_s);
        if (!error.empty()) std::printf("        exception: %s\n", error.c_str());
        for (auto& f : ctx.failures) std::printf("        %s\n", f.c_str());
        if (s > cr.limit_s) std::printf("        over the time limit\n");
    }
    std::printf("%d/%zu criteria passed in %.3f s\n", static_cast<int>(cs.size()) - failed, cs.size(), total);
    return failed ? 1 : 0;
}
