#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decomp/error.hpp"
#include "decomp/groupoid.hpp"
#include "decomp/pullback.hpp"
#include "support.hpp"

#include <algorithm>

using namespace decomp;
using decomp::testing::random_functor;
using decomp::testing::random_groupoid;

namespace {

GroupoidPtr share(FiniteGroupoid g) { return std::make_shared<FiniteGroupoid>(std::move(g)); }

bool has_kind(const std::vector<Diagnostic>& ds, const std::string& k) {
    return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.kind == k; });
}

// Two objects x, y; Aut = Z_2 at each; Hom(x,y) has two elements.  Written
// out by hand: loops l_x, l_y, isos u, v = u l_x.
GroupoidTable two_iso_objects() {
    GroupoidTable t;
    t.objects = {"x", "y"};
    t.morphisms = {{"ix", "x", "x"}, {"lx", "x", "x"}, {"iy", "y", "y"}, {"ly", "y", "y"},
                   {"u", "x", "y"},  {"v", "x", "y"},  {"U", "y", "x"},  {"V", "y", "x"}};
    t.identities = {{"x", "ix"}, {"y", "iy"}};
    t.inverse = {{"ix", "ix"}, {"lx", "lx"}, {"iy", "iy"}, {"ly", "ly"},
                 {"u", "U"},   {"v", "V"},   {"U", "u"},   {"V", "v"}};
    // model: x,y = Z_2 torsors; u = 0, v = 1; transports trivial
    auto val = [](const std::string& m) { return (m == "lx" || m == "ly" || m == "v" || m == "V") ? 1 : 0; };
    auto src = [&](const std::string& m) { for (auto& r : t.morphisms) if (r.id == m) return r.src; return std::string(); };
    auto tgt = [&](const std::string& m) { for (auto& r : t.morphisms) if (r.id == m) return r.tgt; return std::string(); };
    auto name = [](const std::string& s, const std::string& d, int e) -> std::string {
        if (s == "x" && d == "x") return e ? "lx" : "ix";
        if (s == "y" && d == "y") return e ? "ly" : "iy";
        if (s == "x") return e ? "v" : "u";
        return e ? "V" : "U";
    };
    for (auto& f : t.morphisms)
        for (auto& g : t.morphisms)
            if (f.tgt == g.src) t.compose.push_back({g.id, f.id, name(src(f.id), tgt(g.id), (val(f.id) + val(g.id)) % 2)});
    return t;
}

}  // namespace

TEST_CASE("validate: S_3 as a one-object groupoid has no diagnostics") {
    auto g = one_object(FiniteGroup::symmetric(3));
    auto t = to_table(g);
    CHECK(t.morphisms.size() == 6);
    CHECK(validate(t).empty());
    CHECK(from_table(t) == g);
}

TEST_CASE("validate: missing inverse and broken associativity are reported") {
    auto t = to_table(one_object(FiniteGroup::symmetric(3)));
    auto broken = t;
    broken.inverse.erase(broken.morphisms[2].id);
    auto ds = validate(broken);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0] == Diagnostic{"MissingInverse", {broken.morphisms[2].id}});
    CHECK_THROWS_AS(from_table(broken), DecompError);

    auto na = t;
    for (auto& c : na.compose)
        if (c[0] == na.morphisms[1].id && c[1] == na.morphisms[2].id) c[2] = na.morphisms[3].id == c[2] ? na.morphisms[4].id : na.morphisms[3].id;
    CHECK(has_kind(validate(na), "Associativity"));
}

TEST_CASE("iso_classes and cardinality") {
    auto d3 = discrete_groupoid(3);
    auto cl = iso_classes(d3);
    CHECK(cl.size() == 3);
    for (const auto& c : cl) CHECK(c.aut_order == 1);

    auto s3 = one_object(FiniteGroup::symmetric(3));
    CHECK(iso_classes(s3).size() == 1);
    CHECK(iso_classes(s3)[0].aut_order == 6);
    CHECK(cardinality(s3) == Rational(1, 6));
    CHECK(cardinality(empty_groupoid()) == Rational(0));
    CHECK(cardinality(discrete_groupoid(2)) == Rational(2));

    auto t = two_iso_objects();
    REQUIRE(validate(t).empty());
    auto g = from_table(t);
    auto ic = iso_classes(g);
    REQUIRE(ic.size() == 1);
    // oracle: count loops at the representative directly in the table
    int loops = 0;
    for (const auto& m : t.morphisms)
        if (m.src == g.names[ic[0].rep] && m.tgt == m.src) ++loops;
    CHECK(ic[0].aut_order == loops);
    CHECK(ic[0].aut_order == 2);
    CHECK(ic[0].objects.size() == 2);

    std::map<std::string, Morphism> ids;
    from_table(t, &ids);
    // composites in normal form agree with the table
    for (const auto& c : t.compose) CHECK(g.compose(ids[c[0]], ids[c[1]]) == ids[c[2]]);
}

TEST_CASE("homotopy fibres") {
    auto s3 = share(one_object(FiniteGroup::symmetric(3)));
    auto id = identity_functor(s3);
    auto fib = homotopy_fiber(id, 0);
    CHECK(fib.total->num_components() == 1);
    CHECK(fib.total->comps[0].aut->order == 1);

    auto g = share(product(one_object(FiniteGroup::cyclic(2)), discrete_groupoid(2)));
    auto t = terminal_functor(g);
    auto f2 = homotopy_fiber(t, 0);
    CHECK(is_equivalence(f2.proj));

    // 1 -> BG, |G| = 6: fibre is discrete with 6 points
    auto one = share(discrete_groupoid(1));
    auto incl = functor_from_maps(one, s3, {0}, [](const Morphism&) { return Morphism{0, 0, 0}; });
    auto f3 = homotopy_fiber(incl, 0);
    CHECK(f3.total->num_components() == 6);
    CHECK(cardinality(*f3.total) == Rational(6));
    CHECK(cardinality(*f3.total) * cardinality(*s3) == Rational(1));
    CHECK(homotopy_fiber_cardinality(incl, 0) == Rational(6));
    CHECK_THROWS_AS(homotopy_fiber(incl, 3), DecompError);
}

TEST_CASE("homotopy pullbacks") {
    std::mt19937 rng(7);
    auto A = random_groupoid(rng, 2, 2);
    auto C = share(product(one_object(FiniteGroup::cyclic(2)), discrete_groupoid(2)));
    while (A->num_objects() == 0) A = random_groupoid(rng, 2, 2);
    auto f = random_functor(A, C, rng);
    auto pc = homotopy_pullback(f, identity_functor(C));
    CHECK(is_equivalence(pc.pa));

    auto one = share(discrete_groupoid(1));
    auto B = share(one_object(FiniteGroup::cyclic(3)));
    auto p1 = homotopy_pullback(terminal_functor(A), terminal_functor(B));
    CHECK(cardinality(*p1.P) == cardinality(*A) * cardinality(*B));

    // A = B = 1 over BG: discrete, |G| objects (oracle: |Hom(*,*)| triples)
    auto s3 = share(one_object(FiniteGroup::symmetric(3)));
    auto pt = functor_from_maps(one, s3, {0}, [](const Morphism&) { return Morphism{0, 0, 0}; });
    auto p2 = homotopy_pullback(pt, pt);
    CHECK(p2.P->num_objects() == 6);
    CHECK(p2.P->num_components() == 6);

    CHECK_THROWS_AS(homotopy_pullback(pt, identity_functor(B)), DecompError);
}

TEST_CASE("is_pullback_square examples") {
    auto one = share(discrete_groupoid(1));
    auto s3 = share(one_object(FiniteGroup::symmetric(3)));
    auto pt = functor_from_maps(one, s3, {0}, [](const Morphism&) { return Morphism{0, 0, 0}; });

    // loop space square, made strict: replace one leg by its path fibration
    auto pr0 = path_replacement(pt);
    auto lsp = strict_pullback(pt, pr0.proj);
    CommutingSquare loop{lsp.pa, lsp.pb, pt, pr0.proj};
    CHECK(cardinality(*lsp.P) == Rational(6));
    CHECK(is_pullback_square_explicit(loop));
    CHECK(is_pullback_square(loop));
    // the naive square with both legs collapsing the loop space is not strict-pullback
    auto fib = homotopy_fiber(pt, 0);
    auto lt = terminal_functor(fib.total);
    lt.cod = one;
    CHECK_FALSE(is_pullback_square({lt, lt, pt, pt}));

    // the iso-comma square, made strict by the path replacement
    std::mt19937 rng(3);
    for (int it = 0; it < 20; ++it) {
        auto A = random_groupoid(rng, 2, 2), B = random_groupoid(rng, 2, 2);
        auto C = random_groupoid(rng, 2, 2);
        if (C->num_objects() == 0) continue;
        auto f = random_functor(A, C, rng), g = random_functor(B, C, rng);
        auto pr = path_replacement(g);
        auto sp = strict_pullback(f, pr.proj);
        CommutingSquare sq{sp.pa, sp.pb, f, pr.proj};
        CHECK(is_pullback_square(sq));
        CHECK(is_pullback_square_explicit(sq));
        CHECK(cardinality(*sp.P) == pullback_cardinality(f, g));
    }

    // empty P over nonempty data
    auto e = share(empty_groupoid());
    auto ef = functor_from_maps(e, one, {}, [](const Morphism& m) { return m; });
    auto id1 = identity_functor(one);
    CommutingSquare emp{ef, ef, id1, id1};
    CHECK_FALSE(is_pullback_square(emp));
    CHECK_FALSE(is_pullback_square_explicit(emp));
}

TEST_CASE("non-commuting square is rejected") {
    auto two = share(discrete_groupoid(2));
    auto one = share(discrete_groupoid(1));
    auto a = functor_from_maps(one, two, {0}, [](const Morphism&) { return Morphism{0, 0, 0}; });
    auto b = functor_from_maps(one, two, {1}, [](const Morphism&) { return Morphism{1, 1, 0}; });
    auto id = identity_functor(one);
    CommutingSquare sq{id, id, a, b};
    CHECK_THROWS_AS(is_pullback_square(sq), DecompError);
}

TEST_CASE("equivalences and full faithfulness") {
    auto g = share(disjoint_union(discrete_groupoid(1, "a"), discrete_groupoid(1, "b")));
    CHECK(is_equivalence(identity_functor(g)));
    auto one = share(discrete_groupoid(1));
    auto inc = functor_from_maps(one, g, {0}, [](const Morphism&) { return Morphism{0, 0, 0}; });
    CHECK_FALSE(is_equivalence(inc));
    CHECK(is_fully_faithful(inc));

    // collapse of two isomorphic objects onto one
    auto t = share(from_table(two_iso_objects()));
    auto z2 = share(one_object(FiniteGroup::cyclic(2)));
    auto col = functor_from_maps(t, z2, {0, 0}, [](const Morphism& m) { return Morphism{0, 0, m.elem}; });
    CHECK(validate(col).empty());
    // oracle: hom-set sizes |Hom(x,y)| = |Hom(Fx,Fy)| = 2 for all pairs
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) CHECK(t->hom(x, y).size() == z2->hom(0, 0).size());
    CHECK(is_equivalence(col));

    // two points -> one point
    auto two = share(discrete_groupoid(2));
    CHECK_FALSE(is_fully_faithful(terminal_functor(two)));

    // BZ_2 -> B(Z_2 x Z_2), a subgroup inclusion
    auto z22 = share(one_object(FiniteGroup::product(*FiniteGroup::cyclic(2), *FiniteGroup::cyclic(2))));
    auto sub = functor_from_maps(z2, z22, {0}, [](const Morphism& m) { return Morphism{0, 0, m.elem ? 2 : 0}; });
    CHECK(validate(sub).empty());
    CHECK(z2->hom(0, 0).size() != z22->hom(0, 0).size());
    CHECK_FALSE(is_fully_faithful(sub));
}

TEST_CASE("essential image complement") {
    auto g = share(discrete_groupoid(3));
    CHECK(essential_image_complement(identity_functor(g)).sub->num_objects() == 0);
    auto one = share(discrete_groupoid(1));
    auto inc = functor_from_maps(one, g, {1}, [](const Morphism&) { return Morphism{1, 1, 0}; });
    auto cpl = essential_image_complement(inc);
    CHECK(cpl.sub->num_objects() == 2);
    CHECK(cardinality(*cpl.sub) + cardinality(*one) == cardinality(*g));
    CHECK_THROWS_AS(essential_image_complement(terminal_functor(g)), DecompError);
}

TEST_CASE("disjoint union and product") {
    auto a = discrete_groupoid(1, "a"), b = discrete_groupoid(1, "b");
    CHECK(cardinality(disjoint_union(a, b)) == Rational(2));
    auto s2 = one_object(FiniteGroup::symmetric(2)), s3 = one_object(FiniteGroup::symmetric(3));
    CHECK(cardinality(product(s2, s3)) == Rational(1, 12));
    auto g = share(s3);
    auto u = share(disjoint_union(s3, empty_groupoid()));
    auto f = functor_from_maps(g, u, {0}, [](const Morphism& m) { return m; });
    CHECK(is_equivalence(f));
}

TEST_CASE("property: fibre-sum formula and loop-space identity on random groupoids") {
    std::mt19937 rng(2024);
    int done = 0;
    while (done < 100) {
        auto E = random_groupoid(rng), B = random_groupoid(rng);
        if (B->num_objects() == 0) continue;
        auto F = random_functor(E, B, rng);
        REQUIRE(validate(F).empty());
        Rational sum(0);
        for (const auto& c : iso_classes(*B)) {
            auto fib = homotopy_fiber(F, c.rep);
            CHECK(cardinality(*fib.total) == homotopy_fiber_cardinality(F, c.rep));
            sum += cardinality(*fib.total) * Rational(1, c.aut_order);
        }
        CHECK(sum == cardinality(*E));
        for (const auto& c : iso_classes(*B)) {
            auto one = share(discrete_groupoid(1));
            auto name = functor_from_maps(one, B, {c.rep}, [&](const Morphism&) { return Morphism{c.rep, c.rep, 0}; });
            CHECK(cardinality(*homotopy_fiber(name, c.rep).total) * Rational(1, c.aut_order) == Rational(1));
        }
        ++done;
    }
}

TEST_CASE("property: round trips and route agreement on random squares") {
    std::mt19937 rng(99);
    int agree_true = 0, agree_false = 0;
    for (int it = 0; it < 60; ++it) {
        auto A = random_groupoid(rng, 2, 2), B = random_groupoid(rng, 2, 2), C = random_groupoid(rng, 2, 2);
        if (C->num_objects() == 0) continue;
        auto f = random_functor(A, C, rng), g = random_functor(B, C, rng);
        // iso-comma round trip via the path replacement
        auto pr = path_replacement(g);
        CHECK(is_equivalence(pr.along));
        CHECK(compose(pr.proj, pr.along) == g);
        // strict pullback of f and g: commutes, pullback or not
        auto sp = strict_pullback(f, g);
        CommutingSquare sq{sp.pa, sp.pb, f, g};
        bool fast = is_pullback_square(sq), slow = is_pullback_square_explicit(sq);
        CHECK(fast == slow);
        (fast ? agree_true : agree_false)++;
        // table round trip
        CHECK(from_table(to_table(*A)) == *A);
    }
    CHECK(agree_true > 0);
    CHECK(agree_false > 0);
}

TEST_CASE("property: pasting law on random strict prisms") {
    std::mt19937 rng(5);
    int nontrivial = 0;
    for (int it = 0; it < 60; ++it) {
        auto A = random_groupoid(rng, 2, 2), B = random_groupoid(rng, 2, 2), C = random_groupoid(rng, 2, 2);
        auto A2 = random_groupoid(rng, 2, 2);
        if (C->num_objects() == 0 || A->num_objects() == 0) continue;
        auto f = random_functor(A, C, rng), g = random_functor(B, C, rng), h = random_functor(A2, A, rng);
        auto pr = path_replacement(g);
        auto right = strict_pullback(f, pr.proj);  // a pullback
        REQUIRE(is_pullback_square({right.pa, right.pb, f, pr.proj}));
        auto left = strict_pullback(h, right.pa);
        // perturb the left square: drop objects or keep all
        std::vector<int> keep;
        for (int x = 0; x < left.P->num_objects(); ++x)
            if (rng() % 4) keep.push_back(x);
        auto inc = full_subgroupoid(left.P, keep);
        auto l = compose(left.pa, inc.incl), t = compose(left.pb, inc.incl);
        bool lpb = is_pullback_square({l, t, h, right.pa});
        bool opb = is_pullback_square({l, compose(right.pb, t), compose(f, h), pr.proj});
        CHECK(lpb == opb);
        if (!lpb) ++nontrivial;
    }
    CHECK(nontrivial > 0);
}
