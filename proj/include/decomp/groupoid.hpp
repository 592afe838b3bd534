#pragma once
// Finite 1-groupoids in skeletal-plus-transport normal form.
//
// Every connected component carries one finite group G (elements 0..|G|-1,
// 0 the unit) and an ordered object list.  The first object is the base;
// every object x has an implicit transport t_x from the base, and the
// morphism (x, y, g) stands for t_y . g . t_x^{-1}.  Thus
//     (y,z,h) o (x,y,g) = (x,z,h*g),   (x,y,g)^{-1} = (y,x,g^{-1}),
// and Hom(x,y) is a G-torsor for x,y in the same component.  The
// extensional description (GroupoidTable) is what users read and write; it
// is converted in and out of this form.

#include "decomp/rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace decomp {

struct FiniteGroup {
    int order = 1;
    std::vector<int> mul;  // mul[a*order+b] = a*b
    std::vector<int> inv;

    int m(int a, int b) const { return mul[static_cast<size_t>(a) * order + b]; }
    int i(int a) const { return inv[a]; }

    static std::shared_ptr<const FiniteGroup> trivial();
    static std::shared_ptr<const FiniteGroup> cyclic(int n);
    static std::shared_ptr<const FiniteGroup> symmetric(int n);
    static std::shared_ptr<const FiniteGroup> product(const FiniteGroup& a, const FiniteGroup& b);
    // Builds from a multiplication table; identity must be element 0.
    static std::shared_ptr<const FiniteGroup> from_table(int order, std::vector<int> mul);
    bool operator==(const FiniteGroup& o) const { return order == o.order && mul == o.mul; }
};
using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct Morphism {
    int src = 0, tgt = 0, elem = 0;
    bool operator==(const Morphism& o) const = default;
};

struct Component {
    GroupPtr aut;
    std::vector<int> objects;  // objects[0] is the base
};

class FiniteGroupoid {
public:
    std::vector<std::string> names;  // object ids, unique
    std::vector<int> comp;           // object -> component
    std::vector<Component> comps;

    int num_objects() const { return static_cast<int>(names.size()); }
    int num_components() const { return static_cast<int>(comps.size()); }
    int base(int c) const { return comps[c].objects[0]; }
    const FiniteGroup& group_of(int x) const { return *comps[comp[x]].aut; }
    int aut_order(int x) const { return group_of(x).order; }
    bool connected(int x, int y) const { return comp[x] == comp[y]; }
    std::size_t num_morphisms() const;

    Morphism identity(int x) const { return {x, x, 0}; }
    Morphism compose(const Morphism& g, const Morphism& f) const;  // g o f
    Morphism inverse(const Morphism& m) const;
    // Hom(x,y) in enumeration order; empty if disconnected.
    std::vector<Morphism> hom(int x, int y) const;
    // index of a name, -1 if absent
    int find(const std::string& name) const;

    // Appends a component; returns its index.
    int add_component(GroupPtr aut, const std::vector<std::string>& objs);

    bool operator==(const FiniteGroupoid& o) const;
};
using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

// --- extensional form ------------------------------------------------------

struct GroupoidTable {
    struct Mor { std::string id, src, tgt; };
    std::vector<std::string> objects;
    std::vector<Mor> morphisms;
    std::map<std::string, std::string> identities;
    std::vector<std::array<std::string, 3>> compose;  // (g, f, g o f)
    std::map<std::string, std::string> inverse;
};

struct Diagnostic {
    std::string kind;                // e.g. "MissingInverse", "Associativity"
    std::vector<std::string> ids;    // offending morphisms/objects
    bool operator==(const Diagnostic& o) const = default;
};

std::vector<Diagnostic> validate(const GroupoidTable& t);

// Normalises a valid table.  morph_ids, when non-null, receives the normal
// form of each morphism id.  Throws InvalidGroupoid if validate() fails.
FiniteGroupoid from_table(const GroupoidTable& t,
                          std::map<std::string, Morphism>* morph_ids = nullptr);
GroupoidTable to_table(const FiniteGroupoid& g);
std::string morphism_id(const FiniteGroupoid& g, const Morphism& m);

// --- functors ------------------------------------------------------------

struct GroupoidFunctor {
    GroupoidPtr dom, cod;
    std::vector<int> obj;               // object map
    std::vector<int> ti;                // elem of F(t_x) : F(base) -> F(x)
    std::vector<std::vector<int>> ai;   // per component: loop elem -> elem at F(base)

    Morphism apply(const Morphism& m) const;
    int operator()(int x) const { return obj[x]; }
    // Same dom/cod (by identity or value) and same data.
    bool operator==(const GroupoidFunctor& o) const;
};

std::vector<Diagnostic> validate(const GroupoidFunctor& f);
GroupoidFunctor identity_functor(GroupoidPtr g);
GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f);  // g o f
// Functor from explicit object and morphism maps (morphisms given on
// transports and base loops are enough; everything is read off `mor`).
GroupoidFunctor functor_from_maps(GroupoidPtr dom, GroupoidPtr cod, const std::vector<int>& obj,
                                  const std::function<Morphism(const Morphism&)>& mor);
GroupoidFunctor terminal_functor(GroupoidPtr g);  // G -> 1

// --- decisions and constructions -------------------------------------------

struct IsoClass {
    int rep;
    std::vector<int> objects;
    int aut_order;
};

std::vector<IsoClass> iso_classes(const FiniteGroupoid& g);
Rational cardinality(const FiniteGroupoid& g);

bool is_fully_faithful(const GroupoidFunctor& f);
bool is_equivalence(const GroupoidFunctor& f);

struct Inclusion {
    GroupoidPtr sub;
    GroupoidFunctor incl;  // sub -> ambient
};

// Full subgroupoid on a set of objects (order of `keep` is irrelevant).
Inclusion full_subgroupoid(GroupoidPtr g, const std::vector<int>& keep);
// Requires F fully faithful, else NotMono.
Inclusion essential_image_complement(const GroupoidFunctor& f);
std::vector<bool> essential_image(const GroupoidFunctor& f);  // per codomain object

FiniteGroupoid disjoint_union(const FiniteGroupoid& g, const FiniteGroupoid& h);
FiniteGroupoid product(const FiniteGroupoid& g, const FiniteGroupoid& h);
FiniteGroupoid discrete_groupoid(int n, const std::string& prefix = "p");
FiniteGroupoid one_object(GroupPtr g, const std::string& name = "*");
FiniteGroupoid empty_groupoid();

struct Fibration {
    GroupoidPtr total;
    GroupoidFunctor proj;
};

// Objects (e, beta : F e -> b); projection to E.
Fibration homotopy_fiber(const GroupoidFunctor& f, int b);
// Cardinality of the fibre, by the orbit formula (no construction).
Rational homotopy_fiber_cardinality(const GroupoidFunctor& f, int b);

struct PullbackCone {
    GroupoidPtr P;
    GroupoidFunctor pa, pb;  // P -> A, P -> B
    std::vector<int> gamma;  // iso-comma only: elem of gamma : F a -> G b per object
};

// Iso-comma object: triples (a, b, gamma : F a -> G b).
PullbackCone homotopy_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g);
// Strict fibre product {(a,b) : F a = G b}.
PullbackCone strict_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g);
// Replacement of G : B -> C by the projection B' = hpb(G, id_C) -> C, which
// is an isofibration; `along` is the equivalence B -> B'.
struct PathReplacement {
    GroupoidPtr total;
    GroupoidFunctor proj;   // B' -> C
    GroupoidFunctor along;  // B -> B'
};
PathReplacement path_replacement(const GroupoidFunctor& g);

}  // namespace decomp
