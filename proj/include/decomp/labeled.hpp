#pragma once
// Normalising builder for groupoids whose morphisms carry faithful labels
// (permutations, matrices, tuples of morphisms...).  The caller supplies,
// for each object, the *complete* list of morphisms out of it; the builder
// only calls it on component bases, so an action groupoid of a group G
// costs |G| label operations per orbit plus |Aut|^2 compositions.

#include "decomp/groupoid.hpp"

#include <functional>
#include <unordered_map>
#include <vector>

namespace decomp {

using Label = std::vector<int>;

struct LabelHash {
    std::size_t operator()(const Label& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) { h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull; h *= 1099511628211ull; }
        return h;
    }
};

struct LabelOps {
    std::function<Label(const Label&, const Label&)> compose;  // (second, first)
    std::function<Label(const Label&)> inverse;
    std::function<Label(int)> identity;                        // at an object
};

struct LabeledGroupoid {
    std::shared_ptr<FiniteGroupoid> g;
    LabelOps ops;
    std::vector<Label> transport;                  // base -> x
    std::vector<std::vector<Label>> loops;         // per component
    std::vector<std::unordered_map<Label, int, LabelHash>> loop_index;

    // normal-form elem of a labelled morphism x -> y
    int encode(int x, int y, const Label& l) const;
    Label decode(const Morphism& m) const;
};

using OutFn = std::function<std::vector<std::pair<Label, int>>(int)>;

LabeledGroupoid build_labeled(std::vector<std::string> names, const OutFn& out, LabelOps ops);

// Functor between labelled groupoids given objects and labels; `lab(x, l)`
// maps a label of a morphism out of x.
GroupoidFunctor labeled_functor(const LabeledGroupoid& dom, const LabeledGroupoid& cod,
                                const std::vector<int>& obj,
                                const std::function<Label(int, const Label&)>& lab);

// Labels for the morphisms of an existing normalised groupoid, so that
// derived constructions can use the builder: a morphism (x,y,g) is the
// label {x,y,g}.
LabelOps morphism_label_ops(const FiniteGroupoid& g);
inline Label mlabel(const Morphism& m) { return {m.src, m.tgt, m.elem}; }
inline Morphism unlabel(const Label& l, std::size_t at = 0) {
    return {l[at], l[at + 1], l[at + 2]};
}

}  // namespace decomp
