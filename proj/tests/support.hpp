#pragma once
// Random small groupoids and functors for property tests.

#include "decomp/groupoid.hpp"

#include <algorithm>
#include <random>

namespace decomp::testing {

inline GroupPtr random_group(std::mt19937& rng) {
    switch (rng() % 5) {
    case 0: return FiniteGroup::trivial();
    case 1: return FiniteGroup::cyclic(2);
    case 2: return FiniteGroup::cyclic(3);
    case 3: return FiniteGroup::cyclic(4);
    default: return FiniteGroup::symmetric(3);
    }
}

inline std::shared_ptr<FiniteGroupoid> random_groupoid(std::mt19937& rng, int max_comps = 3, int max_objs = 3) {
    auto g = std::make_shared<FiniteGroupoid>();
    int nc = static_cast<int>(rng() % (max_comps + 1));
    int id = 0;
    for (int c = 0; c < nc; ++c) {
        int k = 1 + static_cast<int>(rng() % max_objs);
        std::vector<std::string> ns;
        for (int i = 0; i < k; ++i) ns.push_back("o" + std::to_string(id++));
        g->add_component(random_group(rng), ns);
    }
    return g;
}

// Closure-based search for a homomorphism G -> H: images of each element
// are fixed by the images of G's elements in generation order.
inline std::vector<int> random_hom(const FiniteGroup& G, const FiniteGroup& H, std::mt19937& rng) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<int> img(G.order, -1);
        img[0] = 0;
        bool ok = true;
        std::vector<int> known{0};
        for (int g = 1; g < G.order && ok; ++g) {
            if (img[g] >= 0) continue;
            img[g] = static_cast<int>(rng() % H.order);
            // extend to the subgroup generated so far
            known.push_back(g);
            for (size_t i = 0; i < known.size() && ok; ++i)
                for (size_t j = 0; j < known.size() && ok; ++j) {
                    int a = known[i], b = known[j];
                    int p = G.m(a, b), v = H.m(img[a], img[b]);
                    if (img[p] < 0) { img[p] = v; known.push_back(p); }
                    else if (img[p] != v) ok = false;
                }
        }
        if (ok) return img;
    }
    return std::vector<int>(G.order, 0);
}

inline GroupoidFunctor random_functor(GroupoidPtr dom, GroupoidPtr cod, std::mt19937& rng) {
    GroupoidFunctor f;
    f.dom = dom;
    f.cod = cod;
    f.obj.assign(dom->num_objects(), 0);
    f.ti.assign(dom->num_objects(), 0);
    for (int c = 0; c < dom->num_components(); ++c) {
        int cc = static_cast<int>(rng() % cod->num_components());
        const auto& tgt = cod->comps[cc];
        const auto& H = *tgt.aut;
        for (int x : dom->comps[c].objects) {
            f.obj[x] = tgt.objects[rng() % tgt.objects.size()];
            f.ti[x] = x == dom->base(c) ? 0 : static_cast<int>(rng() % H.order);
        }
        f.ai.push_back(random_hom(*dom->comps[c].aut, H, rng));
    }
    return f;
}

}  // namespace decomp::testing
