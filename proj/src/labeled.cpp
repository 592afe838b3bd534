#include "decomp/labeled.hpp"
#include "decomp/error.hpp"

namespace decomp {

LabeledGroupoid build_labeled(std::vector<std::string> names, const OutFn& out, LabelOps ops) {
    LabeledGroupoid L;
    L.ops = std::move(ops);
    auto g = std::make_shared<FiniteGroupoid>();
    int n = static_cast<int>(names.size());
    g->names = std::move(names);
    g->comp.assign(n, -1);
    L.transport.resize(n);
    for (int r = 0; r < n; ++r) {
        if (g->comp[r] >= 0) continue;
        int c = g->num_components();
        Component cc;
        cc.objects.push_back(r);
        g->comp[r] = c;
        Label id = L.ops.identity(r);
        L.transport[r] = id;
        std::vector<Label> loops{id};
        std::unordered_map<Label, int, LabelHash> li{{id, 0}};
        for (auto& [l, y] : out(r)) {
            if (y == r) {
                if (li.emplace(l, static_cast<int>(loops.size())).second) loops.push_back(l);
            } else if (g->comp[y] < 0) {
                g->comp[y] = c;
                L.transport[y] = l;
                cc.objects.push_back(y);
            } else if (g->comp[y] != c) {
                throw DecompError(ErrorKind::InvalidGroupoid,
                                  "morphism " + g->names[r] + " -> " + g->names[y] + " joins a finished component");
            }
        }
        int k = static_cast<int>(loops.size());
        std::vector<int> mul(static_cast<size_t>(k) * k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                auto it = li.find(L.ops.compose(loops[a], loops[b]));
                if (it == li.end())
                    throw DecompError(ErrorKind::InvalidGroupoid, "loops at " + g->names[r] + " not closed");
                mul[static_cast<size_t>(a) * k + b] = it->second;
            }
        cc.aut = FiniteGroup::from_table(k, std::move(mul));
        g->comps.push_back(std::move(cc));
        L.loops.push_back(std::move(loops));
        L.loop_index.push_back(std::move(li));
    }
    L.g = g;
    return L;
}

int LabeledGroupoid::encode(int x, int y, const Label& l) const {
    int c = g->comp[x];
    if (g->comp[y] != c) throw DecompError(ErrorKind::TypeMismatch, "label between distinct components");
    Label t = ops.compose(ops.inverse(transport[y]), ops.compose(l, transport[x]));
    auto it = loop_index[c].find(t);
    if (it == loop_index[c].end())
        throw DecompError(ErrorKind::InvalidGroupoid, "label does not name a morphism " + g->names[x] + " -> " + g->names[y]);
    return it->second;
}

Label LabeledGroupoid::decode(const Morphism& m) const {
    int c = g->comp[m.src];
    return ops.compose(transport[m.tgt], ops.compose(loops[c][m.elem], ops.inverse(transport[m.src])));
}

GroupoidFunctor labeled_functor(const LabeledGroupoid& dom, const LabeledGroupoid& cod,
                                const std::vector<int>& obj,
                                const std::function<Label(int, const Label&)>& lab) {
    GroupoidFunctor f;
    f.dom = dom.g;
    f.cod = cod.g;
    f.obj = obj;
    f.ti.assign(obj.size(), 0);
    const auto& D = *dom.g;
    for (int c = 0; c < D.num_components(); ++c) {
        int b = D.base(c);
        for (int x : D.comps[c].objects) f.ti[x] = cod.encode(obj[b], obj[x], lab(b, dom.transport[x]));
        std::vector<int> a(dom.loops[c].size());
        for (size_t e = 0; e < a.size(); ++e) a[e] = cod.encode(obj[b], obj[b], lab(b, dom.loops[c][e]));
        f.ai.push_back(std::move(a));
    }
    return f;
}

LabelOps morphism_label_ops(const FiniteGroupoid& g) {
    LabelOps ops;
    const FiniteGroupoid* G = &g;
    ops.compose = [G](const Label& b, const Label& a) { return mlabel(G->compose(unlabel(b), unlabel(a))); };
    ops.inverse = [G](const Label& a) { return mlabel(G->inverse(unlabel(a))); };
    ops.identity = [](int) { return Label{}; };
    return ops;
}

}  // namespace decomp
