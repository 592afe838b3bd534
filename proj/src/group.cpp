#include "decomp/error.hpp"
#include "decomp/groupoid.hpp"

#include <algorithm>
#include <numeric>

namespace decomp {

GroupPtr FiniteGroup::from_table(int order, std::vector<int> mul) {
    auto g = std::make_shared<FiniteGroup>();
    g->order = order;
    g->mul = std::move(mul);
    g->inv.assign(order, -1);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            if (g->m(a, b) == 0) { g->inv[a] = b; break; }
    for (int a = 0; a < order; ++a)
        if (g->inv[a] < 0) throw DecompError(ErrorKind::InvalidGroupoid, "group element without inverse");
    return g;
}

GroupPtr FiniteGroup::trivial() {
    static GroupPtr t = from_table(1, {0});
    return t;
}

GroupPtr FiniteGroup::cyclic(int n) {
    std::vector<int> mul(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
    return from_table(n, std::move(mul));
}

GroupPtr FiniteGroup::symmetric(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    int k = static_cast<int>(perms.size());
    std::map<std::vector<int>, int> idx;
    for (int i = 0; i < k; ++i) idx[perms[i]] = i;
    std::vector<int> mul(static_cast<size_t>(k) * k);
    std::vector<int> c(n);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
            mul[a * k + b] = idx[c];
        }
    return from_table(k, std::move(mul));
}

GroupPtr FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
    int n = a.order * b.order;
    std::vector<int> mul(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            mul[x * n + y] = a.m(x / b.order, y / b.order) * b.order + b.m(x % b.order, y % b.order);
    return from_table(n, std::move(mul));
}

}  // namespace decomp
