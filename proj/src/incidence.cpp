#include "decomp/incidence.hpp"
#include "decomp/error.hpp"

#include <algorithm>
#include <functional>

namespace decomp {

int IncidenceOracle::add_class(ArrowClass c) {
    if (index_.count(c.id)) throw DecompError(ErrorKind::ParseError, "duplicate class '" + c.id + "'");
    int i = size();
    index_[c.id] = i;
    classes.push_back(std::move(c));
    fibers.emplace_back();
    return i;
}

int IncidenceOracle::find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw DecompError(ErrorKind::UnknownClass, "'" + id + "'");
    return it->second;
}

bool IncidenceOracle::has(const std::string& id) const { return index_.count(id) > 0; }

void IncidenceOracle::add_two_fiber(int f, int a, int b, const Rational& v) {
    for (int x : {f, a, b})
        if (x < 0 || x >= size()) throw DecompError(ErrorKind::UnknownClass, "class index " + std::to_string(x));
    fibers[f].push_back({a, b, v, Rational(0)});
}

void IncidenceOracle::finalize() {
    for (const auto& c : classes)
        if (c.weight.sign() <= 0) throw DecompError(ErrorKind::ParseError, "class '" + c.id + "' has weight " + c.weight.str());
    for (int f = 0; f < size(); ++f) {
        auto& v = fibers[f];
        std::sort(v.begin(), v.end(), [](const FiberEntry& x, const FiberEntry& y) {
            return std::tie(x.a, x.b) < std::tie(y.a, y.b);
        });
        std::vector<FiberEntry> merged;
        for (const auto& e : v) {
            if (!merged.empty() && merged.back().a == e.a && merged.back().b == e.b) merged.back().value += e.value;
            else merged.push_back(e);
        }
        std::vector<FiberEntry> kept;
        for (auto& e : merged) {
            if (e.value.sign() < 0)
                throw DecompError(ErrorKind::ParseError, "negative twoFiber at (" + classes[f].id + ", " +
                                                             classes[e.a].id + ", " + classes[e.b].id + ")");
            if (e.value.is_zero()) continue;
            e.coeff = e.value * classes[e.a].weight * classes[e.b].weight;
            kept.push_back(e);
        }
        v = std::move(kept);
    }
    // closed = safe and every factor closed; cycles (f = id . f) are fine
    closed.assign(size(), false);
    std::vector<int> state(size(), 0);  // 0 new, 1 open, 2 done
    std::function<bool(int)> visit = [&](int f) -> bool {
        if (state[f] == 2) return closed[f];
        if (state[f] == 1) return true;
        state[f] = 1;
        bool ok = classes[f].safe;
        for (const auto& e : fibers[f]) {
            bool ea = visit(e.a), eb = visit(e.b);
            ok = ok && ea && eb;
        }
        state[f] = 2;
        closed[f] = ok;
        return ok;
    };
    for (int f = 0; f < size(); ++f) visit(f);
}

namespace {

void require_safe(const IncidenceOracle& O, int f) {
    if (O.closed.empty() || !O.closed[f])
        throw DecompError(ErrorKind::TruncationUnsafe, "class '" + O.classes[f].id + "'");
}

}  // namespace

Rational section_coefficient(const IncidenceOracle& O, int f, int a, int b) {
    const auto& v = O.fibers.at(f);
    auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(a, b), [](const FiberEntry& e, const std::pair<int, int>& k) {
        return std::make_pair(e.a, e.b) < k;
    });
    if (it != v.end() && it->a == a && it->b == b) return it->coeff;
    return Rational(0);
}

Rational section_coefficient(const IncidenceOracle& O, const std::string& f, const std::string& a,
                             const std::string& b) {
    return section_coefficient(O, O.find(f), O.find(a), O.find(b));
}

Rational segal_section_coefficient(long autY, long autAB, long autA, long autB) {
    return Rational(autY * autAB, autA * autB);
}

TensorVector comultiply(const IncidenceOracle& O, int f) {
    require_safe(O, f);
    TensorVector t;
    for (const auto& e : O.fibers[f]) t[{e.a, e.b}] = e.coeff;
    return t;
}

Rational counit_value(const IncidenceOracle& O, int f) { return O.classes.at(f).degenerate ? 1 : 0; }

IncidenceFunction zeta(const IncidenceOracle& O) { return IncidenceFunction(O.size(), Rational(1)); }

IncidenceFunction epsilon(const IncidenceOracle& O) {
    IncidenceFunction e(O.size());
    for (int f = 0; f < O.size(); ++f) e[f] = counit_value(O, f);
    return e;
}

IncidenceFunction delta_fn(const IncidenceOracle& O, int a) {
    IncidenceFunction e(O.size());
    e.at(a) = 1;
    return e;
}

Rational convolve_at(const IncidenceOracle& O, const IncidenceFunction& phi, const IncidenceFunction& psi, int f) {
    require_safe(O, f);
    Rational s;
    for (const auto& e : O.fibers[f])
        if (!phi[e.a].is_zero() && !psi[e.b].is_zero()) s += e.coeff * phi[e.a] * psi[e.b];
    return s;
}

IncidenceFunction convolve(const IncidenceOracle& O, const IncidenceFunction& phi, const IncidenceFunction& psi) {
    IncidenceFunction out(O.size());
    for (int f = 0; f < O.size(); ++f)
        if (O.closed[f]) out[f] = convolve_at(O, phi, psi, f);
    return out;
}

std::vector<IncidenceFunction> phi_table(const IncidenceOracle& O, int rmax) {
    std::vector<IncidenceFunction> t;
    auto eps = epsilon(O);
    auto psi = zeta(O);
    for (int f = 0; f < O.size(); ++f) psi[f] -= eps[f];
    t.push_back(eps);
    for (int r = 1; r <= rmax; ++r) t.push_back(convolve(O, t.back(), psi));
    return t;
}

IncidenceFunction phi(const IncidenceOracle& O, int r) {
    if (r < 0) throw DecompError(ErrorKind::IndexError, "negative r");
    return phi_table(O, r).back();
}

int default_rmax(const IncidenceOracle& O) {
    int m = -1;
    for (const auto& c : O.classes)
        if (c.size) m = std::max(m, *c.size);
    return m >= 0 ? m + 1 : O.size() + 1;
}

namespace {

std::optional<int> length_from(const std::vector<IncidenceFunction>& t, int f) {
    int rmax = static_cast<int>(t.size()) - 1;
    if (!t[rmax][f].is_zero()) return std::nullopt;
    for (int r = rmax - 1; r >= 0; --r)
        if (!t[r][f].is_zero()) return r;
    return 0;
}

}  // namespace

std::optional<int> length(const IncidenceOracle& O, int f, int rmax) {
    require_safe(O, f);
    if (rmax < 0) rmax = default_rmax(O);
    return length_from(phi_table(O, rmax), f);
}

int length_or_throw(const IncidenceOracle& O, int f, int rmax) {
    auto l = length(O, f, rmax);
    if (!l) throw DecompError(ErrorKind::NotTightAtTruncation, "class '" + O.classes[f].id + "'");
    return *l;
}

MobiusResult mobius_partial(const IncidenceOracle& O, int rmax) {
    if (rmax < 0) rmax = default_rmax(O);
    auto t = phi_table(O, rmax);
    MobiusResult m;
    m.mu.assign(O.size(), Rational(0));
    m.defined.assign(O.size(), false);
    m.len.assign(O.size(), std::nullopt);
    for (int f = 0; f < O.size(); ++f) {
        if (!O.closed[f]) continue;
        m.len[f] = length_from(t, f);
        if (!m.len[f]) continue;
        m.defined[f] = true;
        for (int r = 0; r <= *m.len[f]; ++r) {
            if (r % 2) m.mu[f] -= t[r][f];
            else m.mu[f] += t[r][f];
        }
    }
    return m;
}

IncidenceFunction mobius(const IncidenceOracle& O, int rmax) {
    auto m = mobius_partial(O, rmax);
    std::string bad;
    for (int f = 0; f < O.size(); ++f) {
        if (!O.closed[f]) throw DecompError(ErrorKind::TruncationUnsafe, "class '" + O.classes[f].id + "'");
        if (!m.defined[f]) bad += (bad.empty() ? "" : ", ") + O.classes[f].id;
    }
    if (!bad.empty()) throw DecompError(ErrorKind::NotTightAtTruncation, bad);
    return m.mu;
}

IncidenceFunction mobius_recursive(const IncidenceOracle& O) {
    int n = O.size();
    for (int f = 0; f < n; ++f)
        if (!O.closed[f]) throw DecompError(ErrorKind::TruncationUnsafe, "class '" + O.classes[f].id + "'");
    // sum_{a,b} c^f_{a,b} mu(b) = eps(f): the b = f terms form the diagonal
    std::vector<Rational> diag(n);
    std::vector<std::map<int, Rational>> off(n);
    for (int f = 0; f < n; ++f)
        for (const auto& e : O.fibers[f]) {
            if (e.b == f) {
                if (!O.classes[e.a].degenerate)
                    throw DecompError(ErrorKind::NotTriangular, "'" + O.classes[f].id + "' factors through itself via '" +
                                                                    O.classes[e.a].id + "'");
                diag[f] += e.coeff;
            } else {
                off[f][e.b] += e.coeff;
            }
        }
    IncidenceFunction mu(n);
    std::vector<int> state(n, 0);
    std::function<void(int)> solve = [&](int f) {
        if (state[f] == 2) return;
        if (state[f] == 1) throw DecompError(ErrorKind::NotTriangular, "cyclic dependency at '" + O.classes[f].id + "'");
        state[f] = 1;
        Rational rhs = counit_value(O, f);
        for (const auto& [b, c] : off[f]) {
            solve(b);
            rhs -= c * mu[b];
        }
        if (diag[f].is_zero()) throw DecompError(ErrorKind::ZeroDiagonal, "class '" + O.classes[f].id + "'");
        mu[f] = rhs / diag[f];
        state[f] = 2;
    };
    for (int f = 0; f < n; ++f) solve(f);
    return mu;
}

Tensor3 left_coassoc(const IncidenceOracle& O, int f) {
    require_safe(O, f);
    Tensor3 t;
    for (const auto& e : O.fibers[f])
        for (const auto& e2 : O.fibers[e.a]) t[{e2.a, e2.b, e.b}] += e.coeff * e2.coeff;
    return t;
}

Tensor3 right_coassoc(const IncidenceOracle& O, int f) {
    require_safe(O, f);
    Tensor3 t;
    for (const auto& e : O.fibers[f])
        for (const auto& e2 : O.fibers[e.b]) t[{e.a, e2.a, e2.b}] += e.coeff * e2.coeff;
    return t;
}

bool coassociativity_check(const IncidenceOracle& O, int f) {
    auto strip = [](Tensor3 t) {
        for (auto it = t.begin(); it != t.end();) it = it->second.is_zero() ? t.erase(it) : std::next(it);
        return t;
    };
    return strip(left_coassoc(O, f)) == strip(right_coassoc(O, f));
}

bool counit_check(const IncidenceOracle& O, int f) {
    require_safe(O, f);
    IncidenceVector l, r;
    for (const auto& e : O.fibers[f]) {
        if (O.classes[e.a].degenerate) l[e.b] += e.coeff;
        if (O.classes[e.b].degenerate) r[e.a] += e.coeff;
    }
    IncidenceVector want{{f, Rational(1)}};
    auto strip = [](IncidenceVector v) {
        for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
        return v;
    };
    return strip(l) == want && strip(r) == want;
}

bool grading_check(const IncidenceOracle& O, int rmax) {
    if (rmax < 0) rmax = default_rmax(O);
    auto t = phi_table(O, rmax);
    std::vector<int> len(O.size());
    for (int f = 0; f < O.size(); ++f) {
        require_safe(O, f);
        auto l = length_from(t, f);
        if (!l) throw DecompError(ErrorKind::NotTightAtTruncation, "class '" + O.classes[f].id + "'");
        len[f] = *l;
    }
    for (int f = 0; f < O.size(); ++f)
        for (const auto& e : O.fibers[f])
            if (len[f] != len[e.a] + len[e.b]) return false;
    return true;
}

namespace {

// coefficients (low degree first) of the polynomial of degree < n through
// (x_i, y_i), x_i = 0..n-1
std::vector<Rational> lagrange(const std::vector<Rational>& y) {
    int n = static_cast<int>(y.size());
    std::vector<Rational> res(n);
    for (int i = 0; i < n; ++i) {
        if (y[i].is_zero()) continue;
        std::vector<Rational> basis{Rational(1)};
        Rational den(1);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<Rational> nb(basis.size() + 1);
            for (size_t k = 0; k < basis.size(); ++k) {
                nb[k + 1] += basis[k];
                nb[k] -= basis[k] * Rational(j);
            }
            basis = std::move(nb);
            den *= Rational(i - j);
        }
        Rational s = y[i] / den;
        for (int k = 0; k < n; ++k) res[k] += basis[k] * s;
    }
    while (res.size() > 1 && res.back().is_zero()) res.pop_back();
    return res;
}

Rational eval(const std::vector<Rational>& c, const Rational& x) {
    Rational v;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

}  // namespace

ZetaPolynomial zeta_polynomial(const IncidenceOracle& O, int f, int rmax) {
    require_safe(O, f);
    if (rmax < 0) rmax = default_rmax(O);
    if (rmax < 1) throw DecompError(ErrorKind::IndexError, "rmax must be >= 1");
    ZetaPolynomial z;
    auto cur = epsilon(O);
    auto zf = zeta(O);
    z.table.push_back(cur[f]);
    for (int r = 1; r <= rmax; ++r) {
        cur = convolve(O, cur, zf);
        z.table.push_back(cur[f]);
    }
    auto c = lagrange(std::vector<Rational>(z.table.begin(), z.table.end() - 1));
    if (eval(c, Rational(rmax)) == z.table.back()) {
        z.at_minus_one = eval(c, Rational(-1));
        z.coeffs = std::move(c);
    }
    return z;
}

std::vector<std::pair<int, int>> monoidal_pairs(const IncidenceOracle& O) {
    if (!O.monoidal) throw DecompError(ErrorKind::NoMonoidalStructure, "oracle has no monoidal data");
    std::vector<std::pair<int, int>> v;
    for (const auto& [k, p] : O.monoidal->product) v.push_back(k);
    return v;
}

bool bialgebra_check(const IncidenceOracle& O, const std::vector<std::pair<int, int>>& pairs) {
    if (!O.monoidal) throw DecompError(ErrorKind::NoMonoidalStructure, "oracle has no monoidal data");
    const auto& prod = O.monoidal->product;
    auto mul = [&](int x, int y) {
        auto it = prod.find({x, y});
        if (it == prod.end())
            throw DecompError(ErrorKind::TruncationUnsafe, "product " + O.classes[x].id + "·" + O.classes[y].id + " undefined");
        return it->second;
    };
    for (auto [x, y] : pairs) {
        int p = mul(x, y);
        auto lhs = comultiply(O, p);
        TensorVector rhs;
        for (const auto& e : O.fibers[x])
            for (const auto& e2 : O.fibers[y]) rhs[{mul(e.a, e2.a), mul(e.b, e2.b)}] += e.coeff * e2.coeff;
        require_safe(O, x);
        require_safe(O, y);
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace decomp
