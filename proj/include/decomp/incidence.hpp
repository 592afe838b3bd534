#pragma once
// Incidence coalgebra and algebra over counting data.  Classes are indexed
// 0..n-1; ids are opaque strings.

#include "decomp/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace decomp {

struct ArrowClass {
    std::string id;
    Rational weight{1};          // 1/|Aut|
    bool degenerate = false;
    std::optional<int> size;
    std::optional<std::string> label;
    bool safe = true;            // all two-step factorisations are listed
};

struct FiberEntry {
    int a, b;
    Rational value;  // twoFiber(f, a, b)
    Rational coeff;  // section coefficient, filled by finalize()
};

struct Monoidal {
    int unit = -1;
    std::map<std::pair<int, int>, int> product;  // partial: only within the bound
};

struct IncidenceOracle {
    std::vector<ArrowClass> classes;
    std::vector<std::vector<FiberEntry>> fibers;         // per f
    std::optional<std::map<std::pair<int, int>, Rational>> effective;  // (f, r)
    std::optional<Monoidal> monoidal;
    // filled by finalize(): f is safe and so is everything it factors into,
    // recursively; only these classes get convolution values
    std::vector<bool> closed;

    int add_class(ArrowClass c);
    int find(const std::string& id) const;  // throws UnknownClass
    bool has(const std::string& id) const;
    int size() const { return static_cast<int>(classes.size()); }
    // accumulates into the (f,a,b) entry; rejects negative totals at finalize
    void add_two_fiber(int f, int a, int b, const Rational& v);
    // merges duplicate entries, drops zeros, sorts, computes coefficients;
    // checks weights > 0 and values >= 0
    void finalize();

private:
    std::unordered_map<std::string, int> index_;
};

using IncidenceFunction = std::vector<Rational>;            // total
using IncidenceVector = std::map<int, Rational>;            // finite support
using TensorVector = std::map<std::pair<int, int>, Rational>;
using Tensor3 = std::map<std::tuple<int, int, int>, Rational>;

Rational section_coefficient(const IncidenceOracle& O, const std::string& f, const std::string& a,
                             const std::string& b);
Rational section_coefficient(const IncidenceOracle& O, int f, int a, int b);
Rational segal_section_coefficient(long autY, long autAB, long autA, long autB);

TensorVector comultiply(const IncidenceOracle& O, int f);
Rational counit_value(const IncidenceOracle& O, int f);

IncidenceFunction zeta(const IncidenceOracle& O);
IncidenceFunction epsilon(const IncidenceOracle& O);
IncidenceFunction delta_fn(const IncidenceOracle& O, int a);   // delta^a
// (phi * psi)(f); classes that are not `closed` are left at 0
IncidenceFunction convolve(const IncidenceOracle& O, const IncidenceFunction& phi,
                           const IncidenceFunction& psi);
Rational convolve_at(const IncidenceOracle& O, const IncidenceFunction& phi,
                     const IncidenceFunction& psi, int f);  // TruncationUnsafe

// Phi_0 .. Phi_rmax
std::vector<IncidenceFunction> phi_table(const IncidenceOracle& O, int rmax);
IncidenceFunction phi(const IncidenceOracle& O, int r);

int default_rmax(const IncidenceOracle& O);
// std::nullopt when Phi_rmax(f) != 0 (not tight within rmax)
std::optional<int> length(const IncidenceOracle& O, int f, int rmax = -1);
int length_or_throw(const IncidenceOracle& O, int f, int rmax = -1);

struct MobiusResult {
    IncidenceFunction mu;
    std::vector<bool> defined;  // tight and safe
    std::vector<std::optional<int>> len;
};
// alternating sum of Phi_r; classes not tight within rmax are left undefined
MobiusResult mobius_partial(const IncidenceOracle& O, int rmax = -1);
// throws NotTightAtTruncation if any class is not tight
IncidenceFunction mobius(const IncidenceOracle& O, int rmax = -1);
// triangular solve of zeta * mu = eps
IncidenceFunction mobius_recursive(const IncidenceOracle& O);

Tensor3 left_coassoc(const IncidenceOracle& O, int f);   // (Delta x id) Delta
Tensor3 right_coassoc(const IncidenceOracle& O, int f);  // (id x Delta) Delta
bool coassociativity_check(const IncidenceOracle& O, int f);
bool counit_check(const IncidenceOracle& O, int f);
bool grading_check(const IncidenceOracle& O, int rmax = -1);

struct ZetaPolynomial {
    std::vector<Rational> table;                    // zeta^{*r}(f), r = 0..rmax
    std::optional<std::vector<Rational>> coeffs;    // in r, low degree first
    std::optional<Rational> at_minus_one;
};
ZetaPolynomial zeta_polynomial(const IncidenceOracle& O, int f, int rmax = -1);

bool bialgebra_check(const IncidenceOracle& O, const std::vector<std::pair<int, int>>& pairs);
// all pairs whose product is defined
std::vector<std::pair<int, int>> monoidal_pairs(const IncidenceOracle& O);

}  // namespace decomp
