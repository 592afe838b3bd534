#pragma once
// Example decomposition spaces: strict set-level models and closed-form
// counting oracles.
//
// Most explicit models are "block spaces": an object of X_k is a structure
// on [n] = {0..n-1} together with a composition n = b_1 + ... + b_k whose
// parts are consecutive ranges, and morphisms are the symmetries preserving
// the ranges.  d_0 / d_k drop the first / last range, inner faces merge two
// neighbours, degeneracies insert an empty range.  Faces restrict labels to a
// range and renumber in order, so all simplicial identities hold on the nose.

#include "decomp/incidence.hpp"
#include "decomp/labeled.hpp"
#include "decomp/simplicial.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace decomp {

// --- posets and categories --------------------------------------------------

struct PosetSpec {
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> leq;  // reflexive pairs may be omitted
};

struct FiniteCategorySpec {
    struct Mor { std::string id, src, tgt; };
    std::vector<std::string> objects;
    std::vector<Mor> morphisms;
    std::map<std::string, std::string> identities;
    std::vector<std::array<std::string, 3>> compose;  // (g, f, g o f), all composable pairs
};

struct FatNerveDetail;
struct FatNerve {
    TSG tsg;
    std::shared_ptr<const FatNerveDetail> detail;
};

struct FatNerveOptions {
    int K = 4;
    bool classical = false;  // only identity connecting isos: the ordinary nerve
    std::function<std::string(const FiniteCategorySpec&, int mor)> class_id;  // iso-invariant arrow id
    std::function<int(const FiniteCategorySpec&, int mor)> size;
};

FiniteCategorySpec poset_category(const PosetSpec& P);  // NotAPoset
void validate_category(const FiniteCategorySpec& C);    // NotACategory
FatNerve fat_nerve(const FiniteCategorySpec& C, const FatNerveOptions& opt = {});
// Simplicial map induced by a functor, given on morphism indices.
SimplicialMap fat_nerve_map(const FatNerve& Y, const FatNerve& X, const std::vector<int>& mor);

TSG poset_nerve(const PosetSpec& P, int K = 4);
TSG strict_nerve(const FiniteCategorySpec& C, int K = 4);

PosetSpec chain_poset(int n);        // 0 < 1 < ... < n
PosetSpec antichain(int n);
PosetSpec boolean_lattice(int k);    // subsets of {0..k-1}
PosetSpec nongraded_poset();         // b < u1 < u2 < t and b < m < t
FiniteCategorySpec group_category(const FiniteGroup& G, const std::string& name = "*");
// Poset nerve with the inner face d_1 : X_2 -> X_1 redirected on one simplex.
TSG corrupted_poset_nerve(int K = 3);

// --- block spaces -------------------------------------------------------------

struct BlockModel {
    // structures on [n] compatible with the ranges
    std::function<std::vector<Label>(const std::vector<int>& blocks)> structures;
    // range-preserving symmetries of [n]
    std::function<std::vector<Label>(const std::vector<int>& blocks)> symmetries;
    std::function<Label(const Label& g, const Label& s)> act;
    std::function<Label(const Label& s, int n, int lo, int hi)> restrict_structure;
    std::function<Label(const Label& g, int n, int lo, int hi)> restrict_symmetry;
    std::function<Label(const Label& second, const Label& first)> compose;
    std::function<Label(const Label& g)> inverse;
    std::function<Label(int n)> identity;
    std::function<std::string(const Label& s, int n)> class_id;  // id of the X_1 class
    std::function<std::string(const Label& s)> show;             // object names
};

struct BlockSpaceDetail;
struct BlockSpace {
    TSG tsg;
    std::shared_ptr<const BlockSpaceDetail> detail;
};

BlockSpace block_space(const BlockModel& M, int N, int K);
// Map Y -> X keeping the ranges and symmetries and sending structures along
// `forget`; symmetry labels must be shared (e.g. both permutations).
SimplicialMap block_space_map(const BlockSpace& Y, const BlockSpace& X,
                              const std::function<Label(const Label&)>& forget);

BlockModel binomial_model();
BlockModel graphs_model();
BlockModel forests_model();
BlockModel qvect_model(int q);   // UnsupportedField unless q in {2,3}

BlockSpace binomial_space(int N, int K = 4);
BlockSpace graphs_space(int N, int K = 4);
BlockSpace forests_space(int N, int K = 4);
BlockSpace qvect_space(int q, int N, int K = 4);   // N <= 3 (q=2), N <= 2 (q=3)

// graphs -> binomial, a graph going to its vertex set
SimplicialMap graphs_to_binomial(const BlockSpace& graphs, const BlockSpace& binomial);

FatNerve surjections_space(int N, int K = 4);

struct InjectionFixture {
    FatNerve ordered;   // finite ordinals and monotone injections
    FatNerve plain;     // finite sets and injections
    SimplicialMap forget;
};
std::unique_ptr<InjectionFixture> injection_fixture(int N, int K = 4);

FatNerve bz2_fat_nerve(int K = 4);

// --- class ids ---------------------------------------------------------------

std::string graph_id(int n, const Label& adj);        // canonical, e.g. "g3:01,12"
std::string forest_id(const Label& parent);           // sorted level sequences, e.g. "(()())"
std::string surjection_id(const std::vector<int>& image, int k);  // "3->2:1+2"

// --- oracles -----------------------------------------------------------------

IncidenceOracle nat_plus_oracle(int bound);
IncidenceOracle divisibility_oracle(int bound);
IncidenceOracle binomial_oracle(int N);
IncidenceOracle qvect_oracle(int q, int N);
IncidenceOracle graphs_oracle(int N);

// oracles of explicit models with monoidal data (disjoint union) attached
IncidenceOracle binomial_space_oracle(int N, int K = 4);
IncidenceOracle graphs_space_oracle(int N, int K = 4);
IncidenceOracle forests_space_oracle(int N, int K = 4);
IncidenceOracle surjections_oracle(int N, int K = 4);

// number of k-dimensional subspaces of F_q^n, by enumerating reduced
// row-echelon matrices
long count_subspaces(int q, int n, int k);
long gl_order(int q, int n);

}  // namespace decomp
