#pragma once
// Truncated simplicial groupoids X_0..X_K with strict face and degeneracy
// functors, and the checks that make them decomposition spaces.

#include "decomp/groupoid.hpp"
#include "decomp/pullback.hpp"

#include <optional>
#include <string>
#include <vector>

namespace decomp {

struct IncidenceOracle;

struct TSG {
    int K = 0;
    std::vector<GroupoidPtr> X;                        // X[0..K]
    std::vector<std::vector<GroupoidFunctor>> d;       // d[n][i] : X_n -> X_{n-1}, n >= 1
    std::vector<std::vector<GroupoidFunctor>> s;       // s[n][i] : X_n -> X_{n+1}, n <= K-1
    // optional per-component metadata on X_1
    std::vector<std::string> class_ids;
    std::vector<int> sizes;
    // Size-truncated models: every object of X_n has a total size (constant
    // on components, level_sizes[n][comp]) and only sizes <= size_bound are
    // present.  Segal squares are then compared with the part of the
    // homotopy pullback whose glued size fits.
    std::optional<int> size_bound;
    std::vector<std::vector<int>> level_sizes;

    const GroupoidFunctor& face(int n, int i) const;
    const GroupoidFunctor& degen(int n, int i) const;
    std::string class_id(int comp) const;  // metadata or the base object's name
    std::optional<int> size(int comp) const;
};

struct SimplicialMap {
    const TSG* dom = nullptr;
    const TSG* cod = nullptr;
    std::vector<GroupoidFunctor> f;  // f[n] : Y_n -> X_n
};

std::vector<Diagnostic> validate_tsg(const TSG& X);
std::vector<Diagnostic> validate_map(const SimplicialMap& F);

struct SquareReport {
    std::string name;  // e.g. "segal n=1", "s1/bottom", "n=3 i=1 bottom"
    bool pullback = false;
    std::string reason;
};

bool all_pass(const std::vector<SquareReport>& r);

// Square for report i of segal_check at n  (P = X_{n+1}).
CommutingSquare segal_square(const TSG& X, int n);
std::vector<SquareReport> segal_check(const TSG& X);
std::vector<SquareReport> decomposition_check(const TSG& X);

struct CompletenessReport {
    bool complete = false;          // s_0 : X_0 -> X_1 fully faithful
    bool all_degeneracies_mono = false;
    std::vector<std::string> non_mono;  // "s_i^n" that fail
};
CompletenessReport completeness_report(const TSG& X);
bool completeness_check(const TSG& X);

struct NondegenerateSplit {
    std::vector<int> degenerate;     // components of X_1
    std::vector<int> nondegenerate;
    std::vector<bool> is_degenerate; // per component
};
NondegenerateSplit nondegenerate_split(const TSG& X);  // NotComplete

GroupoidFunctor long_edge(const TSG& X, int n);
GroupoidFunctor principal_edge(const TSG& X, int n, int k);

// (X_r)_f restricted to effective simplices; f is a component of X_1.
Fibration effective_fiber(const TSG& X, int f, int r);
// Same cardinality, by counting components.
Rational effective_fiber_cardinality(const TSG& X, int f, int r);

// word over {'0','1','a'}; full subgroupoid of X_{|w|}
Inclusion word_subgroupoid(const TSG& X, const std::string& w);

TSG truncate(const TSG& X, int K);

struct Decalage {
    TSG dec;
    TSG base;           // X truncated to K-1
    SimplicialMap counit;  // dec -> base (pointers into this struct: keep it in place)
};
// Results are heap-allocated so the map's pointers stay valid.
std::unique_ptr<Decalage> decalage_lower(const TSG& X);
std::unique_ptr<Decalage> decalage_upper(const TSG& X);

struct CulfReport {
    bool culf = false;
    bool precondition_verified = false;  // both sides passed decomposition_check
    std::vector<SquareReport> squares;
};
CulfReport culf_check(const SimplicialMap& F, bool verify_premises = true);

SimplicialMap identity_map(const TSG& X);

struct OracleOptions {
    int rmax = -1;           // effective fibres for 1..rmax (default K)
    bool verify = true;      // run completeness/decomposition checks first
};
IncidenceOracle to_oracle(const TSG& X, OracleOptions opt = {});

}  // namespace decomp
