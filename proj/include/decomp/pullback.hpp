#pragma once
#include "decomp/groupoid.hpp"

#include <functional>
#include <string>

namespace decomp {

//      P --top--> B
//      |          |
//    left       right
//      v          v
//      A --bot--> C
struct CommutingSquare {
    GroupoidFunctor left;    // P -> A
    GroupoidFunctor top;     // P -> B
    GroupoidFunctor bottom;  // A -> C
    GroupoidFunctor right;   // B -> C
    // Optional: compare only against the part of the homotopy pullback over
    // pairs of components (of A, of B) accepted here.  Used by size-truncated
    // models, whose pullbacks contain pairs too big to exist in P.
    std::function<bool(int, int)> within;
};

// Strict commutation of the two composites P -> C.
bool commutes(const CommutingSquare& sq);

// Whether P -> hpb(bottom, right), p |-> (left p, top p, id), is an
// equivalence.  Decided skeletally: components of the iso-comma over a pair
// of components are double cosets H_B \ Aut(c) / H_A, their automorphism
// groups are the pairs of loops with equal image, and essential
// surjectivity is read off the homotopy cardinality.  Throws NotCommuting.
bool is_pullback_square(const CommutingSquare& sq);

// Reference route: builds the iso-comma object and the comparison functor
// explicitly and asks is_equivalence.  Much slower; used for cross-checks.
bool is_pullback_square_explicit(const CommutingSquare& sq);

// Homotopy cardinality of hpb(f, g) without constructing it.
Rational pullback_cardinality(const GroupoidFunctor& f, const GroupoidFunctor& g,
                              const std::function<bool(int, int)>& within = {});

// Human-readable reason of the first failure (empty when it is a pullback).
std::string pullback_failure(const CommutingSquare& sq);

}  // namespace decomp
