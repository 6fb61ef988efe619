#pragma once

#include <set>
#include <vector>

#include "oq/character.hpp"

namespace oq {

// The affine reflection s_{β,m} acting by the dot action:
// s_{β,m}·λ = λ - (<λ+ρ, β^∨> - m·modulus)·β.
struct AffineReflection {
    RootCoords beta; // positive root
    coord m = 0;
    coord modulus = 0;
    friend bool operator==(const AffineReflection&, const AffineReflection&) = default;
};

Weight apply_reflection(const AffineReflection& r, const Weight& lambda, const RootDatum& rd);

// One descent in a strong-linkage chain: to = reflection·from with to ≤ from.
struct LinkageStep {
    Weight from;
    AffineReflection reflection;
    Weight to;
};

struct LinkageResult {
    bool linked = false;
    std::vector<LinkageStep> chain; // descending, from lambda down to mu
};

// Is mu strongly linked to lambda at the given modulus? Breadth-first search
// downward from lambda over dot-reflection images that stay within [mu, lambda]
// in the root order (chain members always do, so the search is complete).
// Returns a witness chain on success.
LinkageResult strongly_linked(const Weight& mu, const Weight& lambda, coord modulus,
                              const RootDatum& rd);

// All weights in the window strongly linked to lambda (the admissible-quotient
// filter for Verma filtrations). window.top must equal lambda.
std::set<Weight> linkage_downset(const Weight& lambda, coord modulus, const RootDatum& rd,
                                 const TruncationWindow& window);

} // namespace oq
