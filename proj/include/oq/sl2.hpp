#pragma once

#include <map>
#include <optional>
#include <vector>

#include "oq/character.hpp"

namespace oq {

// Modulus regime for the rank-one engine. Weights are single integers
// (coordinate along the fundamental weight).
struct Sl2Regime {
    coord ell = 0; // 0: modular at p; otherwise quantum at (ell, p)
    coord p = 0;

    bool quantum() const { return ell != 0; }
    static Sl2Regime modular(coord p) { return {0, p}; }
    static Sl2Regime quantum_at(coord ell, coord p) { return {ell, p}; }
};

// One layer of a Verma filtration: the module L(restricted_part) ⊗
// Δ(verma_part)^{(twist)}; its character is
// Char L(restricted_part) · stretch(Char Δ(verma_part), twist).
struct FiltrationQuotient {
    coord restricted_part = 0;
    coord verma_part = 0;
    coord twist = 1;
    friend bool operator==(const FiltrationQuotient&, const FiltrationQuotient&) = default;
};

// Result of expanding a Verma module down to a cutoff: fully resolved simple
// factors (weight -> multiplicity, all with highest weight >= cutoff), plus
// the unexpanded symbolic tails. Conservation: the factor characters plus,
// for each unresolved item, its character minus the simple character of its
// top weight (that top is already counted among the factors) sum to the Verma
// character at every weight >= cutoff.
struct CompositionLedger {
    std::map<coord, bigint> factors;
    std::vector<FiltrationQuotient> unresolved; // every stopped tail
    std::optional<FiltrationQuotient> remainder; // the deepest one (largest twist)
    coord cutoff = 0;
};

// Char L(n) for every integer n, by the closed rank-one case split: restricted
// digits, Steinberg factorization, the antidominant series, and the reduction
// of negative weights to a restricted weight times a stretched antidominant
// series. window.top must equal n.
Character sl2_simple_char(coord n, const Sl2Regime& regime, const TruncationWindow& window);

// The two-term (or one-term, when the bottom digit is p-1 resp. ell-1) Verma
// filtration of Δ(n), submodule first, top quotient last.
std::vector<FiltrationQuotient> sl2_verma_filtration_step(coord n, const Sl2Regime& regime);

// Repeatedly expands Δ(n) by sl2_verma_filtration_step, converting twisted
// restricted-times-simple products into single simple highest weights, until
// further expansion could only produce factors below the cutoff. In the
// quantum regime the first step uses ell and all later steps use p.
// Requires cutoff < n.
CompositionLedger sl2_composition_factors(coord n, const Sl2Regime& regime, coord cutoff);

// Highest weight of the socle of Δ(n): -n-2 for n >= 0, n itself for n = -1
// (the simple Verma), none for n <= -2 (socle-free).
std::optional<coord> sl2_socle(coord n, const Sl2Regime& regime);

// Composition multiset of the baby Verma module at modulus p^r (labels are
// highest weights; the label lattice is s + p^r·v over the filtration items).
// r = 0 gives the trivial one-term answer.
std::map<coord, bigint> sl2_baby_verma_comp(coord n, int r, coord p);

// Quantum analogue at modulus ell·p^r: one ell-step followed by r p-steps.
std::map<coord, bigint> sl2_baby_verma_comp_quantum(coord n, int r, coord ell, coord p);

// Indecomposable tilting character: χ(m) in the lowest alcove, χ(m) + χ(its
// reflection) in the second, and the tensor recursion above that.
Character sl2_tilting_char(coord m, const Sl2Regime& regime);

// Verma multiplicity (T^∞(λ) : Δ(μ)) against the baby Verma composition
// multiplicity (Δ̃(μ) : L̃(-λ-2)), which the reciprocity theorem predicts to
// be equal. Requires λ >= -1.
struct ReciprocityResult {
    bigint lhs;
    bigint rhs;
    bool equal = false;
};
ReciprocityResult sl2_reciprocity_check(coord lambda, coord mu, const Sl2Regime& regime);

} // namespace oq
