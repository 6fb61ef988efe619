#pragma once

#include <map>
#include <optional>
#include <vector>

#include "oq/root_datum.hpp"

namespace oq {

// Retained region of a (possibly infinitely supported) character: the box of
// weights top - Σ o_j α_j with every offset coordinate o_j in [0, depth].
struct TruncationWindow {
    Weight top;
    coord depth = 0;
    friend bool operator==(const TruncationWindow&, const TruncationWindow&) = default;
};

// A formal character, truncated to a window. Every character handled here has
// its true support inside the downward cone {top - Σ n_j α_j : n_j ≥ 0}; the
// window covers the part of the cone we retain coefficients for. Terms are
// keyed by offset vectors from the top (simple-root coordinates, each entry
// in [0, depth]); zero coefficients are never stored. exact_outside means the
// true character vanishes at every weight outside the window box, so the
// finitely many stored terms are the whole character.
struct Character {
    TruncationWindow window;
    std::map<std::vector<coord>, bigint> terms;
    bool exact_outside = false;

    // Identity is window plus nonzero support; the exactness flag is a
    // knowledge attribute, not part of the value.
    friend bool operator==(const Character& a, const Character& b) {
        return a.window == b.window && a.terms == b.terms;
    }
};

// e^lambda as an exact character (window depth 0).
Character monomial(const Weight& lambda);

// Zero character on the given window, marked exact.
Character zero_character(const TruncationWindow& window);

Weight weight_of_offset(const TruncationWindow& window, const std::vector<coord>& offset,
                        const RootDatum& rd);

// Coefficient of f at an arbitrary weight: a value when the weight is inside
// the window or known to be zero (off the cone / off the lattice / outside an
// exact character's box); nullopt when the weight falls in the truncated
// unknown region.
std::optional<bigint> coeff_at(const Character& f, const Weight& mu, const RootDatum& rd);

// Re-expresses f on the target window (the target top may differ from f's by
// any root-lattice shift). Points of the target box outside f's cone read 0;
// points inside f's box read the stored coefficient; points in f's truncated
// unknown region raise insufficient_depth_error. The result keeps exactness
// only when f was exact and no nonzero term was dropped.
Character restricted(const Character& f, const TruncationWindow& window, const RootDatum& rd);

// Multiply every coefficient by k.
Character scaled(const Character& f, const bigint& k);

// Pointwise sum. The tops must agree; depths may differ when one window
// refines the other, and the result takes the deepest sound depth (the
// shallower truncated depth, or the max when both summands are exact so that
// nothing is lost).
Character char_add(const Character& f, const Character& g);
Character char_sub(const Character& f, const Character& g);

// Product, truncated to depth `depth` (pass -1 to infer the deepest sound
// default: d_f + d_g when both are exact, the truncated operand's depth when
// one is, min(d_f, d_g) otherwise). Soundness demands each truncated operand
// retain at least the result depth; otherwise insufficient_depth_error.
Character char_mul(const Character& f, const Character& g, coord depth = -1);

// Scale all exponents by m (characters of Frobenius twists). Offsets that are
// not multiples of m are genuinely zero, so a truncated operand of depth d
// yields depth m·d + m - 1.
Character frobenius_stretch(const Character& f, coord m);

// Total dimension Σ multiplicities; requires exact_outside.
bigint dimension(const Character& f);

// Char of the Verma module with highest weight lambda: coefficient at offset
// n is the Kostant partition value P(n). Requires window.top = lambda.
Character verma_character(const Weight& lambda, const RootDatum& rd,
                          const TruncationWindow& window);

// Char of the Verma module at -rho (the universal factor: every Verma
// character is this shifted by e^{lambda+rho}). Requires window.top = -rho.
Character q_minus(const RootDatum& rd, const TruncationWindow& window);

// Finite simple/Weyl character at dominant lambda via Freudenthal's
// recursion; cross-checked against the Weyl dimension formula.
Character weyl_character(const Weight& lambda, const RootDatum& rd);

// Baby Verma character: coefficient at offset nu counts partitions of nu into
// positive roots each used fewer than `bound` times. Dimension bound^N.
Character baby_verma_character(const Weight& lambda, coord bound, const RootDatum& rd);

// Steinberg character: weyl_character((m-1)rho), dimension check m^N.
Character steinberg_character(coord m, const RootDatum& rd);

} // namespace oq
