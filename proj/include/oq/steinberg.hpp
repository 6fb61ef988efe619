#pragma once

#include <optional>

#include "oq/character.hpp"
#include "oq/provider.hpp"

namespace oq {

// Modulus data for simple-character assembly. ell = 0 selects the modular
// regime (one prime p); ell > 0 the quantum regime (root of unity order ell,
// field characteristic p). r_limit caps the recursion depth of the adic
// expansion; unset means the stabilization bound implied by the window depth
// (the natural exhaustion point, so the default never truncates work).
struct AssemblyRegime {
    coord ell = 0;
    coord p = 0;
    std::optional<int> r_limit;

    bool quantum() const { return ell != 0; }
    static AssemblyRegime modular(coord p) { return {0, p, std::nullopt}; }
    static AssemblyRegime quantum_at(coord ell, coord p) { return {ell, p, std::nullopt}; }
};

struct SimpleCharRequest {
    Weight lambda;
    AssemblyRegime regime;
    TruncationWindow window; // window.top must equal lambda
};

// Validate the standing modulus hypotheses: p prime; ell odd, > 1, and not
// divisible by 3 in type G2. Throws config_error.
void validate_regime(const AssemblyRegime& regime, const RootDatum& rd);

// Char L(λ) in the modular regime, assembled recursively from the provider's
// restricted characters via the tensor factorization λ = λ⁰ + p·λ¹:
// Char L(λ) = provider(λ⁰) · stretch(Char L(λ¹), p), with two base cases —
// antidominant λ (closed form, see antidominant_simple_char) and window
// exhaustion (depth 0 retains only the top coefficient).
Character simple_char_modular(const SimpleCharRequest& req, const CharacterProvider& provider,
                              const RootDatum& rd);

// Char L_q(λ) in the quantum regime: q_provider(λ⁰) · stretch of the modular
// character of λ¹ at p, for λ = λ⁰ + ℓ·λ¹.
Character simple_char_quantum(const SimpleCharRequest& req, const CharacterProvider& q_provider,
                              const CharacterProvider& p_provider, const RootDatum& rd);

// One-step expansion at the grouped modulus p^r: λ = λ⁰ + p^r λ¹ with λ⁰
// restricted at p^r, whose character is assembled digit-wise from the
// p-provider. Cross-check target for iterating simple_char_modular.
Character simple_char_grouped(const Weight& lambda, coord p, int r,
                              const CharacterProvider& provider, const RootDatum& rd,
                              const TruncationWindow& window);

// Closed form at antidominant λ (all coordinates ≤ -1): with r minimal such
// that p^r·ρ + λ is restricted at p^r,
// Char L(λ) = Char L(p^r·ρ + λ) · stretch(q⁻, p^r).
Character antidominant_simple_char(const Weight& lambda, coord p,
                                   const CharacterProvider& provider, const RootDatum& rd,
                                   const TruncationWindow& window);

// dim L(λ)_μ via the stabilized decomposition: for r with p^r strictly larger
// than every simple-root coordinate of λ - μ, the multiplicity equals a single
// restricted-character coefficient and is independent of r.
struct StabilizedMult {
    bigint mult;
    int r = 0;
};
StabilizedMult weight_mult_stabilized(const Weight& lambda, const Weight& mu, coord p,
                                      const CharacterProvider& provider, const RootDatum& rd);

// Same multiplicity computed at a caller-chosen exponent (for testing that
// the answer has stabilized).
bigint weight_mult_at_r(const Weight& lambda, const Weight& mu, coord p, int r,
                        const CharacterProvider& provider, const RootDatum& rd);

} // namespace oq
