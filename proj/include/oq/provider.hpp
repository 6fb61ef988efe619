#pragma once

#include <functional>
#include <optional>
#include <string>

#include "oq/character.hpp"

namespace oq {

// Source of restricted simple characters: a partial map from restricted
// weights (all coordinates in [0, modulus)) to their simple characters.
// These are external input by design — beyond rank one and the Steinberg
// weight they are not computable from first principles here.
struct CharacterProvider {
    coord modulus = 0;
    std::string provenance;
    std::function<std::optional<Character>(const Weight&)> lookup;
};

// Exact provider for rank one: Char L(n) = χ(n) for n in [0, modulus),
// which is correct in both the modular and quantum regimes.
CharacterProvider sl2_restricted_provider(coord modulus);

// Generic-regime provider: answers every dominant weight with the Weyl
// character χ(λ). Valid for generic q / large p only; for small moduli in
// rank ≥ 2 (and at non-restricted weights) this is generally incorrect.
CharacterProvider weyl_char_provider(coord modulus, const RootDatum& rd);

// Table provider loaded from a JSON file. Validates on load: the declared
// root type matches, every entry is restricted with top coefficient 1 at its
// key and support below the key, and the Steinberg entry (modulus-1)·ρ, when
// present, equals steinberg_character(modulus).
CharacterProvider table_provider_from_file(const std::string& path, const RootDatum& rd);

} // namespace oq
