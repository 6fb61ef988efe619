#pragma once

#include <string>

#include "json.hpp"

#include "oq/character.hpp"
#include "oq/linkage.hpp"
#include "oq/sl2.hpp"

namespace oq {

using json = nlohmann::json;

// Multiplicities serialize as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; both forms are accepted on input.
json bigint_to_json(const bigint& v);
bigint bigint_from_json(const json& j);

// {"type":…, "top":[…], "depth":…, "exact_outside":…, "terms":[[[w…],mult],…]}
// with terms sorted lexicographically ascending by weight vector.
json character_to_json(const Character& f, const RootDatum& rd);
Character character_from_json(const json& j, const RootDatum& rd);

json regime_to_json(const Sl2Regime& regime);

// {"n":…, "regime":…, "cutoff":…, "factors":[[weight,mult],…] descending,
//  "remainder": {"restricted_part":…, "verma_part":…, "twist":…} | null}
json ledger_to_json(const CompositionLedger& ledger, coord n, const Sl2Regime& regime);

json reflection_to_json(const AffineReflection& r);
json linkage_result_to_json(const LinkageResult& res);

} // namespace oq
