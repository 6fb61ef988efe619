#include "oq/json_io.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace oq {

json bigint_to_json(const bigint& v) {
    static const bigint lo = std::numeric_limits<std::int64_t>::min();
    static const bigint hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
    return v.str();
}

bigint bigint_from_json(const json& j) {
    if (j.is_number_integer()) return bigint(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return bigint(j.get<std::string>());
        } catch (const std::exception&) {
            throw argument_error("multiplicity string is not a decimal integer");
        }
    }
    throw argument_error("multiplicity must be an integer or a decimal string");
}

json character_to_json(const Character& f, const RootDatum& rd) {
    std::vector<std::pair<std::vector<coord>, bigint>> rows;
    rows.reserve(f.terms.size());
    for (const auto& [off, c] : f.terms) {
        Weight w = weight_of_offset(f.window, off, rd);
        rows.emplace_back(w.c, c);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    json terms = json::array();
    for (const auto& [w, c] : rows) terms.push_back(json::array({w, bigint_to_json(c)}));
    return json{{"type", rd.label},
                {"top", f.window.top.c},
                {"depth", f.window.depth},
                {"exact_outside", f.exact_outside},
                {"terms", std::move(terms)}};
}

Character character_from_json(const json& j, const RootDatum& rd) {
    if (!j.is_object()) throw argument_error("character JSON must be an object");
    for (const char* key : {"type", "top", "depth", "exact_outside", "terms"})
        if (!j.contains(key))
            throw argument_error(std::string("character JSON lacks field '") + key + "'");
    if (j.at("type").get<std::string>() != rd.label)
        throw argument_error("character is for type " + j.at("type").get<std::string>() +
                             ", expected " + rd.label);
    Character f;
    auto top = j.at("top").get<std::vector<coord>>();
    if (top.size() != static_cast<std::size_t>(rd.rank))
        throw argument_error("top weight has the wrong rank");
    f.window.top = Weight{std::move(top)};
    f.window.depth = j.at("depth").get<coord>();
    if (f.window.depth < 0) throw argument_error("window depth must be nonnegative");
    f.exact_outside = j.at("exact_outside").get<bool>();
    if (!j.at("terms").is_array()) throw argument_error("terms must be an array");
    for (const auto& row : j.at("terms")) {
        if (!row.is_array() || row.size() != 2)
            throw argument_error("each term must be a [weight, multiplicity] pair");
        auto wc = row.at(0).get<std::vector<coord>>();
        if (wc.size() != static_cast<std::size_t>(rd.rank))
            throw argument_error("support weight has the wrong rank");
        Weight w{std::move(wc)};
        bigint c = bigint_from_json(row.at(1));
        if (c == 0) throw argument_error("stored multiplicities must be nonzero");
        auto off = rd.root_coords_of(f.window.top - w);
        if (!off || !off->nonnegative())
            throw argument_error("support weight lies outside the cone below the top: " +
                                 w.to_string());
        for (coord x : off->c)
            if (x > f.window.depth)
                throw argument_error("support weight lies outside the window: " + w.to_string());
        if (!f.terms.emplace(off->c, std::move(c)).second)
            throw argument_error("duplicate support weight " + w.to_string());
    }
    return f;
}

json regime_to_json(const Sl2Regime& regime) {
    if (regime.quantum())
        return json{{"kind", "quantum"}, {"ell", regime.ell}, {"p", regime.p}};
    return json{{"kind", "modular"}, {"p", regime.p}};
}

json ledger_to_json(const CompositionLedger& ledger, coord n, const Sl2Regime& regime) {
    json factors = json::array();
    for (auto it = ledger.factors.rbegin(); it != ledger.factors.rend(); ++it)
        factors.push_back(json::array({it->first, bigint_to_json(it->second)}));
    json rem = nullptr;
    if (ledger.remainder)
        rem = json{{"restricted_part", ledger.remainder->restricted_part},
                   {"verma_part", ledger.remainder->verma_part},
                   {"twist", ledger.remainder->twist}};
    return json{{"n", n},
                {"regime", regime_to_json(regime)},
                {"cutoff", ledger.cutoff},
                {"factors", std::move(factors)},
                {"remainder", std::move(rem)}};
}

json reflection_to_json(const AffineReflection& r) {
    return json{{"beta", r.beta.c}, {"m", r.m}, {"modulus", r.modulus}};
}

json linkage_result_to_json(const LinkageResult& res) {
    json chain = json::array();
    for (const auto& s : res.chain)
        chain.push_back(json{{"from", s.from.c},
                             {"reflection", reflection_to_json(s.reflection)},
                             {"to", s.to.c}});
    return json{{"linked", res.linked}, {"chain", std::move(chain)}};
}

} // namespace oq
