#include "oq/provider.hpp"

#include <fstream>
#include <map>
#include <memory>

#include "oq/json_io.hpp"

namespace oq {

namespace {

bool is_dominant(const Weight& w) {
    for (coord x : w.c)
        if (x < 0) return false;
    return true;
}

bool is_restricted(const Weight& w, coord m) {
    for (coord x : w.c)
        if (x < 0 || x >= m) return false;
    return true;
}

} // namespace

CharacterProvider sl2_restricted_provider(coord modulus) {
    if (modulus < 2) throw config_error("provider modulus must be >= 2");
    auto rd = std::make_shared<RootDatum>(build_root_datum('A', 1));
    CharacterProvider p;
    p.modulus = modulus;
    p.provenance = "sl2 closed form";
    p.lookup = [modulus, rd](const Weight& lambda) -> std::optional<Character> {
        if (lambda.rank() != 1 || !is_restricted(lambda, modulus)) return std::nullopt;
        return weyl_character(lambda, *rd);
    };
    return p;
}

CharacterProvider weyl_char_provider(coord modulus, const RootDatum& rd) {
    if (modulus < 2) throw config_error("provider modulus must be >= 2");
    auto datum = std::make_shared<RootDatum>(rd);
    CharacterProvider p;
    p.modulus = modulus;
    p.provenance = "Weyl characters (valid for generic q / large p only)";
    p.lookup = [datum](const Weight& lambda) -> std::optional<Character> {
        if (lambda.rank() != static_cast<std::size_t>(datum->rank) || !is_dominant(lambda))
            return std::nullopt;
        return weyl_character(lambda, *datum);
    };
    return p;
}

CharacterProvider table_provider_from_file(const std::string& path, const RootDatum& rd) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open provider file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error("provider file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object() || !j.contains("modulus") || !j.contains("type") || !j.contains("entries"))
        throw config_error("provider file needs a header {modulus, type, provenance} and entries");
    if (j.at("type").get<std::string>() != rd.label)
        throw config_error("provider file is for type " + j.at("type").get<std::string>() +
                           ", expected " + rd.label);
    coord modulus = j.at("modulus").get<coord>();
    if (modulus < 2) throw config_error("provider modulus must be >= 2");

    auto table = std::make_shared<std::map<Weight, Character>>();
    for (const auto& row : j.at("entries")) {
        if (!row.is_array() || row.size() != 2)
            throw config_error("provider entries must be [key, character] pairs");
        Weight key{row.at(0).get<std::vector<coord>>()};
        if (key.rank() != static_cast<std::size_t>(rd.rank))
            throw config_error("provider key of wrong rank: " + key.to_string());
        if (!is_restricted(key, modulus))
            throw config_error("provider key is not restricted at the modulus: " + key.to_string());
        Character f = character_from_json(row.at(1), rd);
        if (!(f.window.top == key))
            throw config_error("provider entry top differs from its key " + key.to_string());
        auto top_term = f.terms.find(std::vector<coord>(key.rank(), 0));
        if (top_term == f.terms.end() || top_term->second != 1)
            throw config_error("provider entry lacks top coefficient 1 at " + key.to_string());
        if (!table->emplace(key, std::move(f)).second)
            throw config_error("duplicate provider key " + key.to_string());
    }

    // Steinberg cross-check: the (modulus-1)ρ entry, when present, must be the
    // Steinberg character.
    Weight st_key = rd.rho * (modulus - 1);
    auto st_it = table->find(st_key);
    if (st_it != table->end()) {
        Character st = steinberg_character(modulus, rd);
        bool ok;
        if (st_it->second.exact_outside) {
            ok = st_it->second.terms == st.terms;
        } else {
            ok = restricted(st, st_it->second.window, rd).terms == st_it->second.terms;
        }
        if (!ok) throw config_error("provider entry at (m-1)rho fails the Steinberg cross-check");
    }

    CharacterProvider p;
    p.modulus = modulus;
    p.provenance = j.value("provenance", std::string("table file ") + path);
    p.lookup = [table](const Weight& lambda) -> std::optional<Character> {
        auto it = table->find(lambda);
        if (it == table->end()) return std::nullopt;
        return it->second;
    };
    return p;
}

} // namespace oq
