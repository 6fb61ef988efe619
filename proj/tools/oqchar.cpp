#include <cstdio>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "oq/json_io.hpp"
#include "oq/linkage.hpp"
#include "oq/provider.hpp"
#include "oq/sl2.hpp"
#include "oq/steinberg.hpp"

using namespace oq;

namespace {

struct RunConfig {
    std::string root_type = "A1";
    std::optional<coord> ell;
    std::optional<coord> p;
    coord depth = 6;
    std::string output = "json";
    std::optional<std::string> provider_path;
    std::optional<int> r_limit;
};

bool is_prime(coord n) {
    if (n < 2) return false;
    for (coord d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void validate_config(const RunConfig& cfg, const RootDatum& rd) {
    if (cfg.p && !is_prime(*cfg.p))
        throw config_error("p must be prime, got " + std::to_string(*cfg.p));
    if (cfg.ell) {
        if (*cfg.ell <= 1 || *cfg.ell % 2 == 0)
            throw config_error("ell must be odd and > 1, got " + std::to_string(*cfg.ell));
        if (rd.family == 'G' && *cfg.ell % 3 == 0)
            throw config_error("ell must not be divisible by 3 in type G2");
    }
    if (cfg.output != "json" && cfg.output != "pretty")
        throw config_error("output must be json or pretty");
}

// Safety cap: never materialize more than 10^6 lattice points.
void check_volume(const std::vector<coord>& box_depths) {
    double v = 1;
    for (coord d : box_depths) {
        if (d < 0) throw config_error("negative window depth");
        v *= static_cast<double>(d) + 1;
        if (v > 1e6)
            throw config_error("window volume exceeds the safety cap of 10^6 lattice points");
    }
}

void check_depth(coord depth, int rank) {
    if (depth < 1) throw config_error("depth must be >= 1");
    check_volume(std::vector<coord>(static_cast<std::size_t>(rank), depth));
}

Weight parse_weight(const std::string& s, const RootDatum& rd) {
    std::vector<coord> c;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        try {
            std::size_t used = 0;
            c.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw argument_error("cannot parse weight coordinate '" + tok + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (c.size() != static_cast<std::size_t>(rd.rank))
        throw argument_error("weight has " + std::to_string(c.size()) + " coordinates, type " +
                             rd.label + " needs " + std::to_string(rd.rank));
    return Weight{std::move(c)};
}

coord require_p(const RunConfig& cfg) {
    if (!cfg.p) throw config_error("this command needs --p");
    return *cfg.p;
}

coord require_modulus(const RunConfig& cfg) {
    if (cfg.ell) return *cfg.ell;
    if (cfg.p) return *cfg.p;
    throw config_error("this command needs --ell or --p");
}

std::optional<std::string> provider_path(const RunConfig& cfg) {
    if (cfg.provider_path) return cfg.provider_path;
    const char* env = std::getenv("OQCHAR_PROVIDER");
    if (env && *env) return std::string(env);
    return std::nullopt;
}

// Table file when supplied and its modulus matches; otherwise the built-in
// sources (closed form in rank one, Weyl characters elsewhere).
CharacterProvider make_provider(coord modulus, const RootDatum& rd, const RunConfig& cfg) {
    if (auto path = provider_path(cfg)) {
        CharacterProvider t = table_provider_from_file(*path, rd);
        if (t.modulus == modulus) return t;
        if (cfg.ell && cfg.p && t.modulus != *cfg.ell && t.modulus != *cfg.p)
            throw config_error("provider file modulus matches neither ell nor p");
        if (!cfg.ell)
            throw config_error("provider file modulus differs from the requested modulus");
        // quantum regime with a file for the other modulus: fall through to built-ins
    }
    if (rd.rank == 1) return sl2_restricted_provider(modulus);
    return weyl_char_provider(modulus, rd);
}

void print_character(const Character& f, const RootDatum& rd, const RunConfig& cfg) {
    if (cfg.output == "json") {
        std::printf("%s\n", character_to_json(f, rd).dump().c_str());
        return;
    }
    std::printf("type %s  top %s  depth %lld  exact %s\n", rd.label.c_str(),
                f.window.top.to_string().c_str(), static_cast<long long>(f.window.depth),
                f.exact_outside ? "true" : "false");
    json terms = character_to_json(f, rd).at("terms");
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        std::string w = (*it)[0].dump();
        std::string m = (*it)[1].is_string() ? (*it)[1].get<std::string>() : (*it)[1].dump();
        std::printf("%s  %s\n", w.c_str(), m.c_str());
    }
    std::printf("%zu terms\n", terms.size());
    if (f.exact_outside) std::printf("dimension %s\n", dimension(f).str().c_str());
}

int cmd_char(const std::string& kind, const std::string& lambda_str, const RunConfig& cfg) {
    RootDatum rd = build_root_datum(cfg.root_type);
    validate_config(cfg, rd);

    if (kind == "qminus") {
        check_depth(cfg.depth, rd.rank);
        Character f = q_minus(rd, TruncationWindow{-rd.rho, cfg.depth});
        print_character(f, rd, cfg);
        return 0;
    }
    if (kind == "steinberg") {
        coord m = require_modulus(cfg);
        Weight top = rd.rho * (m - 1);
        auto box = rd.root_coords_of(top - rd.act(rd.w0, top));
        if (!box) throw internal_error("Steinberg box is not in the root lattice");
        check_volume(box->c);
        Character f = steinberg_character(m, rd);
        print_character(f, rd, cfg);
        return 0;
    }

    if (lambda_str.empty()) throw argument_error("this character kind needs --lambda");
    Weight lambda = parse_weight(lambda_str, rd);

    if (kind == "verma") {
        check_depth(cfg.depth, rd.rank);
        print_character(verma_character(lambda, rd, TruncationWindow{lambda, cfg.depth}), rd,
                        cfg);
        return 0;
    }
    if (kind == "weyl") {
        auto box = rd.root_coords_of(lambda - rd.act(rd.w0, lambda));
        if (!box || !box->nonnegative()) throw argument_error("weyl needs a dominant weight");
        check_volume(box->c);
        print_character(weyl_character(lambda, rd), rd, cfg);
        return 0;
    }
    if (kind == "baby") {
        coord m = require_modulus(cfg);
        std::vector<coord> total(static_cast<std::size_t>(rd.rank), 0);
        for (const auto& beta : rd.positive_roots)
            for (int j = 0; j < rd.rank; ++j)
                total[static_cast<std::size_t>(j)] =
                    checked_add(total[static_cast<std::size_t>(j)], beta.c[j]);
        for (coord& t : total) t = checked_mul(t, m - 1);
        check_volume(total);
        print_character(baby_verma_character(lambda, m, rd), rd, cfg);
        return 0;
    }
    if (kind == "simple") {
        check_depth(cfg.depth, rd.rank);
        TruncationWindow win{lambda, cfg.depth};
        Character f;
        if (cfg.ell) {
            coord p = require_p(cfg);
            SimpleCharRequest req{lambda, AssemblyRegime::quantum_at(*cfg.ell, p), win};
            req.regime.r_limit = cfg.r_limit;
            f = simple_char_quantum(req, make_provider(*cfg.ell, rd, cfg),
                                    make_provider(p, rd, cfg), rd);
        } else {
            coord p = require_p(cfg);
            SimpleCharRequest req{lambda, AssemblyRegime::modular(p), win};
            req.regime.r_limit = cfg.r_limit;
            f = simple_char_modular(req, make_provider(p, rd, cfg), rd);
        }
        print_character(f, rd, cfg);
        return 0;
    }
    throw argument_error("unknown character kind '" + kind + "'");
}

int cmd_linkage(const std::string& mu_str, const std::string& lambda_str, const RunConfig& cfg) {
    RootDatum rd = build_root_datum(cfg.root_type);
    validate_config(cfg, rd);
    coord k = require_modulus(cfg);
    Weight mu = parse_weight(mu_str, rd);
    Weight lambda = parse_weight(lambda_str, rd);
    {
        auto diff = rd.root_coords_of(lambda - mu);
        if (diff && diff->nonnegative()) check_volume(diff->c);
    }
    LinkageResult res = strongly_linked(mu, lambda, k, rd);
    if (cfg.output == "json") {
        std::printf("%s\n", linkage_result_to_json(res).dump().c_str());
    } else {
        std::printf("%s\n", res.linked ? "linked" : "not linked");
        for (const auto& s : res.chain)
            std::printf("  %s -> %s  via s(beta=%s, m=%lld, modulus=%lld)\n",
                        s.from.to_string().c_str(), s.to.to_string().c_str(),
                        s.reflection.beta.to_string().c_str(),
                        static_cast<long long>(s.reflection.m),
                        static_cast<long long>(s.reflection.modulus));
    }
    return res.linked ? 0 : 1;
}

Sl2Regime sl2_regime(const RunConfig& cfg) {
    coord p = require_p(cfg);
    return cfg.ell ? Sl2Regime::quantum_at(*cfg.ell, p) : Sl2Regime::modular(p);
}

int cmd_ledger(coord n, coord cutoff, const RunConfig& cfg) {
    RootDatum rd = build_root_datum("A1");
    validate_config(cfg, rd);
    Sl2Regime regime = sl2_regime(cfg);
    check_volume({(n - cutoff) / 2 + 1});
    CompositionLedger led = sl2_composition_factors(n, regime, cutoff);
    if (cfg.output == "json") {
        std::printf("%s\n", ledger_to_json(led, n, regime).dump().c_str());
        return 0;
    }
    std::printf("Verma %lld, cutoff %lld\n", static_cast<long long>(n),
                static_cast<long long>(cutoff));
    for (auto it = led.factors.rbegin(); it != led.factors.rend(); ++it)
        std::printf("  L(%lld) x %s\n", static_cast<long long>(it->first),
                    it->second.str().c_str());
    if (led.remainder)
        std::printf("  remainder: L(%lld) (x) Verma(%lld)^(%lld)\n",
                    static_cast<long long>(led.remainder->restricted_part),
                    static_cast<long long>(led.remainder->verma_part),
                    static_cast<long long>(led.remainder->twist));
    std::printf("  %zu unresolved tails\n", led.unresolved.size());
    return 0;
}

int cmd_reciprocity(coord lambda, coord mu, const RunConfig& cfg) {
    RootDatum rd = build_root_datum("A1");
    validate_config(cfg, rd);
    Sl2Regime regime = sl2_regime(cfg);
    ReciprocityResult res = sl2_reciprocity_check(lambda, mu, regime);
    if (cfg.output == "json") {
        json j{{"lambda", lambda},
               {"mu", mu},
               {"regime", regime_to_json(regime)},
               {"lhs", bigint_to_json(res.lhs)},
               {"rhs", bigint_to_json(res.rhs)},
               {"equal", res.equal}};
        std::printf("%s\n", j.dump().c_str());
    } else {
        std::printf("tilting side %s, baby Verma side %s: %s\n", res.lhs.str().c_str(),
                    res.rhs.str().c_str(), res.equal ? "equal" : "NOT equal");
    }
    return res.equal ? 0 : 1;
}

struct SuiteReport {
    std::string name;
    long checks = 0;
    long failures = 0;
    std::vector<std::string> notes;
};

SuiteReport suite_verma_identity(const RunConfig& cfg, long trials) {
    RootDatum rd = build_root_datum(cfg.root_type);
    check_depth(cfg.depth, rd.rank);
    SuiteReport rep;
    rep.name = "verma-identity";
    std::mt19937 rng(12345);
    std::uniform_int_distribution<coord> pick(-4, 4);
    for (long t = 0; t < trials; ++t) {
        std::vector<coord> c(static_cast<std::size_t>(rd.rank));
        for (coord& x : c) x = pick(rng);
        Weight lambda{c};
        TruncationWindow win{lambda, cfg.depth};
        Character lhs = verma_character(lambda, rd, win);
        Character rhs = restricted(
            char_mul(q_minus(rd, TruncationWindow{-rd.rho, cfg.depth}), monomial(lambda + rd.rho)),
            win, rd);
        ++rep.checks;
        if (!(lhs == rhs)) {
            ++rep.failures;
            rep.notes.push_back("mismatch at lambda " + lambda.to_string());
        }
    }
    return rep;
}

SuiteReport suite_steinberg_consistency(const RunConfig& cfg) {
    RootDatum rd = build_root_datum('A', 1);
    coord p = require_p(cfg);
    coord depth = cfg.depth >= 1 ? cfg.depth : 12;
    SuiteReport rep;
    rep.name = "steinberg-consistency";
    CharacterProvider prov = sl2_restricted_provider(p);
    coord top = checked_mul(checked_mul(p, p), p) - 1;
    for (coord lam = 0; lam <= top; ++lam) {
        Weight l{{lam}};
        TruncationWindow win{l, depth};
        SimpleCharRequest req{l, AssemblyRegime::modular(p), win};
        Character iterated = simple_char_modular(req, prov, rd);
        Character grouped = simple_char_grouped(l, p, 2, prov, rd, win);
        ++rep.checks;
        if (!(iterated == grouped)) {
            ++rep.failures;
            rep.notes.push_back("mismatch at lambda " + std::to_string(lam));
        }
    }
    return rep;
}

SuiteReport suite_sl2_ledger(const RunConfig& cfg, coord n, std::optional<coord> cutoff_opt) {
    RootDatum rd = build_root_datum('A', 1);
    coord p = require_p(cfg);
    Sl2Regime regime = cfg.ell ? Sl2Regime::quantum_at(*cfg.ell, p) : Sl2Regime::modular(p);
    coord cutoff = cutoff_opt ? *cutoff_opt : -2 * checked_mul(checked_mul(p, p), p);
    SuiteReport rep;
    rep.name = "sl2-ledger";
    check_volume({(n - cutoff) / 2 + 1});
    CompositionLedger led = sl2_composition_factors(n, regime, cutoff);
    coord depth = (n - cutoff) / 2;
    TruncationWindow win{Weight{{n}}, depth};
    Character total = zero_character(win);
    for (const auto& [w, mult] : led.factors) {
        Character s = sl2_simple_char(w, regime, TruncationWindow{Weight{{w}}, depth - (n - w) / 2});
        total = char_add(total, restricted(scaled(s, mult), win, rd));
    }
    for (const auto& q : led.unresolved) {
        coord head = checked_add(q.restricted_part, checked_mul(q.twist, q.verma_part));
        Character ls = sl2_simple_char(q.restricted_part, regime,
                                       TruncationWindow{Weight{{q.restricted_part}}, depth});
        Character dv = verma_character(Weight{{q.verma_part}}, rd,
                                       TruncationWindow{Weight{{q.verma_part}}, depth / q.twist});
        Character item = char_mul(ls, frobenius_stretch(dv, q.twist));
        Character hs = sl2_simple_char(head, regime,
                                       TruncationWindow{Weight{{head}}, depth - (n - head) / 2});
        total = char_add(total, restricted(item, win, rd));
        total = char_sub(total, restricted(hs, win, rd));
    }
    Character verma = verma_character(Weight{{n}}, rd, win);
    ++rep.checks;
    if (!(total.terms == verma.terms)) {
        ++rep.failures;
        rep.notes.push_back("conservation fails");
    }
    std::string facts = "factors";
    for (auto it = led.factors.rbegin(); it != led.factors.rend(); ++it)
        facts += " " + std::to_string(it->first) + ":" + it->second.str();
    rep.notes.push_back(facts);
    return rep;
}

SuiteReport suite_reciprocity(const RunConfig& cfg) {
    RootDatum rd = build_root_datum('A', 1);
    coord p = require_p(cfg);
    SuiteReport rep;
    rep.name = "reciprocity";
    Sl2Regime regime = cfg.ell ? Sl2Regime::quantum_at(*cfg.ell, p) : Sl2Regime::modular(p);
    coord block = cfg.ell ? checked_mul(*cfg.ell, p) : checked_mul(p, p);
    coord link_mod = cfg.ell ? *cfg.ell : p;
    coord depth = 3 * block;
    for (coord lam = -1; lam < block; ++lam) {
        auto down = linkage_downset(Weight{{lam}}, link_mod, rd,
                                    TruncationWindow{Weight{{lam}}, depth});
        for (const Weight& muw : down) {
            ReciprocityResult res = sl2_reciprocity_check(lam, muw.c[0], regime);
            ++rep.checks;
            if (!res.equal) {
                ++rep.failures;
                rep.notes.push_back("mismatch at lambda " + std::to_string(lam) + ", mu " +
                                    std::to_string(muw.c[0]));
            }
        }
    }
    return rep;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg, long trials, coord n,
               std::optional<coord> cutoff) {
    RootDatum rd = build_root_datum(cfg.root_type);
    validate_config(cfg, rd);
    std::vector<SuiteReport> reports;
    if (suite == "verma-identity" || suite == "all")
        reports.push_back(suite_verma_identity(cfg, trials));
    if (suite == "steinberg-consistency" || (suite == "all" && cfg.p))
        reports.push_back(suite_steinberg_consistency(cfg));
    if (suite == "sl2-ledger" || (suite == "all" && cfg.p))
        reports.push_back(suite_sl2_ledger(cfg, n, cutoff));
    if (suite == "reciprocity" || (suite == "all" && cfg.p))
        reports.push_back(suite_reciprocity(cfg));
    if (reports.empty()) throw argument_error("unknown verify suite '" + suite + "'");

    bool ok = true;
    for (const auto& r : reports) ok = ok && r.failures == 0;
    if (cfg.output == "json") {
        json suites = json::array();
        for (const auto& r : reports)
            suites.push_back(json{{"name", r.name},
                                  {"checks", r.checks},
                                  {"failures", r.failures},
                                  {"passed", r.failures == 0},
                                  {"notes", r.notes}});
        std::printf("%s\n", json{{"suites", suites}, {"passed", ok}}.dump().c_str());
    } else {
        for (const auto& r : reports) {
            std::printf("%s %s: %ld checks, %ld failures\n", r.failures == 0 ? "PASS" : "FAIL",
                        r.name.c_str(), r.checks, r.failures);
            for (const auto& note : r.notes) std::printf("  %s\n", note.c_str());
        }
        std::printf("overall %s\n", ok ? "PASS" : "FAIL");
    }
    return ok ? 0 : 1;
}

const char* error_kind(const error& e) {
    if (dynamic_cast<const provider_gap_error*>(&e)) return "provider_gap";
    if (dynamic_cast<const config_error*>(&e)) return "config";
    if (dynamic_cast<const argument_error*>(&e)) return "argument";
    if (dynamic_cast<const window_mismatch_error*>(&e)) return "window_mismatch";
    if (dynamic_cast<const insufficient_depth_error*>(&e)) return "insufficient_depth";
    if (dynamic_cast<const internal_error*>(&e)) return "internal";
    return "error";
}

int emit_error(const error& e, const RunConfig& cfg) {
    json obj{{"kind", error_kind(e)}, {"message", e.what()}};
    int code = 2;
    if (auto* gap = dynamic_cast<const provider_gap_error*>(&e)) {
        obj["missing"] = gap->missing;
        code = 3;
    }
    if (dynamic_cast<const internal_error*>(&e)) code = 4;
    if (cfg.output == "json")
        std::printf("%s\n", json{{"error", obj}}.dump().c_str());
    else
        std::fprintf(stderr, "error (%s): %s\n", error_kind(e), e.what());
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact characters, filtrations, and linkage for modular/quantum category O"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string kind, lambda_str, mu_str, suite;
    coord n = 0, cutoff = 0, lam1 = 0, mu1 = 0;
    long trials = 20;
    bool cutoff_set = false;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--type", cfg.root_type, "root datum label (A1..A4, B2..B4, C3, C4, D4, G2)");
        sub->add_option("--ell", cfg.ell, "quantum order (odd, > 1)");
        sub->add_option("--p", cfg.p, "prime characteristic");
        sub->add_option("--depth", cfg.depth, "window depth in simple-root steps");
        sub->add_option("--output", cfg.output, "json or pretty");
        sub->add_option("--provider", cfg.provider_path,
                        "JSON table of restricted simple characters (or env OQCHAR_PROVIDER)");
    };

    CLI::App* c_char = app.add_subcommand("char", "print a character");
    c_char->add_option("kind", kind, "verma|simple|baby|weyl|steinberg|qminus")
        ->required()
        ->check(CLI::IsMember({"verma", "simple", "baby", "weyl", "steinberg", "qminus"}));
    c_char->add_option("--lambda", lambda_str, "weight, comma-separated fundamental coordinates");
    c_char->add_option("--r-limit", cfg.r_limit, "cap on the adic recursion depth");
    add_common(c_char);

    CLI::App* c_link = app.add_subcommand("linkage", "strong linkage test with witness chain");
    c_link->add_option("--mu", mu_str, "candidate lower weight")->required();
    c_link->add_option("--lambda", lambda_str, "upper weight")->required();
    add_common(c_link);

    CLI::App* c_ledger = app.add_subcommand("ledger", "sl2 Verma composition ledger");
    c_ledger->add_option("--n", n, "highest weight")->required();
    c_ledger->add_option("--cutoff", cutoff, "lowest tracked weight")->required();
    add_common(c_ledger);

    CLI::App* c_rec = app.add_subcommand("reciprocity", "sl2 tilting/baby-Verma reciprocity");
    c_rec->add_option("--lambda", lam1, "tilting-side weight (>= -1)")->required();
    c_rec->add_option("--mu", mu1, "Verma-side weight")->required();
    add_common(c_rec);

    CLI::App* c_verify = app.add_subcommand("verify", "run an identity-verification suite");
    c_verify->add_option("suite", suite, "verma-identity|steinberg-consistency|sl2-ledger|reciprocity|all")
        ->required()
        ->check(CLI::IsMember(
            {"verma-identity", "steinberg-consistency", "sl2-ledger", "reciprocity", "all"}));
    c_verify->add_option("--trials", trials, "random weights per suite");
    c_verify->add_option("--n", n, "ledger highest weight");
    CLI::Option* co = c_verify->add_option("--cutoff", cutoff, "ledger cutoff");
    add_common(c_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cutoff_set = co->count() > 0;

    try {
        if (app.got_subcommand(c_char)) return cmd_char(kind, lambda_str, cfg);
        if (app.got_subcommand(c_link)) return cmd_linkage(mu_str, lambda_str, cfg);
        if (app.got_subcommand(c_ledger)) return cmd_ledger(n, cutoff, cfg);
        if (app.got_subcommand(c_rec)) return cmd_reciprocity(lam1, mu1, cfg);
        if (app.got_subcommand(c_verify))
            return cmd_verify(suite, cfg, trials, n,
                              cutoff_set ? std::optional<coord>(cutoff) : std::nullopt);
    } catch (const error& e) {
        return emit_error(e, cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 4;
    }
    return 2;
}
