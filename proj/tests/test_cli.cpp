#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(OQCHAR_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json parse(const RunResult& r) {
    CAPTURE(r.out);
    REQUIRE(!r.out.empty());
    return json::parse(r.out);
}

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const json& content) : path(name) {
        std::ofstream f(path);
        f << content.dump();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

json character_entry(long long key, std::vector<std::pair<long long, int>> support) {
    json terms = json::array();
    long long depth = 0;
    for (const auto& [w, m] : support) depth = std::max(depth, (key - w) / 2);
    for (const auto& [w, m] : support) terms.push_back(json::array({json::array({w}), m}));
    return json::array({json::array({key}),
                        json{{"type", "A1"},
                             {"top", json::array({key})},
                             {"depth", depth},
                             {"exact_outside", true},
                             {"terms", terms}}});
}

} // namespace

TEST_CASE("char subcommand") {
    SUBCASE("verma json") {
        RunResult r = run_cli("char verma --type A1 --lambda 0 --depth 3");
        CHECK(r.code == 0);
        json j = parse(r);
        CHECK(j.at("type") == "A1");
        CHECK(j.at("top") == json::array({0}));
        CHECK(j.at("depth") == 3);
        CHECK(j.at("exact_outside") == false);
        json expect = json::array();
        for (int w : {-6, -4, -2, 0}) expect.push_back(json::array({json::array({w}), 1}));
        CHECK(j.at("terms") == expect);
    }
    SUBCASE("modular simple at a negative weight") {
        RunResult r = run_cli("char simple --type A1 --p 3 --lambda -2 --depth 8");
        CHECK(r.code == 0);
        json j = parse(r);
        json expect = json::array();
        for (int w : {-16, -14, -10, -8, -4, -2})
            expect.push_back(json::array({json::array({w}), 1}));
        CHECK(j.at("terms") == expect);
    }
    SUBCASE("steinberg dimension in pretty mode") {
        RunResult r = run_cli("char steinberg --type A2 --ell 5 --output pretty");
        CHECK(r.code == 0);
        CHECK(r.out.find("dimension 125") != std::string::npos);
    }
    SUBCASE("baby Verma dimension") {
        RunResult r = run_cli("char baby --type B2 --ell 3 --lambda 0,0 --output pretty");
        CHECK(r.code == 0);
        CHECK(r.out.find("dimension 81") != std::string::npos);
    }
    SUBCASE("weyl character in G2") {
        RunResult r = run_cli("char weyl --type G2 --lambda 1,0 --output pretty");
        CHECK(r.code == 0);
        CHECK(r.out.find("dimension 7") != std::string::npos);
    }
    SUBCASE("qminus") {
        RunResult r = run_cli("char qminus --type A2 --depth 3");
        CHECK(r.code == 0);
        json j = parse(r);
        CHECK(j.at("top") == json::array({-1, -1}));
        CHECK(j.at("exact_outside") == false);
        json top_term = json::array({json::array({-1, -1}), 1});
        bool found = false;
        for (const auto& t : j.at("terms")) found = found || t == top_term;
        CHECK(found);
    }
}

TEST_CASE("linkage subcommand") {
    SUBCASE("linked pair with a one-step chain") {
        RunResult r = run_cli("linkage --type A1 --p 3 --mu 0 --lambda 4");
        CHECK(r.code == 0);
        json j = parse(r);
        CHECK(j.at("linked") == true);
        REQUIRE(j.at("chain").size() == 1);
        CHECK(j.at("chain")[0].at("from") == json::array({4}));
        CHECK(j.at("chain")[0].at("to") == json::array({0}));
        CHECK(j.at("chain")[0].at("reflection").at("modulus") == 3);
    }
    SUBCASE("unlinked pair exits 1") {
        RunResult r = run_cli("linkage --type A1 --p 3 --mu 1 --lambda 4");
        CHECK(r.code == 1);
        CHECK(parse(r).at("linked") == false);
    }
    SUBCASE("reflexive") {
        RunResult r = run_cli("linkage --type A1 --p 3 --mu 4 --lambda 4");
        CHECK(r.code == 0);
        json j = parse(r);
        CHECK(j.at("linked") == true);
        CHECK(j.at("chain").empty());
    }
    SUBCASE("pretty mode") {
        RunResult r = run_cli("linkage --type A2 --ell 3 --mu 0,0 --lambda 1,1 --output pretty");
        CHECK(r.code == 0);
        CHECK(r.out.substr(0, 6) == "linked");
    }
}

TEST_CASE("ledger subcommand") {
    SUBCASE("modular pin") {
        RunResult r = run_cli("ledger --n 0 --cutoff -54 --p 3");
        CHECK(r.code == 0);
        json j = parse(r);
        json expect = json::array();
        for (int w : {0, -2, -6, -18}) expect.push_back(json::array({w, 1}));
        CHECK(j.at("factors") == expect); // descending by weight
        CHECK(j.at("remainder").at("twist") == 27);
        CHECK(j.at("remainder").at("restricted_part") == 0);
        CHECK(j.at("remainder").at("verma_part") == 0);
        CHECK(j.at("regime") == json{{"kind", "modular"}, {"p", 3}});
    }
    SUBCASE("quantum pin") {
        RunResult r = run_cli("ledger --n 0 --cutoff -40 --ell 5 --p 3");
        CHECK(r.code == 0);
        json j = parse(r);
        json expect = json::array();
        for (int w : {0, -2, -10}) expect.push_back(json::array({w, 1}));
        CHECK(j.at("factors") == expect);
        CHECK(j.at("remainder").at("twist") == 15);
        CHECK(j.at("regime") == json{{"kind", "quantum"}, {"ell", 5}, {"p", 3}});
    }
    SUBCASE("terminal ledger has null remainder") {
        RunResult r = run_cli("ledger --n -2 --cutoff -54 --p 3");
        CHECK(r.code == 0);
        CHECK(parse(r).at("remainder").is_null());
    }
}

TEST_CASE("reciprocity subcommand") {
    RunResult r = run_cli("reciprocity --lambda 0 --mu 0 --p 3");
    CHECK(r.code == 0);
    json j = parse(r);
    CHECK(j.at("lhs") == 1);
    CHECK(j.at("rhs") == 1);
    CHECK(j.at("equal") == true);
    r = run_cli("reciprocity --lambda 0 --mu 1 --p 3");
    CHECK(r.code == 0);
    j = parse(r);
    CHECK(j.at("lhs") == 0);
    CHECK(j.at("rhs") == 0);
}

TEST_CASE("verify subcommand") {
    SUBCASE("sl2 ledger suite") {
        RunResult r = run_cli("verify sl2-ledger --p 3 --cutoff -54");
        CHECK(r.code == 0);
        json j = parse(r);
        CHECK(j.at("passed") == true);
        REQUIRE(j.at("suites").size() == 1);
        std::string notes = j.at("suites")[0].at("notes").dump();
        CHECK(notes.find("factors 0:1 -2:1 -6:1 -18:1") != std::string::npos);
    }
    SUBCASE("verma identity suite") {
        RunResult r = run_cli("verify verma-identity --type A2 --trials 3 --depth 4");
        CHECK(r.code == 0);
        json j = parse(r);
        CHECK(j.at("passed") == true);
        CHECK(j.at("suites")[0].at("checks") == 3);
    }
}

TEST_CASE("determinism") {
    for (const char* cmd : {"char simple --type A2 --p 3 --lambda 2,2 --depth 4",
                            "ledger --n 4 --cutoff -30 --p 3"}) {
        RunResult a = run_cli(cmd);
        RunResult b = run_cli(cmd);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("error reporting") {
    SUBCASE("non-prime p") {
        RunResult r = run_cli("char simple --type A1 --p 4 --lambda 1");
        CHECK(r.code == 2);
        CHECK(parse(r).at("error").at("kind") == "config");
    }
    SUBCASE("unknown type") {
        RunResult r = run_cli("char verma --type E8 --lambda 0");
        CHECK(r.code == 2);
        CHECK(parse(r).at("error").at("kind") == "config");
    }
    SUBCASE("missing lambda") {
        RunResult r = run_cli("char simple --type A1 --p 3");
        CHECK(r.code == 2);
        CHECK(parse(r).at("error").at("kind") == "argument");
    }
    SUBCASE("missing modulus") {
        RunResult r = run_cli("linkage --type A1 --mu 0 --lambda 4");
        CHECK(r.code == 2);
        CHECK(parse(r).at("error").at("kind") == "config");
    }
    SUBCASE("window volume cap") {
        RunResult r = run_cli("char verma --type A4 --lambda 0,0,0,0 --depth 100");
        CHECK(r.code == 2);
        json j = parse(r);
        CHECK(j.at("error").at("kind") == "config");
        std::string msg = j.at("error").at("message").get<std::string>();
        CHECK(msg.find("safety cap") != std::string::npos);
    }
    SUBCASE("zero depth") {
        RunResult r = run_cli("char verma --type A1 --lambda 0 --depth 0");
        CHECK(r.code == 2);
    }
    SUBCASE("unknown subcommand") {
        RunResult r = run_cli("frobnicate");
        CHECK(r.code == 2);
    }
    SUBCASE("ell divisible by 3 in G2") {
        RunResult r = run_cli("char steinberg --type G2 --ell 9");
        CHECK(r.code == 2);
        CHECK(parse(r).at("error").at("kind") == "config");
    }
}

TEST_CASE("table providers") {
    SUBCASE("gap in the table reports the missing weights") {
        TempFile table("cli_gap_table.json",
                       json{{"modulus", 3},
                            {"type", "A1"},
                            {"provenance", "test table"},
                            {"entries", json::array({character_entry(0, {{0, 1}})})}});
        RunResult r =
            run_cli("char simple --type A1 --p 3 --lambda 4 --provider " + table.path);
        CHECK(r.code == 3);
        json j = parse(r);
        CHECK(j.at("error").at("kind") == "provider_gap");
        CHECK(j.at("error").at("missing") == json::array({json::array({1})}));
    }
    SUBCASE("table served through the environment variable") {
        TempFile table("cli_env_table.json",
                       json{{"modulus", 3},
                            {"type", "A1"},
                            {"provenance", "test table"},
                            {"entries", json::array({character_entry(1, {{1, 1}, {-1, 1}})})}});
        setenv("OQCHAR_PROVIDER", table.path.c_str(), 1);
        RunResult r = run_cli("char simple --type A1 --p 3 --lambda 1 --depth 4");
        unsetenv("OQCHAR_PROVIDER");
        CHECK(r.code == 0);
        json j = parse(r);
        json expect = json::array();
        for (int w : {-1, 1}) expect.push_back(json::array({json::array({w}), 1}));
        CHECK(j.at("terms") == expect);
    }
    SUBCASE("corrupted Steinberg entry is rejected") {
        TempFile table("cli_bad_table.json",
                       json{{"modulus", 3},
                            {"type", "A1"},
                            {"provenance", "test table"},
                            {"entries", json::array({character_entry(2, {{2, 1}})})}});
        RunResult r =
            run_cli("char simple --type A1 --p 3 --lambda 2 --provider " + table.path);
        CHECK(r.code == 2);
        json j = parse(r);
        CHECK(j.at("error").at("kind") == "config");
        std::string msg = j.at("error").at("message").get<std::string>();
        CHECK(msg.find("Steinberg") != std::string::npos);
    }
    SUBCASE("wrong-modulus table for a modular run is rejected") {
        TempFile table("cli_mod_table.json",
                       json{{"modulus", 5},
                            {"type", "A1"},
                            {"provenance", "test table"},
                            {"entries", json::array({character_entry(0, {{0, 1}})})}});
        RunResult r =
            run_cli("char simple --type A1 --p 3 --lambda 1 --provider " + table.path);
        CHECK(r.code == 2);
        CHECK(parse(r).at("error").at("kind") == "config");
    }
}
