#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oq/root_datum.hpp"
#include "oracles.hpp"

using namespace oq;

namespace {
const char* all_types[] = {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2"};
}

TEST_CASE("positive root counts and Weyl group orders") {
    struct Row {
        const char* label;
        std::size_t roots;
        std::size_t weyl;
        coord cox;
    };
    const Row rows[] = {
        {"A1", 1, 2, 2},   {"A2", 3, 6, 3},    {"A3", 6, 24, 4},   {"A4", 10, 120, 5},
        {"B2", 4, 8, 4},   {"B3", 9, 48, 6},   {"B4", 16, 384, 8}, {"C3", 9, 48, 6},
        {"C4", 16, 384, 8}, {"D4", 12, 192, 6}, {"G2", 6, 12, 6},
    };
    for (const Row& r : rows) {
        CAPTURE(r.label);
        RootDatum rd = build_root_datum(r.label);
        CHECK(rd.positive_roots.size() == r.roots);
        CHECK(rd.weyl_group.size() == r.weyl);
        CHECK(rd.coxeter_number == r.cox);
    }
}

TEST_CASE("Cartan matrix pins") {
    RootDatum g2 = build_root_datum("G2");
    CHECK(g2.cartan[0][0] == 2);
    CHECK(g2.cartan[0][1] == -3);
    CHECK(g2.cartan[1][0] == -1);
    RootDatum b2 = build_root_datum("B2");
    CHECK(b2.cartan[1][0] == -2);
    CHECK(b2.cartan[0][1] == -1);
    RootDatum c3 = build_root_datum("C3");
    CHECK(c3.cartan[1][2] == -2);
    CHECK(c3.cartan[2][1] == -1);
    // symmetrizer: d_i * c_ij == d_j * c_ji
    for (const char* t : all_types) {
        RootDatum rd = build_root_datum(t);
        for (int i = 0; i < rd.rank; ++i)
            for (int j = 0; j < rd.rank; ++j)
                CHECK(rd.sym[i] * rd.cartan[i][j] == rd.sym[j] * rd.cartan[j][i]);
    }
}

TEST_CASE("longest element sends rho to -rho") {
    for (const char* t : all_types) {
        CAPTURE(t);
        RootDatum rd = build_root_datum(t);
        CHECK(rd.act(rd.w0, rd.rho) == -rd.rho);
        // and permutes the positive roots to negatives: w0(alpha_i) is a
        // negative root for every simple root
        for (int i = 0; i < rd.rank; ++i) {
            RootCoords e{std::vector<coord>(rd.rank, 0)};
            e.c[i] = 1;
            Weight img = rd.act(rd.w0, rd.weight_of(e));
            auto back = rd.root_coords_of(img);
            REQUIRE(back.has_value());
            RootCoords neg = *back;
            for (coord& x : neg.c) x = -x;
            CHECK(rd.is_positive_root(neg));
        }
    }
}

TEST_CASE("weight/root coordinate round trip") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<coord> pick(-5, 5);
    for (const char* t : all_types) {
        RootDatum rd = build_root_datum(t);
        for (int trial = 0; trial < 20; ++trial) {
            RootCoords n{std::vector<coord>(rd.rank)};
            for (coord& x : n.c) x = pick(rng);
            auto back = rd.root_coords_of(rd.weight_of(n));
            REQUIRE(back.has_value());
            CHECK(back->c == n.c);
        }
        // a weight off the root lattice has no root coordinates (index > 1 types)
        if (std::string(t) == "A2") {
            CHECK(!rd.root_coords_of(Weight{{1, 0}}).has_value());
            CHECK(rd.root_coords_of(Weight{{2, -1}}).has_value());
        }
    }
}

TEST_CASE("Kostant partition function vs brute enumeration") {
    std::mt19937 rng(11);
    for (const char* t : {"A1", "A2", "B2", "A3", "G2"}) {
        CAPTURE(t);
        RootDatum rd = build_root_datum(t);
        std::uniform_int_distribution<coord> pick(0, 5);
        for (int trial = 0; trial < 25; ++trial) {
            RootCoords n{std::vector<coord>(rd.rank)};
            for (coord& x : n.c) x = pick(rng);
            CHECK(kostant_partition(n, rd) == oracles::brute_partition_count(n, rd));
        }
    }
}

TEST_CASE("bounded partitions vs brute enumeration") {
    std::mt19937 rng(13);
    for (const char* t : {"A1", "A2", "B2"}) {
        CAPTURE(t);
        RootDatum rd = build_root_datum(t);
        std::uniform_int_distribution<coord> pick(0, 6);
        for (coord bound : {2, 3, 5}) {
            for (int trial = 0; trial < 15; ++trial) {
                RootCoords n{std::vector<coord>(rd.rank)};
                for (coord& x : n.c) x = pick(rng);
                CHECK(count_bounded_partitions(n, bound, rd) ==
                      oracles::brute_bounded_count(n, bound, rd));
            }
        }
    }
    // bounded with huge bound equals unbounded on small targets
    RootDatum a2 = build_root_datum("A2");
    RootCoords n{{3, 2}};
    CHECK(count_bounded_partitions(n, 100, a2) == kostant_partition(n, a2));
}

TEST_CASE("adic decomposition floor semantics") {
    RootDatum a1 = build_root_datum("A1");
    auto d = adic_decompose(Weight{{-1}}, 3);
    CHECK(d.base == Weight{{2}});
    CHECK(d.quotient == Weight{{-1}});
    d = adic_decompose(Weight{{-2}}, 3);
    CHECK(d.base == Weight{{1}});
    CHECK(d.quotient == Weight{{-1}});
    d = adic_decompose(Weight{{7}}, 3);
    CHECK(d.base == Weight{{1}});
    CHECK(d.quotient == Weight{{2}});
    // reconstruction lambda = base + m * quotient across ranks
    RootDatum b2 = build_root_datum("B2");
    std::mt19937 rng(17);
    std::uniform_int_distribution<coord> pick(-20, 20);
    for (int trial = 0; trial < 40; ++trial) {
        Weight w{{pick(rng), pick(rng)}};
        for (coord m : {2, 3, 5}) {
            auto dec = adic_decompose(w, m);
            for (coord x : dec.base.c) {
                CHECK(x >= 0);
                CHECK(x < m);
            }
            CHECK(dec.base + dec.quotient * m == w);
        }
    }
    CHECK_THROWS_AS(adic_decompose(Weight{{1}}, 1), argument_error);
}

TEST_CASE("dot action and dominance order") {
    RootDatum a1 = build_root_datum("A1");
    // s_alpha . lambda at modulus 3 with m=1: lambda=4 -> 0
    RootCoords alpha{{1}};
    CHECK(dot_action(alpha, 1, 3, Weight{{4}}, a1) == Weight{{0}});
    CHECK(dot_action(alpha, 0, 1, Weight{{0}}, a1) == Weight{{-2}});
    RootDatum a2 = build_root_datum("A2");
    CHECK(dominance_leq(Weight{{-1, -1}}, Weight{{1, 1}}, a2));
    CHECK(!dominance_leq(Weight{{3, 0}}, Weight{{1, 1}}, a2));
    CHECK(dominance_leq(Weight{{1, 1}}, Weight{{1, 1}}, a2));
}

TEST_CASE("pairing against coroots") {
    for (const char* t : all_types) {
        RootDatum rd = build_root_datum(t);
        // <rho, alpha_i^vee> = 1 for every simple root
        for (int i = 0; i < rd.rank; ++i) {
            RootCoords e{std::vector<coord>(rd.rank, 0)};
            e.c[i] = 1;
            CHECK(rd.pair_coroot(rd.rho, e) == 1);
        }
        // <rho, beta^vee> = height-like positivity for all positive roots
        for (const auto& beta : rd.positive_roots) CHECK(rd.pair_coroot(rd.rho, beta) >= 1);
        // Coxeter number: <rho, theta^vee> + 1 = h for the highest short coroot...
        // pinned instead via the stored value against the tables above.
    }
}

TEST_CASE("unknown type rejected") {
    CHECK_THROWS_AS(build_root_datum("E8"), config_error);
    CHECK_THROWS_AS(build_root_datum("B1"), config_error);
    CHECK_THROWS_AS(build_root_datum(""), config_error);
}
