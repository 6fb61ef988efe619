#pragma once

// Brute-force reference implementations used only by tests. Each is written
// directly from the defining property, independent of the library algorithms
// it checks.

#include <cstddef>
#include <map>
#include <vector>

#include "oq/character.hpp"
#include "oq/root_datum.hpp"

namespace oracles {

using oq::bigint;
using oq::coord;

inline bigint brute_partition_impl(std::vector<coord> target,
                                   const std::vector<oq::RootCoords>& roots, std::size_t idx) {
    bool zero = true;
    for (coord x : target) {
        if (x < 0) return 0;
        if (x != 0) zero = false;
    }
    if (zero) return 1;
    if (idx == roots.size()) return 0;
    bigint total = 0;
    while (true) {
        total += brute_partition_impl(target, roots, idx + 1);
        bool neg = false;
        for (std::size_t j = 0; j < target.size(); ++j) {
            target[j] -= roots[idx].c[j];
            if (target[j] < 0) neg = true;
        }
        if (neg) break;
    }
    return total;
}

// Ways to write target as a nonnegative integer combination of positive roots.
inline bigint brute_partition_count(const oq::RootCoords& target, const oq::RootDatum& rd) {
    return brute_partition_impl(target.c, rd.positive_roots, 0);
}

inline bigint brute_bounded_impl(const std::vector<coord>& target,
                                 const std::vector<oq::RootCoords>& roots, std::size_t idx,
                                 coord bound) {
    bool zero = true;
    for (coord x : target) {
        if (x < 0) return 0;
        if (x != 0) zero = false;
    }
    if (zero) return 1;
    if (idx == roots.size()) return 0;
    bigint total = 0;
    std::vector<coord> rest = target;
    for (coord k = 0; k < bound; ++k) {
        if (k > 0) {
            bool neg = false;
            for (std::size_t j = 0; j < rest.size(); ++j) {
                rest[j] -= roots[idx].c[j];
                if (rest[j] < 0) neg = true;
            }
            if (neg) break;
        }
        total += brute_bounded_impl(rest, roots, idx + 1, bound);
    }
    return total;
}

// Same, with every root used fewer than `bound` times.
inline bigint brute_bounded_count(const oq::RootCoords& target, coord bound,
                                  const oq::RootDatum& rd) {
    return brute_bounded_impl(target.c, rd.positive_roots, 0, bound);
}

// Necessary condition for strong linkage: mu + rho lies in the Weyl orbit of
// lambda + rho modulo k times the root lattice.
inline bool dot_orbit_mod(const oq::Weight& mu, const oq::Weight& lambda, coord k,
                          const oq::RootDatum& rd) {
    for (const auto& w : rd.weyl_group) {
        oq::Weight img = rd.act(w, lambda + rd.rho);
        auto diff = rd.root_coords_of((mu + rd.rho) - img);
        if (!diff) continue;
        bool ok = true;
        for (coord x : diff->c)
            if (((x % k) + k) % k != 0) ok = false;
        if (ok) return true;
    }
    return false;
}

// Rank-one characters as full Laurent polynomials in the weight exponent.
using Laurent = std::map<coord, bigint>;

inline Laurent to_laurent(const oq::Character& f) {
    Laurent out;
    for (const auto& [off, c] : f.terms) out[f.window.top.c[0] - 2 * off[0]] = c;
    return out;
}

inline Laurent laurent_mul(const Laurent& a, const Laurent& b) {
    Laurent out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            bigint& t = out[ea + eb];
            t += ca * cb;
            if (t == 0) out.erase(ea + eb);
        }
    return out;
}

inline Laurent laurent_sub(Laurent a, const Laurent& b) {
    for (const auto& [e, c] : b) {
        bigint& t = a[e];
        t -= c;
        if (t == 0) a.erase(e);
    }
    return a;
}

} // namespace oracles
