#pragma once

#include <memory>
#include <mutex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oq/weights.hpp"

namespace oq {

using bigint = boost::multiprecision::cpp_int;

// Square integer matrix, row-major. Used for Cartan matrices and for Weyl
// group elements acting on weight coordinates.
using IntMatrix = std::vector<std::vector<coord>>;

namespace detail {
struct PartitionCache; // memoized Kostant partition values, shared per datum
}

// Immutable bundle of root-system data for one of the supported finite types.
// Conventions:
//   cartan[i][j] = <alpha_j, alpha_i^vee>, so the j-th simple root has weight
//   coordinates (cartan[0][j], ..., cartan[n-1][j]) and conversion from
//   simple-root coordinates to weight coordinates is left-multiplication by
//   the Cartan matrix. sym[i] = d_i are the minimal positive integers making
//   diag(d)·cartan symmetric (d_i = half the squared length of alpha_i,
//   short roots normalized to length² = 2).
struct RootDatum {
    std::string label;   // e.g. "B3"
    char family = 0;     // 'A'..'D', 'G'
    int rank = 0;
    IntMatrix cartan;
    std::vector<coord> sym;
    std::vector<RootCoords> positive_roots; // closed under the string condition
    Weight rho;                             // all fundamental coordinates 1
    coord coxeter_number = 0;               // height of the highest root + 1
    std::vector<IntMatrix> weyl_group;      // all elements, identity first
    IntMatrix w0;                           // longest element (w0·rho = -rho)

    std::size_t num_positive_roots() const { return positive_roots.size(); }

    // Simple-root coordinates -> weight coordinates (exact, integral).
    Weight weight_of(const RootCoords& v) const;

    // Weight coordinates -> simple-root coordinates, if the weight lies in
    // the root lattice (exact rational solve; nullopt when non-integral).
    std::optional<RootCoords> root_coords_of(const Weight& w) const;

    // W-invariant bilinear form paired against a root-lattice element:
    // (mu, beta) with beta = Σ c_j α_j equals Σ c_j d_j mu_j.
    coord form_with_root(const Weight& mu, const RootCoords& beta) const;

    // <mu, beta^vee> = (mu, beta) / (half squared length of beta); exact.
    coord pair_coroot(const Weight& mu, const RootCoords& beta) const;

    // Half squared length of a root (1 for short roots, 2 or 3 for long).
    coord root_half_norm(const RootCoords& beta) const;

    // Apply a Weyl-group matrix to weight coordinates.
    Weight act(const IntMatrix& w, const Weight& mu) const;

    bool is_positive_root(const RootCoords& beta) const;

    mutable std::shared_ptr<detail::PartitionCache> partition_cache;
};

// Builds the datum for one of the supported types: A1..A4, B2..B4, C3, C4,
// D4, G2. Anything else raises config_error naming the supported set.
RootDatum build_root_datum(char family, int rank);

// Same, from a label like "B3".
RootDatum build_root_datum(std::string_view label);

// Dominance (root) order: is lambda - mu a nonnegative integer combination of
// simple roots? Exact.
bool dominance_leq(const Weight& mu, const Weight& lambda, const RootDatum& rd);

// Dot action of the affine reflection s_{beta,m}: lambda maps to
// s_beta·lambda + m·k·beta, where s_beta·lambda = lambda - <lambda+rho, beta^vee>·beta
// and k is the modulus (p or l). beta must be a positive root.
Weight dot_action(const RootCoords& beta, coord m, coord modulus, const Weight& lambda,
                  const RootDatum& rd);

// Kostant partition function: the number of ways to write nu as a sum of
// positive roots with nonnegative multiplicities. Memoized per datum; safe
// under concurrent calls.
bigint kostant_partition(const RootCoords& nu, const RootDatum& rd);

// Bounded variant: multiplicities restricted to 0 <= n_beta < bound.
bigint count_bounded_partitions(const RootCoords& nu, coord bound, const RootDatum& rd);

// lambda = lambda0 + m·lambda1 with every coordinate of lambda0 in [0, m)
// (floor semantics, so negative coordinates decompose like -1 = (m-1) + m·(-1)).
struct AdicDecomposition {
    Weight base;    // lambda0, the restricted part
    Weight quotient; // lambda1
};
AdicDecomposition adic_decompose(const Weight& lambda, coord m);

} // namespace oq
