#include "oq/root_datum.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace oq {

namespace detail {

struct PartitionCache {
    std::mutex mutex;
    std::map<std::vector<coord>, bigint> values;
};

} // namespace detail

namespace {

constexpr std::string_view kSupported = "A1..A4, B2..B4, C3, C4, D4, G2";

IntMatrix cartan_matrix(char family, int n) {
    IntMatrix c(n, std::vector<coord>(n, 0));
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    auto link = [&](int i, int j) { c[i][j] = -1; c[j][i] = -1; };
    switch (family) {
    case 'A':
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        break;
    case 'B': // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        c[n - 1][n - 2] = -2;
        break;
    case 'C': // alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        c[n - 2][n - 1] = -2;
        break;
    case 'D': // fork at node n-2
        for (int i = 0; i + 1 < n - 1; ++i) link(i, i + 1);
        link(n - 3, n - 1);
        break;
    case 'G': // alpha_1 short, alpha_2 long
        c[0][1] = -3;
        c[1][0] = -1;
        break;
    }
    return c;
}

// Minimal positive integer diagonal D with D·C symmetric, found by
// propagating ratios along the (connected) Dynkin graph.
std::vector<coord> symmetrizers(const IntMatrix& c) {
    int n = static_cast<int>(c.size());
    // work with rationals num/den per node
    std::vector<coord> num(n, 0), den(n, 0);
    num[0] = den[0] = 1;
    std::vector<int> todo{0};
    while (!todo.empty()) {
        int i = todo.back();
        todo.pop_back();
        for (int j = 0; j < n; ++j) {
            if (i == j || c[i][j] == 0 || num[j] != 0) continue;
            // d_i c_ij = d_j c_ji  =>  d_j = d_i * c_ij / c_ji
            num[j] = num[i] * c[i][j];
            den[j] = den[i] * c[j][i];
            if (num[j] < 0) { num[j] = -num[j]; den[j] = -den[j]; }
            todo.push_back(j);
        }
    }
    coord l = 1;
    for (int i = 0; i < n; ++i) l = std::lcm(l, den[i]);
    std::vector<coord> d(n);
    for (int i = 0; i < n; ++i) d[i] = num[i] * (l / den[i]);
    coord g = 0;
    for (coord x : d) g = std::gcd(g, x);
    for (auto& x : d) x /= g;
    return d;
}

// Closure of the simple roots under root strings: beta + alpha_i is a root
// iff p - <beta, alpha_i^vee> > 0, where p is the length of the backward
// string beta, beta - alpha_i, ....
std::vector<RootCoords> positive_root_closure(const IntMatrix& cartan) {
    int n = static_cast<int>(cartan.size());
    std::set<std::vector<coord>> roots;
    for (int i = 0; i < n; ++i) {
        std::vector<coord> e(n, 0);
        e[i] = 1;
        roots.insert(e);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (auto beta : std::set<std::vector<coord>>(roots)) {
            for (int i = 0; i < n; ++i) {
                coord pairing = 0; // <beta, alpha_i^vee>
                for (int j = 0; j < n; ++j) pairing += cartan[i][j] * beta[j];
                coord p = 0;
                auto back = beta;
                while (true) {
                    back[i] -= 1;
                    if (back[i] < 0 || !roots.count(back)) break;
                    ++p;
                }
                if (p - pairing > 0) {
                    auto fwd = beta;
                    fwd[i] += 1;
                    if (roots.insert(fwd).second) grew = true;
                }
            }
        }
    }
    std::vector<RootCoords> out;
    out.reserve(roots.size());
    for (auto& r : roots) out.push_back(RootCoords(r));
    // sort by height then lexicographically, for reproducible ordering
    std::sort(out.begin(), out.end(), [](const RootCoords& a, const RootCoords& b) {
        if (a.height() != b.height()) return a.height() < b.height();
        return a.c < b.c;
    });
    return out;
}

IntMatrix identity_matrix(int n) {
    IntMatrix m(n, std::vector<coord>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    int n = static_cast<int>(a.size());
    IntMatrix r(n, std::vector<coord>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

// Simple reflection s_i on weight coordinates: (s_i λ)_j = λ_j - λ_i·cartan[j][i].
IntMatrix simple_reflection_matrix(const IntMatrix& cartan, int i) {
    int n = static_cast<int>(cartan.size());
    IntMatrix m = identity_matrix(n);
    for (int j = 0; j < n; ++j) m[j][i] -= cartan[j][i];
    return m;
}

std::vector<IntMatrix> enumerate_weyl_group(const IntMatrix& cartan) {
    int n = static_cast<int>(cartan.size());
    std::vector<IntMatrix> gens;
    for (int i = 0; i < n; ++i) gens.push_back(simple_reflection_matrix(cartan, i));
    std::set<IntMatrix> seen;
    std::vector<IntMatrix> order{identity_matrix(n)};
    seen.insert(order[0]);
    for (std::size_t head = 0; head < order.size(); ++head) {
        IntMatrix w = order[head];
        for (const auto& s : gens) {
            IntMatrix ws = mat_mul(s, w);
            if (seen.insert(ws).second) order.push_back(std::move(ws));
        }
    }
    return order;
}

coord det_recursive(const IntMatrix& m, std::vector<int> cols, int row) {
    int n = static_cast<int>(m.size());
    if (row == n) return 1;
    coord acc = 0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (m[row][cols[k]] == 0) continue;
        std::vector<int> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (j != k) rest.push_back(cols[j]);
        coord sub = det_recursive(m, rest, row + 1);
        coord term = checked_mul(m[row][cols[k]], sub);
        acc = (k % 2 == 0) ? checked_add(acc, term) : checked_add(acc, -term);
    }
    return acc;
}

coord determinant(const IntMatrix& m) {
    std::vector<int> cols(m.size());
    std::iota(cols.begin(), cols.end(), 0);
    return det_recursive(m, cols, 0);
}

} // namespace

Weight RootDatum::weight_of(const RootCoords& v) const {
    Weight w(std::vector<coord>(rank, 0));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            w.c[i] = checked_add(w.c[i], checked_mul(cartan[i][j], v.c[j]));
    return w;
}

std::optional<RootCoords> RootDatum::root_coords_of(const Weight& w) const {
    // Solve cartan·x = w by Cramer's rule; reject non-integral solutions.
    coord det = determinant(cartan);
    RootCoords x(std::vector<coord>(rank, 0));
    for (int j = 0; j < rank; ++j) {
        IntMatrix m = cartan;
        for (int i = 0; i < rank; ++i) m[i][j] = w.c[i];
        coord dj = determinant(m);
        if (dj % det != 0) return std::nullopt;
        x.c[j] = dj / det;
    }
    return x;
}

coord RootDatum::form_with_root(const Weight& mu, const RootCoords& beta) const {
    coord acc = 0;
    for (int j = 0; j < rank; ++j)
        acc = checked_add(acc, checked_mul(beta.c[j], checked_mul(sym[j], mu.c[j])));
    return acc;
}

coord RootDatum::root_half_norm(const RootCoords& beta) const {
    coord norm = form_with_root(weight_of(beta), beta);
    if (norm <= 0 || norm % 2 != 0) throw internal_error("root has non-positive or odd squared length");
    return norm / 2;
}

coord RootDatum::pair_coroot(const Weight& mu, const RootCoords& beta) const {
    coord num = form_with_root(mu, beta);
    coord d = root_half_norm(beta);
    if (num % d != 0) throw internal_error("non-integral coroot pairing");
    return num / d;
}

Weight RootDatum::act(const IntMatrix& w, const Weight& mu) const {
    Weight r(std::vector<coord>(rank, 0));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            r.c[i] = checked_add(r.c[i], checked_mul(w[i][j], mu.c[j]));
    return r;
}

bool RootDatum::is_positive_root(const RootCoords& beta) const {
    return std::find(positive_roots.begin(), positive_roots.end(), beta) != positive_roots.end();
}

RootDatum build_root_datum(char family, int rank) {
    bool ok = (family == 'A' && rank >= 1 && rank <= 4) ||
              (family == 'B' && rank >= 2 && rank <= 4) ||
              (family == 'C' && rank >= 3 && rank <= 4) ||
              (family == 'D' && rank == 4) || (family == 'G' && rank == 2);
    if (!ok)
        throw config_error(std::string("unsupported root system ") + family + std::to_string(rank) +
                           "; supported: " + std::string(kSupported));

    RootDatum rd;
    rd.family = family;
    rd.rank = rank;
    rd.label = std::string(1, family) + std::to_string(rank);
    rd.cartan = cartan_matrix(family, rank);
    rd.sym = symmetrizers(rd.cartan);
    rd.positive_roots = positive_root_closure(rd.cartan);
    rd.rho = Weight(std::vector<coord>(rank, 1));
    rd.coxeter_number = rd.positive_roots.back().height() + 1;
    rd.weyl_group = enumerate_weyl_group(rd.cartan);
    // longest element: the unique w with w·rho = -rho
    for (const auto& w : rd.weyl_group) {
        if (rd.act(w, rd.rho) == -rd.rho) {
            rd.w0 = w;
            break;
        }
    }
    if (rd.w0.empty()) throw internal_error("longest Weyl element not found");
    rd.partition_cache = std::make_shared<detail::PartitionCache>();
    return rd;
}

RootDatum build_root_datum(std::string_view label) {
    if (label.size() != 2 || label[1] < '1' || label[1] > '9')
        throw config_error("unsupported root system '" + std::string(label) +
                           "'; supported: " + std::string(kSupported));
    return build_root_datum(label[0], label[1] - '0');
}

bool dominance_leq(const Weight& mu, const Weight& lambda, const RootDatum& rd) {
    auto diff = rd.root_coords_of(lambda - mu);
    return diff && diff->nonnegative();
}

Weight dot_action(const RootCoords& beta, coord m, coord modulus, const Weight& lambda,
                  const RootDatum& rd) {
    if (!rd.is_positive_root(beta))
        throw argument_error("dot_action: " + beta.to_string() + " is not a positive root of " + rd.label);
    if (modulus < 1) throw argument_error("dot_action: modulus must be positive");
    Weight beta_wt = rd.weight_of(beta);
    coord pairing = rd.pair_coroot(lambda + rd.rho, beta);
    // s_beta·lambda + m·modulus·beta = lambda - (pairing - m·modulus)·beta
    coord c = checked_add(pairing, -checked_mul(m, modulus));
    return lambda - beta_wt * c;
}

namespace {

// Box dynamic program over all points 0 <= x <= nu (componentwise in
// simple-root coordinates): counts partitions into positive roots, one root
// at a time. Fills the per-datum cache for the whole box.
void fill_partition_box(const RootCoords& nu, const RootDatum& rd,
                        std::map<std::vector<coord>, bigint>& cache) {
    int n = rd.rank;
    std::vector<coord> dims(n);
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) {
        dims[i] = nu.c[i] + 1;
        total *= static_cast<std::size_t>(dims[i]);
    }
    auto index_of = [&](const std::vector<coord>& x) {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) idx = idx * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(x[i]);
        return idx;
    };
    std::vector<bigint> table(total, bigint(0));
    table[0] = 1; // empty sum
    std::vector<coord> x(n, 0);
    for (const auto& beta : rd.positive_roots) {
        // in-place prefix recurrence: table[x] += table[x - beta]
        std::fill(x.begin(), x.end(), 0);
        while (true) {
            bool in_range = true;
            for (int i = 0; i < n; ++i)
                if (x[i] < beta.c[i]) { in_range = false; break; }
            if (in_range) {
                std::vector<coord> prev = x;
                for (int i = 0; i < n; ++i) prev[i] -= beta.c[i];
                table[index_of(x)] += table[index_of(prev)];
            }
            int i = n - 1;
            while (i >= 0 && x[i] + 1 >= dims[i]) { x[i] = 0; --i; }
            if (i < 0) break;
            ++x[i];
        }
    }
    std::fill(x.begin(), x.end(), 0);
    while (true) {
        cache.emplace(x, table[index_of(x)]);
        int i = n - 1;
        while (i >= 0 && x[i] + 1 >= dims[i]) { x[i] = 0; --i; }
        if (i < 0) break;
        ++x[i];
    }
}

} // namespace

bigint kostant_partition(const RootCoords& nu, const RootDatum& rd) {
    if (!nu.nonnegative()) return 0;
    auto& cache = *rd.partition_cache;
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.values.find(nu.c);
    if (it != cache.values.end()) return it->second;
    fill_partition_box(nu, rd, cache.values);
    return cache.values.at(nu.c);
}

bigint count_bounded_partitions(const RootCoords& nu, coord bound, const RootDatum& rd) {
    if (bound <= 0) throw argument_error("count_bounded_partitions: bound must be positive");
    if (!nu.nonnegative()) return 0;
    // Same box DP, with each root used at most bound-1 times. Not cached:
    // the bound is part of the key and callers sweep whole boxes anyway.
    int n = rd.rank;
    std::vector<coord> dims(n);
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) {
        dims[i] = nu.c[i] + 1;
        total *= static_cast<std::size_t>(dims[i]);
    }
    auto index_of = [&](const std::vector<coord>& x) {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) idx = idx * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(x[i]);
        return idx;
    };
    std::vector<bigint> table(total, bigint(0)), next(total);
    table[0] = 1;
    std::vector<coord> x(n, 0);
    for (const auto& beta : rd.positive_roots) {
        std::fill(next.begin(), next.end(), bigint(0));
        std::fill(x.begin(), x.end(), 0);
        while (true) {
            bigint& acc = next[index_of(x)];
            std::vector<coord> y = x;
            for (coord t = 0; t < bound; ++t) {
                bool ok = true;
                for (int i = 0; i < n; ++i)
                    if (y[i] < 0) { ok = false; break; }
                if (!ok) break;
                acc += table[index_of(y)];
                for (int i = 0; i < n; ++i) y[i] -= beta.c[i];
            }
            int i = n - 1;
            while (i >= 0 && x[i] + 1 >= dims[i]) { x[i] = 0; --i; }
            if (i < 0) break;
            ++x[i];
        }
        table.swap(next);
    }
    return table[index_of(nu.c)];
}

AdicDecomposition adic_decompose(const Weight& lambda, coord m) {
    if (m < 2) throw argument_error("adic_decompose: modulus must be at least 2");
    AdicDecomposition d;
    d.base.c.resize(lambda.rank());
    d.quotient.c.resize(lambda.rank());
    for (std::size_t i = 0; i < lambda.rank(); ++i) {
        coord r = ((lambda.c[i] % m) + m) % m;
        d.base.c[i] = r;
        d.quotient.c[i] = (lambda.c[i] - r) / m;
    }
    return d;
}

} // namespace oq
