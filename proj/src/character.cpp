#include "oq/character.hpp"

#include <algorithm>
#include <string>

namespace oq {

namespace {

void validate_window(const TruncationWindow& w) {
    if (w.depth < 0) throw argument_error("truncation depth must be nonnegative");
}

void check_ranks(const Character& f, const Character& g) {
    if (f.window.top.rank() != g.window.top.rank())
        throw argument_error("characters live over root data of different ranks");
}

// Visit every offset vector in the box [0, depth]^rank.
template <class F>
void for_each_offset(int rank, coord depth, F&& fn) {
    std::vector<coord> v(static_cast<std::size_t>(rank), 0);
    while (true) {
        fn(v);
        std::size_t i = 0;
        while (i < v.size() && v[i] == depth) v[i++] = 0;
        if (i == v.size()) break;
        ++v[i];
    }
}

coord offset_height(const std::vector<coord>& v) {
    coord h = 0;
    for (coord x : v) h = checked_add(h, x);
    return h;
}

void sweep_zeros(std::map<std::vector<coord>, bigint>& terms) {
    for (auto it = terms.begin(); it != terms.end();)
        it = (it->second == 0) ? terms.erase(it) : std::next(it);
}

} // namespace

Character monomial(const Weight& lambda) {
    Character f;
    f.window = {lambda, 0};
    f.terms[std::vector<coord>(lambda.rank(), 0)] = 1;
    f.exact_outside = true;
    return f;
}

Character zero_character(const TruncationWindow& window) {
    validate_window(window);
    Character f;
    f.window = window;
    f.exact_outside = true;
    return f;
}

Weight weight_of_offset(const TruncationWindow& window, const std::vector<coord>& offset,
                        const RootDatum& rd) {
    return window.top - rd.weight_of(RootCoords(offset));
}

std::optional<bigint> coeff_at(const Character& f, const Weight& mu, const RootDatum& rd) {
    auto n = rd.root_coords_of(f.window.top - mu);
    if (!n) return bigint(0);
    bool in_box = true;
    for (coord x : n->c) {
        if (x < 0) return bigint(0); // outside the downward cone: genuinely zero
        if (x > f.window.depth) in_box = false;
    }
    if (in_box) {
        auto it = f.terms.find(n->c);
        return it == f.terms.end() ? bigint(0) : it->second;
    }
    if (f.exact_outside) return bigint(0);
    return std::nullopt;
}

Character restricted(const Character& f, const TruncationWindow& window, const RootDatum& rd) {
    validate_window(window);
    Character out;
    out.window = window;
    auto sigma = rd.root_coords_of(f.window.top - window.top);
    if (!sigma) {
        // Disjoint lattice cosets: every point of the target box is off f's
        // cone, hence zero.
        out.exact_outside = f.exact_outside && f.terms.empty();
        return out;
    }
    const coord D = window.depth;
    if (!f.exact_outside) {
        // The target box must avoid f's unknown region: points of f's cone
        // below its retained depth.
        bool cone_reachable = true;
        for (coord s : sigma->c)
            if (-s > D) { cone_reachable = false; break; }
        if (cone_reachable) {
            for (coord s : sigma->c)
                if (f.window.depth + 1 - s <= D)
                    throw insufficient_depth_error(
                        "target window (depth " + std::to_string(D) +
                        ") reaches below the retained depth " + std::to_string(f.window.depth) +
                        " of a truncated character");
        }
    }
    bool dropped = false;
    const std::size_t r = sigma->c.size();
    for (const auto& [y, cval] : f.terms) {
        std::vector<coord> x(r);
        bool keep = true;
        for (std::size_t j = 0; j < r; ++j) {
            x[j] = checked_add(y[j], -sigma->c[j]);
            if (x[j] < 0 || x[j] > D) { keep = false; break; }
        }
        if (keep) out.terms.emplace(std::move(x), cval);
        else dropped = true;
    }
    out.exact_outside = f.exact_outside && !dropped;
    return out;
}

Character scaled(const Character& f, const bigint& k) {
    Character out;
    out.window = f.window;
    out.exact_outside = f.exact_outside || k == 0;
    if (k == 0) return out;
    for (const auto& [y, c] : f.terms) out.terms.emplace(y, c * k);
    return out;
}

Character char_add(const Character& f, const Character& g) {
    check_ranks(f, g);
    if (!(f.window.top == g.window.top))
        throw window_mismatch_error("cannot add characters with tops " + f.window.top.to_string() +
                                    " and " + g.window.top.to_string() +
                                    "; restrict to a common window first");
    Character out;
    out.exact_outside = f.exact_outside && g.exact_outside;
    coord D;
    if (out.exact_outside) D = std::max(f.window.depth, g.window.depth);
    else if (f.exact_outside) D = g.window.depth;
    else if (g.exact_outside) D = f.window.depth;
    else D = std::min(f.window.depth, g.window.depth);
    out.window = {f.window.top, D};
    auto in_box = [D](const std::vector<coord>& y) {
        for (coord v : y)
            if (v > D) return false;
        return true;
    };
    for (const auto& [y, c] : f.terms)
        if (in_box(y)) out.terms[y] += c;
    for (const auto& [y, c] : g.terms)
        if (in_box(y)) out.terms[y] += c;
    sweep_zeros(out.terms);
    return out;
}

Character char_sub(const Character& f, const Character& g) {
    return char_add(f, scaled(g, bigint(-1)));
}

Character char_mul(const Character& f, const Character& g, coord depth) {
    check_ranks(f, g);
    coord R = depth;
    if (R < 0) {
        if (f.exact_outside && g.exact_outside) R = checked_add(f.window.depth, g.window.depth);
        else if (f.exact_outside) R = g.window.depth;
        else if (g.exact_outside) R = f.window.depth;
        else R = std::min(f.window.depth, g.window.depth);
    }
    if (!f.exact_outside && f.window.depth < R)
        throw insufficient_depth_error("left factor retained only to depth " +
                                       std::to_string(f.window.depth) +
                                       ", result wants depth " + std::to_string(R));
    if (!g.exact_outside && g.window.depth < R)
        throw insufficient_depth_error("right factor retained only to depth " +
                                       std::to_string(g.window.depth) +
                                       ", result wants depth " + std::to_string(R));
    Character out;
    out.window = {f.window.top + g.window.top, R};
    const std::size_t r = f.window.top.rank();
    std::vector<coord> max_f(r, 0), max_g(r, 0);
    for (const auto& [y, c] : f.terms)
        for (std::size_t j = 0; j < r; ++j) max_f[j] = std::max(max_f[j], y[j]);
    for (const auto& [z, c] : g.terms)
        for (std::size_t j = 0; j < r; ++j) max_g[j] = std::max(max_g[j], z[j]);
    for (const auto& [y, a] : f.terms) {
        bool feasible = true;
        for (std::size_t j = 0; j < r; ++j)
            if (y[j] > R) { feasible = false; break; }
        if (!feasible) continue;
        for (const auto& [z, b] : g.terms) {
            std::vector<coord> x(r);
            bool keep = true;
            for (std::size_t j = 0; j < r; ++j) {
                x[j] = checked_add(y[j], z[j]);
                if (x[j] > R) { keep = false; break; }
            }
            if (keep) out.terms[std::move(x)] += a * b;
        }
    }
    sweep_zeros(out.terms);
    bool exact = f.exact_outside && g.exact_outside;
    if (exact)
        for (std::size_t j = 0; j < r; ++j)
            if (checked_add(max_f[j], max_g[j]) > R) { exact = false; break; }
    out.exact_outside = exact;
    return out;
}

Character frobenius_stretch(const Character& f, coord m) {
    if (m < 1) throw argument_error("stretch factor must be >= 1");
    if (m == 1) return f;
    Character out;
    coord D = checked_mul(f.window.depth, m);
    // Between the stretched lattice points every coefficient is genuinely
    // zero, so a truncated operand stays sound up to the next multiple.
    if (!f.exact_outside) D = checked_add(D, m - 1);
    out.window = {f.window.top * m, D};
    out.exact_outside = f.exact_outside;
    for (const auto& [y, c] : f.terms) {
        std::vector<coord> x(y.size());
        for (std::size_t j = 0; j < y.size(); ++j) x[j] = checked_mul(y[j], m);
        out.terms.emplace(std::move(x), c);
    }
    return out;
}

bigint dimension(const Character& f) {
    if (!f.exact_outside)
        throw argument_error("dimension of a truncated character is undefined");
    bigint s = 0;
    for (const auto& [y, c] : f.terms) s += c;
    return s;
}

Character verma_character(const Weight& lambda, const RootDatum& rd,
                          const TruncationWindow& window) {
    if (static_cast<std::size_t>(rd.rank) != lambda.rank())
        throw argument_error("weight rank does not match the root datum");
    if (!(window.top == lambda))
        throw window_mismatch_error("Verma character window must have top = lambda");
    validate_window(window);
    Character out;
    out.window = window;
    out.exact_outside = false;
    // Prime the partition cache with the deepest corner so the box is filled
    // in a single dynamic-programming pass.
    kostant_partition(RootCoords(std::vector<coord>(rd.rank, window.depth)), rd);
    for_each_offset(rd.rank, window.depth, [&](const std::vector<coord>& v) {
        bigint p = kostant_partition(RootCoords(v), rd);
        if (p != 0) out.terms[v] = p;
    });
    return out;
}

Character q_minus(const RootDatum& rd, const TruncationWindow& window) {
    Weight mrho = -rd.rho;
    if (!(window.top == mrho))
        throw window_mismatch_error("q-minus window must have top = -rho");
    return verma_character(mrho, rd, window);
}

Character weyl_character(const Weight& lambda, const RootDatum& rd) {
    if (static_cast<std::size_t>(rd.rank) != lambda.rank())
        throw argument_error("weight rank does not match the root datum");
    for (coord x : lambda.c)
        if (x < 0) throw argument_error("Weyl character requires a dominant weight");
    // The support lies between w0(lambda) and lambda in the root order, so a
    // box of uniform depth max_j (lambda - w0 lambda)_j covers it.
    Weight low = rd.act(rd.w0, lambda);
    auto span = rd.root_coords_of(lambda - low);
    if (!span) throw internal_error("lambda - w0(lambda) escaped the root lattice");
    coord D = 0;
    for (coord x : span->c) D = std::max(D, x);

    Character out;
    out.window = {lambda, D};
    out.exact_outside = true;

    std::vector<std::vector<coord>> offsets;
    for_each_offset(rd.rank, D, [&](const std::vector<coord>& v) { offsets.push_back(v); });
    std::sort(offsets.begin(), offsets.end(),
              [](const std::vector<coord>& a, const std::vector<coord>& b) {
                  coord ha = offset_height(a), hb = offset_height(b);
                  return ha != hb ? ha < hb : a < b;
              });

    Weight two_rho = rd.rho * 2;
    for (const auto& nu : offsets) {
        if (offset_height(nu) == 0) {
            out.terms[nu] = 1;
            continue;
        }
        RootCoords nu_rc{nu};
        Weight mu = lambda - rd.weight_of(nu_rc);
        // Freudenthal: (|λ+ρ|² - |μ+ρ|²) m_μ = 2 Σ_{β>0} Σ_{k≥1} m_{μ+kβ}(μ+kβ, β),
        // and the left factor equals (λ+μ+2ρ, λ-μ).
        coord denom = rd.form_with_root(lambda + mu + two_rho, nu_rc);
        if (denom <= 0) continue; // strictly positive on the true support
        bigint num = 0;
        for (const auto& beta : rd.positive_roots) {
            for (coord k = 1;; ++k) {
                std::vector<coord> up(nu.size());
                bool inside = true;
                for (std::size_t j = 0; j < nu.size(); ++j) {
                    up[j] = checked_add(nu[j], checked_mul(-k, beta.c[j]));
                    if (up[j] < 0) { inside = false; break; }
                }
                if (!inside) break;
                auto it = out.terms.find(up);
                if (it == out.terms.end()) continue;
                Weight muk = lambda - rd.weight_of(RootCoords(up));
                num += it->second * bigint(rd.form_with_root(muk, beta));
            }
        }
        num *= 2;
        if (num == 0) continue;
        if (num % denom != 0) throw internal_error("Freudenthal recursion produced a non-integer");
        bigint m = num / denom;
        if (m != 0) out.terms[nu] = m;
    }

    // Cross-check against the Weyl dimension formula.
    bigint dim_num = 1, dim_den = 1;
    Weight lr = lambda + rd.rho;
    for (const auto& beta : rd.positive_roots) {
        dim_num *= bigint(rd.pair_coroot(lr, beta));
        dim_den *= bigint(rd.pair_coroot(rd.rho, beta));
    }
    if (dim_den == 0 || dim_num % dim_den != 0)
        throw internal_error("Weyl dimension formula produced a non-integer");
    if (dimension(out) != dim_num / dim_den)
        throw internal_error("Freudenthal multiplicities disagree with the Weyl dimension formula");
    return out;
}

Character baby_verma_character(const Weight& lambda, coord bound, const RootDatum& rd) {
    if (bound < 2) throw argument_error("baby Verma bound must be >= 2");
    if (static_cast<std::size_t>(rd.rank) != lambda.rank())
        throw argument_error("weight rank does not match the root datum");
    RootCoords total{std::vector<coord>(rd.rank, 0)};
    for (const auto& beta : rd.positive_roots) total = total + beta;
    coord D = 0;
    for (coord x : total.c) D = std::max(D, checked_mul(bound - 1, x));

    Character out;
    out.window = {lambda, D};
    out.exact_outside = true;
    bigint dim = 0;
    for_each_offset(rd.rank, D, [&](const std::vector<coord>& v) {
        bigint c = count_bounded_partitions(RootCoords(v), bound, rd);
        if (c != 0) {
            out.terms[v] = c;
            dim += c;
        }
    });
    bigint expect = 1;
    for (std::size_t i = 0; i < rd.num_positive_roots(); ++i) expect *= bound;
    if (dim != expect) throw internal_error("baby Verma dimension is not bound^N");
    return out;
}

Character steinberg_character(coord m, const RootDatum& rd) {
    if (m < 2) throw argument_error("Steinberg modulus must be >= 2");
    Character out = weyl_character(rd.rho * (m - 1), rd);
    bigint expect = 1;
    for (std::size_t i = 0; i < rd.num_positive_roots(); ++i) expect *= m;
    if (dimension(out) != expect) throw internal_error("Steinberg dimension is not m^N");
    return out;
}

} // namespace oq
