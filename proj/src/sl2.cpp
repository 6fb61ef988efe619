#include "oq/sl2.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <utility>

namespace oq {

namespace {

const RootDatum& a1() {
    static const RootDatum d = build_root_datum('A', 1);
    return d;
}

bool is_prime(coord n) {
    if (n < 2) return false;
    for (coord d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void validate_sl2(const Sl2Regime& regime) {
    if (!is_prime(regime.p))
        throw config_error("p must be prime, got " + std::to_string(regime.p));
    if (regime.quantum() && (regime.ell <= 1 || regime.ell % 2 == 0))
        throw config_error("ell must be odd and > 1, got " + std::to_string(regime.ell));
}

Weight w1(coord n) { return Weight{{n}}; }

// n = m0 + k*m1 with m0 in [0, k), floor semantics for negative n.
std::pair<coord, coord> digits(coord n, coord k) {
    coord m0 = ((n % k) + k) % k;
    return {m0, (n - m0) / k};
}

// One symbolic term L(s) (x) Delta(v)^{(t)} of a Verma filtration; `mod` is the
// modulus governing its next filtration step (ell for the root item in the
// quantum regime, p afterwards).
struct Item {
    coord s, v, t, mod;
};

coord item_head(const Item& it) { return checked_add(it.s, checked_mul(it.t, it.v)); }

// Children of a non-terminal item under one filtration step, sub term first.
std::vector<Item> item_children(const Item& it, coord p) {
    auto [m0, m1] = digits(it.v, it.mod);
    coord tk = checked_mul(it.t, it.mod);
    coord s_top = checked_add(it.s, checked_mul(m0, it.t));
    if (m0 == it.mod - 1) return {Item{s_top, m1, tk, p}};
    coord s_sub = checked_add(it.s, checked_mul(it.mod - m0 - 2, it.t));
    return {Item{s_sub, m1 - 1, tk, p}, Item{s_top, m1, tk, p}};
}

// Head of the first sub term that expanding `it` (and then always its top/single
// child) eventually produces; nullopt means the chain ends in a terminal item,
// i.e. nothing new ever appears below.
std::optional<coord> lookahead_subtop(Item it, coord p) {
    while (true) {
        if (it.v == -1) return std::nullopt;
        auto [m0, m1] = digits(it.v, it.mod);
        if (m0 == it.mod - 1) {
            it = Item{checked_add(it.s, checked_mul(m0, it.t)), m1,
                      checked_mul(it.t, it.mod), p};
            continue;
        }
        return checked_add(checked_add(it.s, checked_mul(it.mod - m0 - 2, it.t)),
                           checked_mul(checked_mul(it.t, it.mod), m1 - 1));
    }
}

FiltrationQuotient to_quotient(const Item& it) {
    return FiltrationQuotient{it.s, it.v, it.t};
}

// dim of the simple with p^r-restricted highest weight s (product of digit+1).
bigint restricted_dim(coord s, coord p, int r) {
    bigint d = 1;
    for (int i = 0; i < r; ++i) {
        d *= (s % p) + 1;
        s /= p;
    }
    if (s != 0) throw internal_error("restricted part out of range in dimension count");
    return d;
}

std::map<coord, bigint> baby_comp_core(coord n, int rounds_first, coord first_mod, int r,
                                       coord p) {
    std::vector<Item> items{Item{0, n, 1, first_mod}};
    auto run_round = [&](std::vector<Item>& cur, coord) {
        std::vector<Item> next;
        next.reserve(cur.size() * 2);
        for (const Item& it : cur)
            for (Item c : item_children(it, p)) next.push_back(c);
        cur = std::move(next);
    };
    for (int i = 0; i < rounds_first; ++i) run_round(items, first_mod);
    for (int i = 0; i < r; ++i) run_round(items, p);
    std::map<coord, bigint> out;
    bigint total = 0;
    coord full = 1;
    for (int i = 0; i < rounds_first; ++i) full = checked_mul(full, first_mod);
    for (int i = 0; i < r; ++i) full = checked_mul(full, p);
    for (const Item& it : items) {
        if (it.t != full) throw internal_error("filtration twist out of step");
        out[item_head(it)] += 1;
        coord s = it.s;
        bigint d = 1;
        if (rounds_first > 0) {
            d *= (s % first_mod) + 1;
            s /= first_mod;
        }
        d *= restricted_dim(s, p, r);
        total += d;
    }
    if (total != bigint(full))
        throw internal_error("composition multiset does not fill the baby Verma dimension");
    return out;
}

} // namespace

Character sl2_simple_char(coord n, const Sl2Regime& regime, const TruncationWindow& window) {
    validate_sl2(regime);
    if (!(window.top == w1(n)))
        throw window_mismatch_error("window must sit at the requested weight");
    if (window.depth < 0) throw argument_error("window depth must be nonnegative");
    const coord d = window.depth;
    const coord base = regime.quantum() ? regime.ell : regime.p;
    const RootDatum& rd = a1();

    if (n >= 0 && n < base) return restricted(weyl_character(w1(n), rd), window, rd);
    if (n == -1) return verma_character(w1(-1), rd, window);
    if (n >= base) {
        auto [n0, n1] = digits(n, base);
        Character f0 = weyl_character(w1(n0), rd);
        Sl2Regime sub = regime.quantum() ? Sl2Regime::modular(regime.p) : regime;
        Character g = sl2_simple_char(n1, sub, TruncationWindow{w1(n1), d / base});
        return restricted(char_mul(f0, frobenius_stretch(g, base)), window, rd);
    }
    // n <= -2: shift into the dominant range by a full twist of the lowest-weight line
    coord big;
    if (regime.quantum()) {
        big = regime.ell; // minimal ell * p^r >= -n
        while (big < -n) big = checked_mul(big, regime.p);
    } else {
        big = 1; // minimal p^r > -n (strict)
        while (big <= -n) big = checked_mul(big, regime.p);
    }
    Character f = sl2_simple_char(big + n, regime, TruncationWindow{w1(big + n), d});
    Character tail =
        frobenius_stretch(verma_character(w1(-1), rd, TruncationWindow{w1(-1), d / big}), big);
    return restricted(char_mul(f, tail), window, rd);
}

std::vector<FiltrationQuotient> sl2_verma_filtration_step(coord n, const Sl2Regime& regime) {
    validate_sl2(regime);
    coord k = regime.quantum() ? regime.ell : regime.p;
    std::vector<FiltrationQuotient> out;
    for (const Item& c : item_children(Item{0, n, 1, k}, regime.p)) out.push_back(to_quotient(c));
    return out;
}

CompositionLedger sl2_composition_factors(coord n, const Sl2Regime& regime, coord cutoff) {
    validate_sl2(regime);
    if (cutoff >= n)
        throw argument_error("cutoff must lie strictly below the highest weight");
    const coord p = regime.p;
    CompositionLedger led;
    led.cutoff = cutoff;
    std::deque<Item> queue{Item{0, n, 1, regime.quantum() ? regime.ell : regime.p}};
    std::vector<Item> stopped;
    while (!queue.empty()) {
        Item it = queue.front();
        queue.pop_front();
        if (it.v == -1) {
            coord w = checked_add(it.s, -it.t); // L(s) (x) lowest-weight line = L(s - t)
            if (w >= cutoff) led.factors[w] += 1;
            continue;
        }
        coord h = item_head(it);
        if (h < cutoff) continue; // whole branch lies below the window
        std::vector<Item> kids = item_children(it, p);
        auto la = lookahead_subtop(kids.back(), p);
        if (la && *la < cutoff) {
            // Everything this item still hides lies below the cutoff except its
            // head simple, which is therefore resolved; keep the rest symbolic.
            led.factors[h] += 1;
            stopped.push_back(it);
            continue;
        }
        for (Item& c : kids) queue.push_back(c);
    }
    for (const Item& it : stopped) led.unresolved.push_back(to_quotient(it));
    if (!stopped.empty()) {
        const Item* best = &stopped.front();
        for (const Item& it : stopped)
            if (it.t > best->t || (it.t == best->t && item_head(it) < item_head(*best)))
                best = &it;
        led.remainder = to_quotient(*best);
    }
    return led;
}

std::optional<coord> sl2_socle(coord n, const Sl2Regime& regime) {
    validate_sl2(regime);
    if (n >= 0) return -n - 2;
    if (n == -1) return -1;
    return std::nullopt;
}

std::map<coord, bigint> sl2_baby_verma_comp(coord n, int r, coord p) {
    if (!is_prime(p)) throw config_error("p must be prime, got " + std::to_string(p));
    if (r < 0) throw argument_error("layer exponent must be nonnegative");
    return baby_comp_core(n, 0, p, r, p);
}

std::map<coord, bigint> sl2_baby_verma_comp_quantum(coord n, int r, coord ell, coord p) {
    if (!is_prime(p)) throw config_error("p must be prime, got " + std::to_string(p));
    if (ell <= 1 || ell % 2 == 0)
        throw config_error("ell must be odd and > 1, got " + std::to_string(ell));
    if (r < 0) throw argument_error("layer exponent must be nonnegative");
    return baby_comp_core(n, 1, ell, r, p);
}

Character sl2_tilting_char(coord m, const Sl2Regime& regime) {
    validate_sl2(regime);
    if (m < 0) throw argument_error("tilting weight must be dominant");
    const RootDatum& rd = a1();
    coord k = regime.quantum() ? regime.ell : regime.p;
    if (m <= k - 1) return weyl_character(w1(m), rd);
    if (m <= 2 * k - 2) {
        Character hi = weyl_character(w1(m), rd);
        Character lo = weyl_character(w1(2 * k - 2 - m), rd);
        return char_add(hi, restricted(lo, hi.window, rd));
    }
    coord a = (m - (k - 1)) % k;
    coord b = (m - (k - 1) - a) / k;
    Character basepiece = sl2_tilting_char(k - 1 + a, regime);
    Sl2Regime sub = regime.quantum() ? Sl2Regime::modular(regime.p) : regime;
    return char_mul(basepiece, frobenius_stretch(sl2_tilting_char(b, sub), k));
}

ReciprocityResult sl2_reciprocity_check(coord lambda, coord mu, const Sl2Regime& regime) {
    validate_sl2(regime);
    if (lambda < -1)
        throw argument_error("tilting side needs lambda >= -1, got " + std::to_string(lambda));
    const RootDatum& rd = a1();
    coord big = regime.quantum() ? regime.ell : 1;
    int r = 0;
    while (big < lambda + 2) {
        big = checked_mul(big, regime.p);
        ++r;
    }

    bigint lhs = 0;
    if (mu <= lambda && (lambda - mu) % 2 == 0) {
        coord dw = (lambda - mu) / 2;
        Character t = sl2_tilting_char(lambda + big, regime);
        Character tail = frobenius_stretch(
            verma_character(w1(-1), rd, TruncationWindow{w1(-1), dw / big}), big);
        Character residual =
            restricted(char_mul(t, tail), TruncationWindow{w1(lambda), dw}, rd);
        for (coord k = 0; k <= dw; ++k) {
            auto term = residual.terms.find({k});
            bigint c = term == residual.terms.end() ? bigint(0) : term->second;
            if (k == dw) {
                lhs = c;
                break;
            }
            if (c != 0) {
                Character vk = verma_character(w1(lambda - 2 * k), rd,
                                               TruncationWindow{w1(lambda - 2 * k), dw - k});
                residual = char_sub(
                    residual, restricted(scaled(vk, c), residual.window, rd));
            }
        }
    }

    coord target = -lambda - 2;
    std::map<coord, bigint> comp = regime.quantum()
                                       ? sl2_baby_verma_comp_quantum(mu, r, regime.ell, regime.p)
                                       : sl2_baby_verma_comp(mu, r, regime.p);
    bigint rhs = 0;
    if (auto f = comp.find(target); f != comp.end()) rhs = f->second;
    return ReciprocityResult{lhs, rhs, lhs == rhs};
}

} // namespace oq
