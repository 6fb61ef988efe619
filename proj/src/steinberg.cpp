#include "oq/steinberg.hpp"

#include <string>

namespace oq {

namespace {

bool is_prime(coord n) {
    if (n < 2) return false;
    for (coord d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool antidominant(const Weight& w) {
    for (coord x : w.c)
        if (x > -1) return false;
    return true;
}

bool is_zero(const Weight& w) {
    for (coord x : w.c)
        if (x != 0) return false;
    return true;
}

// Minimal r >= 0 with p^r >= bound (bound >= 1).
int minimal_power_at_least(coord p, coord bound) {
    int r = 0;
    coord v = 1;
    while (v < bound) {
        v = checked_mul(v, p);
        ++r;
    }
    return r;
}

Character top_only_character(const Weight& lambda) {
    Character f;
    f.window.top = lambda;
    f.window.depth = 0;
    f.terms[std::vector<coord>(lambda.rank(), 0)] = 1;
    f.exact_outside = false;
    return f;
}

Character provider_entry(const CharacterProvider& provider, const Weight& key) {
    auto f = provider.lookup(key);
    if (!f)
        throw provider_gap_error("no restricted character available for " + key.to_string(),
                                 {key.c});
    if (!(f->window.top == key))
        throw config_error("provider entry top differs from its key " + key.to_string());
    return std::move(*f);
}

// One adic assembly step at modulus p, recursing on the quotient weight with a
// shrinking window and a bounded number of steps.
Character assemble_modular(const Weight& lambda, coord p, const CharacterProvider& provider,
                           const RootDatum& rd, coord depth, int steps_left) {
    if (antidominant(lambda))
        return antidominant_simple_char(lambda, p, provider, rd, TruncationWindow{lambda, depth});
    if (depth <= 0) return top_only_character(lambda);
    auto dec = adic_decompose(lambda, p);
    Character f0 = provider_entry(provider, dec.base);
    if (is_zero(dec.quotient)) return restricted(f0, TruncationWindow{lambda, depth}, rd);
    if (steps_left <= 0)
        throw config_error("adic recursion limit reached with the window still unresolved");
    Character g = assemble_modular(dec.quotient, p, provider, rd, depth / p, steps_left - 1);
    return restricted(char_mul(f0, frobenius_stretch(g, p)), TruncationWindow{lambda, depth}, rd);
}

void check_request(const SimpleCharRequest& req) {
    if (!(req.window.top == req.lambda))
        throw window_mismatch_error("request window must sit at the requested weight");
    if (req.window.depth < 0) throw argument_error("window depth must be nonnegative");
}

// Builds the product of digit characters stretched by successive powers of p:
// prod_i provider(digit_i)^{(p^i)} for the p-adic digits of a p^r-restricted weight.
// Requires r >= 1.
Character digit_product(const Weight& restricted_part, coord p, int r,
                        const CharacterProvider& provider) {
    Weight rest = restricted_part;
    Character acc;
    bool first = true;
    coord twist = 1;
    for (int i = 0; i < r; ++i) {
        auto dec = adic_decompose(rest, p);
        Character e = frobenius_stretch(provider_entry(provider, dec.base), twist);
        acc = first ? std::move(e) : char_mul(acc, e);
        first = false;
        rest = dec.quotient;
        twist = checked_mul(twist, p);
    }
    if (!is_zero(rest)) throw internal_error("digit expansion did not terminate in r steps");
    return acc;
}

} // namespace

void validate_regime(const AssemblyRegime& regime, const RootDatum& rd) {
    if (!is_prime(regime.p))
        throw config_error("p must be prime, got " + std::to_string(regime.p));
    if (regime.quantum()) {
        if (regime.ell <= 1 || regime.ell % 2 == 0)
            throw config_error("ell must be odd and > 1, got " + std::to_string(regime.ell));
        if (rd.family == 'G' && regime.ell % 3 == 0)
            throw config_error("ell must not be divisible by 3 in type G2");
    }
    if (regime.r_limit && *regime.r_limit < 0)
        throw config_error("recursion limit must be nonnegative");
}

Character simple_char_modular(const SimpleCharRequest& req, const CharacterProvider& provider,
                              const RootDatum& rd) {
    if (req.regime.quantum())
        throw config_error("modular assembly called with a quantum regime");
    validate_regime(req.regime, rd);
    check_request(req);
    if (provider.modulus != req.regime.p)
        throw config_error("provider modulus differs from the regime prime");
    int cap = req.regime.r_limit ? *req.regime.r_limit
                                 : minimal_power_at_least(req.regime.p, req.window.depth + 1);
    return assemble_modular(req.lambda, req.regime.p, provider, rd, req.window.depth, cap);
}

Character simple_char_quantum(const SimpleCharRequest& req, const CharacterProvider& q_provider,
                              const CharacterProvider& p_provider, const RootDatum& rd) {
    if (!req.regime.quantum())
        throw config_error("quantum assembly called with a modular regime");
    validate_regime(req.regime, rd);
    check_request(req);
    const coord ell = req.regime.ell;
    const coord p = req.regime.p;
    if (q_provider.modulus != ell)
        throw config_error("quantum provider modulus differs from ell");
    const Weight& lambda = req.lambda;
    const coord depth = req.window.depth;

    if (antidominant(lambda)) {
        coord need = 1;
        for (coord x : lambda.c) need = std::max(need, -x);
        coord big = ell;
        while (big < need) big = checked_mul(big, p);
        Weight shifted = lambda + rd.rho * big;
        SimpleCharRequest sub{shifted, req.regime, TruncationWindow{shifted, depth}};
        Character f = simple_char_quantum(sub, q_provider, p_provider, rd);
        Character tail =
            frobenius_stretch(q_minus(rd, TruncationWindow{-rd.rho, depth / big}), big);
        return restricted(char_mul(f, tail), req.window, rd);
    }
    if (depth <= 0) return top_only_character(lambda);
    auto dec = adic_decompose(lambda, ell);
    Character f0 = provider_entry(q_provider, dec.base);
    if (is_zero(dec.quotient)) return restricted(f0, req.window, rd);
    SimpleCharRequest mreq{dec.quotient, AssemblyRegime::modular(p),
                           TruncationWindow{dec.quotient, depth / ell}};
    mreq.regime.r_limit = req.regime.r_limit;
    Character g = simple_char_modular(mreq, p_provider, rd);
    return restricted(char_mul(f0, frobenius_stretch(g, ell)), req.window, rd);
}

Character antidominant_simple_char(const Weight& lambda, coord p,
                                   const CharacterProvider& provider, const RootDatum& rd,
                                   const TruncationWindow& window) {
    if (!is_prime(p)) throw config_error("p must be prime, got " + std::to_string(p));
    if (!antidominant(lambda))
        throw argument_error("weight is not antidominant: " + lambda.to_string());
    if (!(window.top == lambda))
        throw window_mismatch_error("window must sit at the requested weight");
    if (window.depth < 0) throw argument_error("window depth must be nonnegative");
    if (provider.modulus != p)
        throw config_error("provider modulus differs from the prime");
    coord need = 1;
    for (coord x : lambda.c) need = std::max(need, -x);
    int r = minimal_power_at_least(p, need);
    coord pr = checked_pow(p, r);
    Weight shifted = lambda + rd.rho * pr;
    SimpleCharRequest sub{shifted, AssemblyRegime::modular(p),
                          TruncationWindow{shifted, window.depth}};
    Character f = simple_char_modular(sub, provider, rd);
    Character tail =
        frobenius_stretch(q_minus(rd, TruncationWindow{-rd.rho, window.depth / pr}), pr);
    return restricted(char_mul(f, tail), window, rd);
}

Character simple_char_grouped(const Weight& lambda, coord p, int r,
                              const CharacterProvider& provider, const RootDatum& rd,
                              const TruncationWindow& window) {
    if (!is_prime(p)) throw config_error("p must be prime, got " + std::to_string(p));
    if (r < 0) throw argument_error("grouping exponent must be nonnegative");
    if (!(window.top == lambda))
        throw window_mismatch_error("window must sit at the requested weight");
    if (window.depth < 0) throw argument_error("window depth must be nonnegative");
    if (provider.modulus != p)
        throw config_error("provider modulus differs from the prime");
    SimpleCharRequest plain{lambda, AssemblyRegime::modular(p), window};
    if (r == 0) return simple_char_modular(plain, provider, rd);
    coord pr = checked_pow(p, r);
    auto dec = adic_decompose(lambda, pr);
    Character f0 = digit_product(dec.base, p, r, provider);
    if (is_zero(dec.quotient)) return restricted(f0, window, rd);
    SimpleCharRequest mreq{dec.quotient, AssemblyRegime::modular(p),
                           TruncationWindow{dec.quotient, window.depth / pr}};
    Character g = simple_char_modular(mreq, provider, rd);
    return restricted(char_mul(f0, frobenius_stretch(g, pr)), window, rd);
}

bigint weight_mult_at_r(const Weight& lambda, const Weight& mu, coord p, int r,
                        const CharacterProvider& provider, const RootDatum& rd) {
    if (!is_prime(p)) throw config_error("p must be prime, got " + std::to_string(p));
    if (r < 0) throw argument_error("grouping exponent must be nonnegative");
    if (provider.modulus != p)
        throw config_error("provider modulus differs from the prime");
    auto n = rd.root_coords_of(lambda - mu);
    if (!n || !n->nonnegative()) return 0;
    bool at_top = true;
    for (coord x : n->c)
        if (x != 0) at_top = false;
    if (at_top) return 1;
    if (r == 0) return 0; // only the top survives in the zeroth layer
    coord pr = checked_pow(p, r);
    auto dec = adic_decompose(lambda, pr);
    Character f0 = digit_product(dec.base, p, r, provider);
    // mu - p^r * quotient sits at offset n from the base weight, because
    // base - (mu - p^r * quotient) = lambda - mu.
    auto c = coeff_at(f0, dec.base - rd.weight_of(*n), rd);
    if (!c)
        throw insufficient_depth_error(
            "provider characters are too shallow to decide this multiplicity");
    return *c;
}

StabilizedMult weight_mult_stabilized(const Weight& lambda, const Weight& mu, coord p,
                                      const CharacterProvider& provider, const RootDatum& rd) {
    auto n = rd.root_coords_of(lambda - mu);
    if (!n || !n->nonnegative()) return StabilizedMult{0, 0};
    coord m = 0;
    for (coord x : n->c) m = std::max(m, x);
    int r = minimal_power_at_least(p, checked_add(m, 1));
    return StabilizedMult{weight_mult_at_r(lambda, mu, p, r, provider, rd), r};
}

} // namespace oq
