#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "oq/errors.hpp"

namespace oq {

// Weight-lattice coordinates λ_i = <λ, α_i^∨> (fundamental-weight basis).
// Coordinates are signed integers with *checked* arithmetic: any operation
// that could overflow throws instead of wrapping.
using coord = long long;

inline coord checked_add(coord a, coord b) {
    coord r;
    if (__builtin_add_overflow(a, b, &r)) throw error("integer overflow in weight arithmetic");
    return r;
}

inline coord checked_mul(coord a, coord b) {
    coord r;
    if (__builtin_mul_overflow(a, b, &r)) throw error("integer overflow in weight arithmetic");
    return r;
}

// Raises base^exp with overflow checking; exp must be small and nonnegative.
inline coord checked_pow(coord base, int exp) {
    coord r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

namespace detail {

inline std::string coords_to_string(const std::vector<coord>& c) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s + "]";
}

} // namespace detail

// A point of the weight lattice X in fundamental-weight coordinates.
struct Weight {
    std::vector<coord> c;

    Weight() = default;
    explicit Weight(std::vector<coord> coords) : c(std::move(coords)) {}

    std::size_t rank() const { return c.size(); }
    friend bool operator==(const Weight&, const Weight&) = default;
    friend auto operator<=>(const Weight& a, const Weight& b) { return a.c <=> b.c; }

    Weight operator+(const Weight& o) const {
        Weight r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = checked_add(r.c[i], o.c[i]);
        return r;
    }
    Weight operator-(const Weight& o) const {
        Weight r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = checked_add(r.c[i], -o.c[i]);
        return r;
    }
    Weight operator*(coord k) const {
        Weight r = *this;
        for (auto& x : r.c) x = checked_mul(x, k);
        return r;
    }
    Weight operator-() const { return *this * -1; }

    std::string to_string() const { return detail::coords_to_string(c); }
};

// A vector of simple-root coordinates: ν = Σ c_j α_j. Distinct type from
// Weight because the two bases must never be mixed silently.
struct RootCoords {
    std::vector<coord> c;

    RootCoords() = default;
    explicit RootCoords(std::vector<coord> coords) : c(std::move(coords)) {}

    std::size_t rank() const { return c.size(); }
    friend bool operator==(const RootCoords&, const RootCoords&) = default;
    friend auto operator<=>(const RootCoords& a, const RootCoords& b) { return a.c <=> b.c; }

    RootCoords operator+(const RootCoords& o) const {
        RootCoords r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = checked_add(r.c[i], o.c[i]);
        return r;
    }
    RootCoords operator-(const RootCoords& o) const {
        RootCoords r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = checked_add(r.c[i], -o.c[i]);
        return r;
    }
    RootCoords operator*(coord k) const {
        RootCoords r = *this;
        for (auto& x : r.c) x = checked_mul(x, k);
        return r;
    }

    // Height: sum of simple-root coefficients.
    coord height() const {
        coord h = 0;
        for (coord x : c) h = checked_add(h, x);
        return h;
    }
    bool nonnegative() const {
        for (coord x : c)
            if (x < 0) return false;
        return true;
    }

    std::string to_string() const { return detail::coords_to_string(c); }
};

} // namespace oq
