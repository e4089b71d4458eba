#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tsde {

// All lattice arithmetic goes through these checked ops. Census-scale inputs
// stay tiny, but CLI input is arbitrary and silent wraparound would corrupt
// exact verdicts.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow: " + std::to_string(a) + " + " + std::to_string(b));
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow: " + std::to_string(a) + " - " + std::to_string(b));
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow: " + std::to_string(a) + " * " + std::to_string(b));
    return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
    return checked_sub(0, a);
}

// gcd of absolute values; gcd(0,0) = 0.
inline std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
    std::uint64_t ua = a < 0 ? 0ull - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
    std::uint64_t ub = b < 0 ? 0ull - static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
    std::uint64_t g = std::gcd(ua, ub);
    if (g > static_cast<std::uint64_t>(INT64_MAX))
        throw std::overflow_error("gcd out of range");
    return static_cast<std::int64_t>(g);
}

inline int sign_of(std::int64_t a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }

} // namespace tsde
