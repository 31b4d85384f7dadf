#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace monoplus {

// Extended integer: finite signed 64-bit value or +infinity.
// +infinity is absorbing for addition and compares greater than every
// finite value (it is the maximum representable int64).
using ExtInt = std::int64_t;

inline constexpr ExtInt kInf = std::numeric_limits<std::int64_t>::max();

inline bool is_inf(ExtInt x) { return x == kInf; }

// Addition with the infinity sentinel. Finite sums are exact; overflow
// is rejected rather than wrapped.
inline ExtInt ext_add(ExtInt a, ExtInt b) {
    if (is_inf(a) || is_inf(b)) return kInf;
    ExtInt s;
    if (__builtin_add_overflow(a, b, &s) || is_inf(s))
        throw std::overflow_error("ext_add: finite sum out of range");
    return s;
}

inline ExtInt ext_min(ExtInt a, ExtInt b) { return a < b ? a : b; }

// Floor division that is correct for negative numerators.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace monoplus
