#pragma once

#include <cstdint>
#include <string>

namespace plateau {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using i128 = __int128;

std::string to_string(i128 value);

/// Checked integer power; throws std::overflow_error when the result leaves u64.
u64 ipow(u64 base, unsigned exponent);

/// Checked power in 128-bit signed arithmetic.
i128 ipow128(i128 base, unsigned exponent);

/// floor(sqrt(x)) for x >= 0.
i128 isqrt(i128 x);

bool is_perfect_square(i128 x);

i128 gcd128(i128 a, i128 b);

/// Exact quotient; throws std::domain_error when `den` does not divide `num`.
i128 exact_div(i128 num, i128 den);

/// Floor / ceiling division for a positive denominator.
i128 floor_div(i128 num, i128 den);
i128 ceil_div(i128 num, i128 den);

/// True if `value` is p^k for some k >= 0; stores k.
bool is_power_of(u64 value, u64 p, unsigned* exponent = nullptr);

}  // namespace plateau
