#include "plateau/wide.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plateau {

std::string to_string(i128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // Work with the magnitude as unsigned to cover INT128_MIN.
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(value + 1)) + 1
                                   : static_cast<unsigned __int128>(value);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

u64 ipow(u64 base, unsigned exponent) {
  u64 result = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && result > UINT64_MAX / base) throw std::overflow_error("ipow: u64 overflow");
    result *= base;
  }
  return result;
}

i128 ipow128(i128 base, unsigned exponent) {
  constexpr i128 kMax = ~(static_cast<i128>(1) << 127);
  i128 result = 1;
  const i128 mag = base < 0 ? -base : base;
  for (unsigned i = 0; i < exponent; ++i) {
    const i128 r = result < 0 ? -result : result;
    if (mag != 0 && r > kMax / mag) throw std::overflow_error("ipow128: overflow");
    result *= base;
  }
  return result;
}

i128 isqrt(i128 x) {
  if (x < 0) throw std::domain_error("isqrt of a negative value");
  if (x < 2) return x;
  // Long-double estimate, then exact correction.
  i128 r = static_cast<i128>(sqrtl(static_cast<long double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

bool is_perfect_square(i128 x) {
  if (x < 0) return false;
  const i128 r = isqrt(x);
  return r * r == x;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 exact_div(i128 num, i128 den) {
  if (den == 0 || num % den != 0) {
    throw std::domain_error("exact_div: " + to_string(num) + " not divisible by " + to_string(den));
  }
  return num / den;
}

i128 floor_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

i128 ceil_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && (num > 0)) ++q;
  return q;
}

bool is_power_of(u64 value, u64 p, unsigned* exponent) {
  if (value == 0 || p < 2) return false;
  unsigned k = 0;
  while (value % p == 0) {
    value /= p;
    ++k;
  }
  if (value != 1) return false;
  if (exponent) *exponent = k;
  return true;
}

}  // namespace plateau
