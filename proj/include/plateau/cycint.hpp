#pragma once

// Exact elements of Z[zeta_p] in the integral basis {1, zeta, ..., zeta^{p-2}}.
//
// zeta^{p-1} is eliminated through 1 + zeta + ... + zeta^{p-1} = 0, which
// makes the coordinates unique. For p = 2 (zeta = -1) the type is a plain
// integer with a single coordinate.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plateau/wide.hpp"

namespace plateau {

class CycInt {
 public:
  CycInt() : CycInt(2) {}
  explicit CycInt(std::uint32_t p);

  static CycInt from_integer(std::uint32_t p, i64 value);

  /// sum_k counts[k] zeta^k for k = 0..p-1 (length p, not canonical).
  static CycInt from_exponent_counts(std::uint32_t p, std::span<const i64> counts);

  static CycInt zeta_power(std::uint32_t p, i64 k);

  std::uint32_t p() const { return p_; }
  std::span<const i64> coeffs() const { return coeffs_; }

  CycInt operator+(const CycInt& o) const;
  CycInt operator-(const CycInt& o) const;
  CycInt operator*(const CycInt& o) const;
  CycInt operator-() const;
  CycInt& operator+=(const CycInt& o);

  /// Complex conjugate: zeta^k -> zeta^{-k}.
  CycInt conj() const;
  /// x * conj(x); a real element, rational only in special cases for p > 3.
  CycInt sq_modulus() const;

  bool is_zero() const;
  bool is_integer() const;
  /// The rational integer, or nullopt when a non-constant coordinate is nonzero.
  std::optional<i64> as_integer() const;
  /// Like as_integer, but throws std::domain_error on a non-rational element.
  i64 to_integer() const;

  std::string to_string() const;

  bool operator==(const CycInt&) const = default;

 private:
  std::uint32_t p_;
  std::vector<i64> coeffs_;  // length max(1, p - 1)
};

}  // namespace plateau
