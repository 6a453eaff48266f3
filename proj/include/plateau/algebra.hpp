#pragma once

// Encodings of F_p^n, scalar products, F_p matrices and F_{p^k} arithmetic.
//
// One encoding is used everywhere: an index i < p^len is the little-endian
// base-p digit vector (x_0, ..., x_{len-1}) of i. For field elements the same
// digits are the coordinates in the polynomial basis 1, X, ..., X^{deg-1}.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "plateau/wide.hpp"

namespace plateau {

/// Largest supported log2 of p^n and p^m (values are stored as uint32).
inline constexpr unsigned kMaxIndexBits = 30;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_prime(u64 value);

/// Number of bits needed for p^k, i.e. ceil(k * log2 p).
unsigned index_bits(std::uint32_t p, std::uint32_t k);

struct DomainParams {
  std::uint32_t p = 2;
  std::uint32_t n = 1;  // input dimension
  std::uint32_t m = 1;  // output dimension

  DomainParams() = default;
  DomainParams(std::uint32_t p, std::uint32_t n, std::uint32_t m);

  u64 input_size() const { return ipow(p, n); }
  u64 output_size() const { return ipow(p, m); }

  bool operator==(const DomainParams&) const = default;
};

/// A function F: F_p^n -> F_p^m as a dense value table indexed by input encoding.
class FuncTable {
 public:
  FuncTable(DomainParams params, std::vector<std::uint32_t> values);

  const DomainParams& params() const { return params_; }
  std::uint32_t p() const { return params_.p; }
  std::uint32_t n() const { return params_.n; }
  std::uint32_t m() const { return params_.m; }
  u64 size() const { return values_.size(); }

  std::span<const std::uint32_t> values() const { return values_; }
  std::uint32_t operator[](u64 x) const { return values_[x]; }

  bool operator==(const FuncTable&) const = default;

 private:
  DomainParams params_;
  std::vector<std::uint32_t> values_;
};

// ---------------------------------------------------------------------------
// Digit-vector arithmetic on encoded vectors of F_p^len.

std::vector<std::uint32_t> to_digits(u64 index, std::uint32_t p, std::uint32_t len);
u64 from_digits(std::span<const std::uint32_t> digits, std::uint32_t p);

u64 vec_add(u64 i, u64 j, std::uint32_t p, std::uint32_t len);
u64 vec_sub(u64 i, u64 j, std::uint32_t p, std::uint32_t len);
u64 vec_neg(u64 i, std::uint32_t p, std::uint32_t len);
u64 vec_scale(std::uint32_t c, u64 i, std::uint32_t p, std::uint32_t len);

/// <x, y> = sum_k x_k y_k mod p.
std::uint32_t dot(u64 i, u64 j, std::uint32_t p, std::uint32_t len);

namespace detail {

// Unchecked versions for inner loops; operands must already be in range.
inline u64 add_digits(u64 i, u64 j, std::uint32_t p) {
  if (p == 2) return i ^ j;
  u64 out = 0, scale = 1;
  while (i != 0 || j != 0) {
    const u64 d = (i % p + j % p) % p;
    out += d * scale;
    scale *= p;
    i /= p;
    j /= p;
  }
  return out;
}

inline u64 sub_digits(u64 i, u64 j, std::uint32_t p) {
  if (p == 2) return i ^ j;
  u64 out = 0, scale = 1;
  while (i != 0 || j != 0) {
    const u64 d = (i % p + p - j % p) % p;
    out += d * scale;
    scale *= p;
    i /= p;
    j /= p;
  }
  return out;
}

inline std::uint32_t dot_digits(u64 i, u64 j, std::uint32_t p) {
  if (p == 2) return static_cast<std::uint32_t>(__builtin_popcountll(i & j) & 1);
  u64 acc = 0;
  while (i != 0 && j != 0) {
    acc += (i % p) * (j % p);
    i /= p;
    j /= p;
  }
  return static_cast<std::uint32_t>(acc % p);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Matrices over F_p. A rows x cols matrix maps F_p^cols -> F_p^rows.

class MatrixFp {
 public:
  MatrixFp(std::uint32_t p, std::size_t rows, std::size_t cols);
  MatrixFp(std::uint32_t p, std::vector<std::vector<std::uint32_t>> rows);

  static MatrixFp identity(std::uint32_t p, std::size_t size);

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint32_t v);

  std::size_t rank() const;

  /// Image of the encoded vector x (cols digits) as an encoded vector (rows digits).
  u64 apply(u64 x) const;

  std::vector<std::vector<std::uint32_t>> to_rows() const;

  bool operator==(const MatrixFp&) const = default;

 private:
  std::uint32_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> entries_;
};

// ---------------------------------------------------------------------------
// Finite fields F_{p^deg} in a polynomial basis.

/// Coefficients low -> high, monic, length deg + 1.
using Polynomial = std::vector<std::uint32_t>;

/// Ben-Or irreducibility test over F_p.
bool is_irreducible(const Polynomial& f, std::uint32_t p);

/// The bundled modulus for (p, deg), or the smallest monic irreducible polynomial.
Polynomial default_modulus(std::uint32_t p, std::uint32_t deg);

class FieldCtx {
 public:
  /// Throws std::invalid_argument unless `modulus` is monic irreducible of degree `deg`.
  FieldCtx(std::uint32_t p, std::uint32_t deg, Polynomial modulus);

  static FieldCtx standard(std::uint32_t p, std::uint32_t deg);

  std::uint32_t p() const { return p_; }
  std::uint32_t deg() const { return deg_; }
  u64 order() const { return order_; }
  const Polynomial& modulus() const { return modulus_; }

  u64 add(u64 a, u64 b) const { return detail::add_digits(a, b, p_); }
  u64 sub(u64 a, u64 b) const { return detail::sub_digits(a, b, p_); }
  u64 mul(u64 a, u64 b) const;
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;
  u64 frobenius(u64 a) const { return pow(a, p_); }

  /// Tr^deg_m(a) = sum_{i < deg/m} a^{p^{im}}, as an element of this field.
  u64 rel_trace(u64 a, std::uint32_t m) const;

  /// True if a is the multiplicative order p^deg - 1 generator.
  bool is_primitive_element(u64 a) const;

 private:
  std::uint32_t p_;
  std::uint32_t deg_;
  u64 order_;
  Polynomial modulus_;
  u64 reduce_mask_ = 0;  // p = 2: modulus without the leading term, as bits
};

/// Bijection between the degree-m subfield of a FieldCtx and indices [0, p^m).
///
/// The subfield is the kernel of z -> z^{p^m} - z. A kernel basis is put in
/// reduced echelon form; the coordinates of a subfield element are its digits
/// at the free (non-pivot) positions of that form.
class SubfieldEncoding {
 public:
  SubfieldEncoding(const FieldCtx& ctx, std::uint32_t m);

  std::uint32_t m() const { return m_; }

  /// Subfield element -> m-digit index. Throws if `element` is not in the subfield.
  u64 encode(u64 element) const;
  /// m-digit index -> subfield element.
  u64 decode(u64 index) const;

 private:
  std::uint32_t p_;
  std::uint32_t deg_;
  std::uint32_t m_;
  std::vector<std::uint32_t> free_positions_;
  std::vector<u64> basis_;  // basis_[k] has digit 1 at free_positions_[k], 0 at the others
};

}  // namespace plateau
