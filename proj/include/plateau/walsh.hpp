#pragma once

// Exact Walsh transforms W_F(b, a) = sum_x zeta_p^{<b, F(x)> - <a, x>}.
//
// Values are stored flat: `stride` coordinates per entry, the canonical
// Z[zeta_p] coordinates for odd p and a single integer for p = 2.

#include <cstdint>
#include <span>
#include <vector>

#include "plateau/algebra.hpp"
#include "plateau/cycint.hpp"

namespace plateau {

/// W_F(b, a) by direct summation. Reference path for the fast transforms.
CycInt walsh_point(const FuncTable& f, u64 b, u64 a);

struct WalshRow {
  std::uint32_t p = 2;
  u64 b = 0;
  std::uint32_t stride = 1;
  std::vector<i64> data;

  u64 size() const { return data.size() / stride; }
  CycInt at(u64 a) const;
  /// p = 2 only.
  i64 integer(u64 a) const { return data[a]; }
};

/// Full row a -> W_F(b, a) via butterflies over (Z_p)^n; O(p^n * n) ring operations.
WalshRow walsh_row(const FuncTable& f, u64 b);

struct ZeroColumn {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::uint32_t stride = 1;
  std::vector<i64> data;

  u64 size() const { return data.size() / stride; }
  CycInt at(u64 b) const;
  i64 integer(u64 b) const { return data[b]; }
};

/// b -> W_F(b, 0), computed from the preimage counts c_v as sum_v c_v zeta^{<b, v>}.
ZeroColumn zero_column(const FuncTable& f);
ZeroColumn zero_column_from_counts(std::uint32_t p, std::uint32_t m, std::span<const u64> counts);

namespace detail {

/// In-place Walsh-Hadamard transform of length 2^k.
template <class T>
void fwht(std::span<T> v) {
  const std::size_t len = v.size();
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += h << 1) {
      T* lo = v.data() + i;
      T* hi = lo + h;
      for (std::size_t j = 0; j < h; ++j) {
        const T x = lo[j];
        const T y = hi[j];
        lo[j] = x + y;
        hi[j] = x - y;
      }
    }
  }
}

/// Signed Walsh row of the Boolean component <b, F> into `out` (length 2^n).
void binary_walsh_row(const FuncTable& f, u64 b, std::span<std::int32_t> out);

/// Group-ring transform over (Z_p)^len. `v` holds p exponent counts per point;
/// afterwards entry y holds sum_x zeta^{sign * <x, y>} * v[x].
void cyclic_transform(std::span<i64> v, std::uint32_t p, std::uint32_t len, int sign);

}  // namespace detail

}  // namespace plateau
