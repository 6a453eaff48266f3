#include "plateau/walsh.hpp"

#include <stdexcept>

namespace plateau {

CycInt walsh_point(const FuncTable& f, u64 b, u64 a) {
  const auto& prm = f.params();
  if (b >= prm.output_size() || a >= prm.input_size()) throw std::out_of_range("walsh_point: mask out of range");
  const std::uint32_t p = prm.p;
  std::vector<i64> counts(p, 0);
  for (u64 x = 0; x < f.size(); ++x) {
    const std::uint32_t fb = detail::dot_digits(b, f[x], p);
    const std::uint32_t ax = detail::dot_digits(a, x, p);
    ++counts[(fb + p - ax) % p];
  }
  return CycInt::from_exponent_counts(p, counts);
}

CycInt WalshRow::at(u64 a) const {
  if (p == 2) return CycInt::from_integer(2, data[a]);
  std::vector<i64> counts(p, 0);
  for (std::uint32_t k = 0; k < stride; ++k) counts[k] = data[a * stride + k];
  return CycInt::from_exponent_counts(p, counts);
}

CycInt ZeroColumn::at(u64 b) const {
  if (p == 2) return CycInt::from_integer(2, data[b]);
  std::vector<i64> counts(p, 0);
  for (std::uint32_t k = 0; k < stride; ++k) counts[k] = data[b * stride + k];
  return CycInt::from_exponent_counts(p, counts);
}

namespace detail {

void binary_walsh_row(const FuncTable& f, u64 b, std::span<std::int32_t> out) {
  const auto values = f.values();
  for (u64 x = 0; x < values.size(); ++x) out[x] = 1 - 2 * (__builtin_popcountll(b & values[x]) & 1);
  fwht(out);
}

void cyclic_transform(std::span<i64> v, std::uint32_t p, std::uint32_t len, int sign) {
  const u64 points = v.size() / p;
  std::vector<i64> in(static_cast<std::size_t>(p) * p), out(static_cast<std::size_t>(p) * p);
  u64 step = 1;
  for (std::uint32_t digit = 0; digit < len; ++digit) {
    for (u64 base = 0; base < points; ++base) {
      if ((base / step) % p != 0) continue;
      for (std::uint32_t j = 0; j < p; ++j)
        for (std::uint32_t r = 0; r < p; ++r) in[j * p + r] = v[(base + j * step) * p + r];
      std::fill(out.begin(), out.end(), 0);
      for (std::uint32_t y = 0; y < p; ++y) {
        for (std::uint32_t j = 0; j < p; ++j) {
          // Multiply by zeta^{sign * y * j}: shift exponents.
          const std::uint32_t shift = static_cast<std::uint32_t>(((sign * static_cast<i64>(y) * j) % p + p) % p);
          for (std::uint32_t r = 0; r < p; ++r) out[y * p + (r + shift) % p] += in[j * p + r];
        }
      }
      for (std::uint32_t y = 0; y < p; ++y)
        for (std::uint32_t r = 0; r < p; ++r) v[(base + y * step) * p + r] = out[y * p + r];
    }
    step *= p;
  }
}

}  // namespace detail

namespace {

// Length-p exponent counts -> canonical coordinates, in place into `dst`.
void canonicalize(std::span<const i64> src, std::uint32_t p, std::vector<i64>& dst) {
  const u64 points = src.size() / p;
  const std::uint32_t stride = p - 1;
  dst.assign(points * stride, 0);
  for (u64 y = 0; y < points; ++y) {
    const i64 top = src[y * p + p - 1];
    for (std::uint32_t k = 0; k < stride; ++k) dst[y * stride + k] = src[y * p + k] - top;
  }
}

}  // namespace

WalshRow walsh_row(const FuncTable& f, u64 b) {
  const auto& prm = f.params();
  if (b >= prm.output_size()) throw std::out_of_range("walsh_row: output mask out of range");
  WalshRow row;
  row.p = prm.p;
  row.b = b;
  if (prm.p == 2) {
    if (prm.n > 30) throw BudgetExceeded("binary Walsh row needs n <= 30");
    std::vector<std::int32_t> buf(f.size());
    detail::binary_walsh_row(f, b, buf);
    row.stride = 1;
    row.data.assign(buf.begin(), buf.end());
    return row;
  }
  const std::uint32_t p = prm.p;
  std::vector<i64> work(f.size() * p, 0);
  for (u64 x = 0; x < f.size(); ++x) work[x * p + detail::dot_digits(b, f[x], p)] = 1;
  detail::cyclic_transform(work, p, prm.n, -1);
  row.stride = p - 1;
  canonicalize(work, p, row.data);
  return row;
}

ZeroColumn zero_column_from_counts(std::uint32_t p, std::uint32_t m, std::span<const u64> counts) {
  ZeroColumn col;
  col.p = p;
  col.m = m;
  if (p == 2) {
    col.stride = 1;
    col.data.assign(counts.begin(), counts.end());
    detail::fwht(std::span<i64>(col.data));
    return col;
  }
  std::vector<i64> work(counts.size() * p, 0);
  for (u64 v = 0; v < counts.size(); ++v) work[v * p] = static_cast<i64>(counts[v]);
  detail::cyclic_transform(work, p, m, +1);
  col.stride = p - 1;
  canonicalize(work, p, col.data);
  return col;
}

ZeroColumn zero_column(const FuncTable& f) {
  std::vector<u64> counts(f.params().output_size(), 0);
  for (auto v : f.values()) ++counts[v];
  return zero_column_from_counts(f.p(), f.m(), counts);
}

}  // namespace plateau
