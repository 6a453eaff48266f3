#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library beyond FuncTable as a container.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "plateau/algebra.hpp"

namespace oracle {

using Vec = std::vector<std::uint32_t>;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline Vec digits(u64 x, std::uint32_t p, std::uint32_t len) {
  Vec d(len);
  for (std::uint32_t k = 0; k < len; ++k, x /= p) d[k] = static_cast<std::uint32_t>(x % p);
  return d;
}

inline u64 undigits(const Vec& d, std::uint32_t p) {
  u64 x = 0;
  for (std::size_t k = d.size(); k-- > 0;) x = x * p + d[k];
  return x;
}

inline u64 add(u64 x, u64 y, std::uint32_t p, std::uint32_t len) {
  Vec a = digits(x, p, len), b = digits(y, p, len);
  for (std::uint32_t k = 0; k < len; ++k) a[k] = (a[k] + b[k]) % p;
  return undigits(a, p);
}

inline u64 sub(u64 x, u64 y, std::uint32_t p, std::uint32_t len) {
  Vec a = digits(x, p, len), b = digits(y, p, len);
  for (std::uint32_t k = 0; k < len; ++k) a[k] = (a[k] + p - b[k]) % p;
  return undigits(a, p);
}

inline std::uint32_t dot(u64 x, u64 y, std::uint32_t p, std::uint32_t len) {
  Vec a = digits(x, p, len), b = digits(y, p, len);
  u64 s = 0;
  for (std::uint32_t k = 0; k < len; ++k) s += static_cast<u64>(a[k]) * b[k];
  return static_cast<std::uint32_t>(s % p);
}

/// F_{p^deg} as polynomials mod `mod` (low -> high, monic), schoolbook arithmetic.
struct Field {
  std::uint32_t p;
  std::uint32_t deg;
  Vec mod;

  u64 order() const {
    u64 q = 1;
    for (std::uint32_t k = 0; k < deg; ++k) q *= p;
    return q;
  }

  u64 mul(u64 x, u64 y) const {
    const Vec a = digits(x, p, deg), b = digits(y, p, deg);
    Vec prod(2 * deg, 0);
    for (std::uint32_t i = 0; i < deg; ++i)
      for (std::uint32_t j = 0; j < deg; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (std::size_t top = prod.size(); top-- > deg;) {
      const std::uint32_t c = prod[top];
      if (c == 0) continue;
      for (std::uint32_t k = 0; k <= deg; ++k) {
        const std::size_t at = top - deg + k;
        prod[at] = (prod[at] + (p - c) * mod[k]) % p;
      }
    }
    prod.resize(deg);
    return undigits(prod, p);
  }

  u64 pow(u64 x, u64 e) const {
    u64 r = 1;
    for (u64 k = 0; k < e; ++k) r = mul(r, x);
    return r;
  }

  u64 add(u64 x, u64 y) const { return oracle::add(x, y, p, deg); }
};

/// Trial division by every monic polynomial of degree 1 .. deg/2.
inline bool irreducible(const Vec& f, std::uint32_t p) {
  const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= deg / 2; ++d) {
    u64 count = 1;
    for (std::uint32_t k = 0; k < d; ++k) count *= p;
    for (u64 low = 0; low < count; ++low) {
      Vec g = digits(low, p, d);
      g.push_back(1);
      Vec r = f;
      for (std::size_t top = r.size(); top-- > d;) {
        const std::uint32_t c = r[top];
        if (c == 0) continue;
        for (std::uint32_t k = 0; k <= d; ++k) {
          const std::size_t at = top - d + k;
          r[at] = (r[at] + (p - c) * g[k]) % p;
        }
      }
      bool zero = true;
      for (std::uint32_t k = 0; k < d; ++k) zero = zero && r[k] == 0;
      if (zero) return false;
    }
  }
  return true;
}

/// Exponent counts c_k = |{x : <b,F(x)> - <a,x> = k}|.
inline std::vector<i64> walsh_counts(const plateau::FuncTable& f, u64 b, u64 a) {
  const std::uint32_t p = f.p();
  std::vector<i64> c(p, 0);
  for (u64 x = 0; x < f.size(); ++x) {
    const std::uint32_t e = (dot(b, f[x], p, f.m()) + p - dot(a, x, p, f.n())) % p;
    ++c[e];
  }
  return c;
}

/// |sum_k c_k zeta^k|^2 when rational: sum_{j,k} c_j c_k zeta^{j-k}; rational iff all
/// nonzero-shift correlations agree, then the value is e_0 - e_1.
inline std::optional<i64> sq_modulus(const std::vector<i64>& c) {
  const std::size_t p = c.size();
  std::vector<i64> e(p, 0);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = 0; k < p; ++k) e[(j + p - k) % p] += c[j] * c[k];
  if (p == 2) return e[0] - e[1];
  for (std::size_t d = 2; d < p; ++d)
    if (e[d] != e[1]) return std::nullopt;
  return e[0] - e[1];
}

/// p = 2 only.
inline i64 walsh_int(const plateau::FuncTable& f, u64 b, u64 a) {
  const auto c = walsh_counts(f, b, a);
  return c[0] - c[1];
}

inline std::vector<u64> fibers(const plateau::FuncTable& f) {
  std::vector<u64> c(f.params().output_size(), 0);
  for (u64 x = 0; x < f.size(); ++x) ++c[f[x]];
  return c;
}

inline std::map<u64, u64> histogram(const plateau::FuncTable& f) {
  std::map<u64, u64> h;
  for (u64 c : fibers(f))
    if (c) ++h[c];
  return h;
}

/// ddt[a][b] for all a (including a = 0).
inline std::vector<std::vector<u64>> ddt(const plateau::FuncTable& f) {
  const std::uint32_t p = f.p();
  std::vector<std::vector<u64>> t(f.size(), std::vector<u64>(f.params().output_size(), 0));
  for (u64 a = 0; a < f.size(); ++a)
    for (u64 x = 0; x < f.size(); ++x) ++t[a][sub(f[add(x, a, p, f.n())], f[x], p, f.m())];
  return t;
}

/// |{(x, y, z) : F(x) + F(y) = F(z) + F(x + y - z)}|, so that
/// sum_{all b, a} |W(b, a)|^4 = p^{n+m} * quadruples.
inline u64 quadruples(const plateau::FuncTable& f) {
  const std::uint32_t p = f.p();
  const std::uint32_t n = f.n(), m = f.m();
  u64 count = 0;
  for (u64 x = 0; x < f.size(); ++x)
    for (u64 y = 0; y < f.size(); ++y) {
      const u64 fxy = add(f[x], f[y], p, m);
      const u64 xy = add(x, y, p, n);
      for (u64 z = 0; z < f.size(); ++z)
        if (fxy == add(f[z], f[sub(xy, z, p, n)], p, m)) ++count;
    }
  return count;
}

inline u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace oracle
