#pragma once

#include "plateau/algebra.hpp"
#include "plateau/constructions.hpp"

namespace testing {

inline plateau::FuncTable power_map(std::uint32_t p, std::uint32_t n, plateau::u64 d) {
  return plateau::monomial(plateau::FieldCtx::standard(p, n), d).table;
}

inline plateau::FuncTable identity_map(std::uint32_t p, std::uint32_t n) {
  const plateau::u64 q = plateau::ipow(p, n);
  std::vector<std::uint32_t> v(q);
  for (plateau::u64 x = 0; x < q; ++x) v[x] = static_cast<std::uint32_t>(x);
  return plateau::FuncTable({p, n, n}, v);
}

inline plateau::FuncTable constant_map(std::uint32_t p, std::uint32_t n, std::uint32_t m, std::uint32_t c = 0) {
  return plateau::FuncTable({p, n, m}, std::vector<std::uint32_t>(plateau::ipow(p, n), c));
}

}  // namespace testing
