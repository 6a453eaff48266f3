#pragma once

#include <cstdint>
#include <random>

#include "plateau/algebra.hpp"

namespace plateau {

/// Deterministic generator for a (seed, stream) pair; streams are independent.
class Rng {
 public:
  explicit Rng(u64 seed, u64 stream = 0);

  u64 next() { return engine_(); }
  /// Uniform in [0, bound) by rejection, identical on every platform.
  u64 below(u64 bound);

 private:
  std::mt19937_64 engine_;
};

/// Uniformly random table F_p^n -> F_p^m.
FuncTable random_function(const DomainParams& params, u64 seed, u64 stream = 0);

}  // namespace plateau
