#include "plateau/random.hpp"

namespace plateau {

namespace {

std::mt19937_64 make_engine(u64 seed, u64 stream) {
  auto lo = [](u64 v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](u64 v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(u64 seed, u64 stream) : engine_(make_engine(seed, stream)) {}

u64 Rng::below(u64 bound) {
  const u64 limit = ~u64{0} - (~u64{0} % bound);
  for (;;) {
    const u64 r = engine_();
    if (r < limit) return r % bound;
  }
}

FuncTable random_function(const DomainParams& params, u64 seed, u64 stream) {
  Rng rng(seed, stream);
  const u64 q = params.output_size();
  std::vector<std::uint32_t> v(params.input_size());
  for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(q));
  return FuncTable(params, std::move(v));
}

}  // namespace plateau
