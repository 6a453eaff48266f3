#include "plateau/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "plateau/differential.hpp"
#include "plateau/distribution.hpp"
#include "plateau/parallel.hpp"
#include "plateau/plateaued.hpp"
#include "plateau/random.hpp"
#include "plateau/walsh.hpp"

namespace plateau {

BenchResult run_bench(const std::string& kind, unsigned size, unsigned reps, u64 seed) {
  if (reps == 0) throw std::invalid_argument("bench: reps must be positive");
  if (size == 0 || size > kMaxIndexBits) throw std::invalid_argument("bench: size must be in [1, 30]");
  const DomainParams prm(2, size, size);
  std::function<void()> body;
  std::vector<std::int32_t> buf;
  std::optional<FuncTable> f;
  if (kind == "wht") {
    Rng rng(seed);
    buf.resize(std::size_t{1} << size);
    body = [&] {
      for (auto& v : buf) v = (rng.next() & 1) ? -1 : 1;
      detail::fwht(std::span<std::int32_t>(buf));
    };
  } else if (kind == "zero-column") {
    f = random_function(prm, seed);
    body = [&] {
      const auto dist = preimage_distribution(*f);
      const i128 nf = imbalance(dist, zero_column(*f));
      const auto xi = xi_defect(dist, nf);
      (void)preimage_bounds(dist, nf);
      (void)classify_almost_balanced(dist, xi);
    };
  } else if (kind == "profile") {
    f = random_function(prm, seed);
    body = [&] { (void)component_profile(*f, 2 * kMaxIndexBits); };
  } else if (kind == "ddt") {
    f = random_function(prm, seed);
    body = [&] { (void)diff_summary(*f); };
  } else {
    throw std::invalid_argument("bench: unknown kind '" + kind + "' (expected wht, zero-column, profile, ddt)");
  }
  std::vector<double> ms;
  for (unsigned r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(ms.begin(), ms.end());
  BenchResult res;
  res.kind = kind;
  res.size = size;
  res.threads = worker_count();
  res.reps = reps;
  res.median_ms = ms[ms.size() / 2];
  res.min_ms = ms.front();
  res.max_ms = ms.back();
  return res;
}

std::string bench_csv_header() { return "kind,size,threads,reps,median_ms,min_ms,max_ms"; }

std::string to_csv(const BenchResult& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << r.kind << ',' << r.size << ',' << r.threads << ',' << r.reps << ',' << r.median_ms << ',' << r.min_ms << ','
     << r.max_ms;
  return os.str();
}

}  // namespace plateau
