#pragma once

#include <string>

#include "plateau/wide.hpp"

namespace plateau {

struct BenchResult {
  std::string kind;
  unsigned size = 0;
  unsigned threads = 1;
  unsigned reps = 0;
  double median_ms = 0;
  double min_ms = 0;
  double max_ms = 0;
};

/// Kinds: wht (one Boolean transform of length 2^size), zero-column (imbalance,
/// AB and bounds of a random F_2^size -> F_2^size), profile (full amplitude
/// profile, n = m = size), ddt (differential summary, n = m = size).
/// Inputs are random with the given seed; timings exclude input generation.
BenchResult run_bench(const std::string& kind, unsigned size, unsigned reps = 5, u64 seed = 1);

std::string bench_csv_header();
std::string to_csv(const BenchResult& r);

}  // namespace plateau
