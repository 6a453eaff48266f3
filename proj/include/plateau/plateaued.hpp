#pragma once

// Component amplitude profiles and the structure checks built on them.
//
// Plateau index: a component <b, F> is t-plateaued when every |W(b, a)|^2 is
// 0 or p^{n+t}. Bent means t = 0; an amplitude p^{n/2+s} is index 2s.

#include <map>
#include <optional>
#include <vector>

#include "plateau/algebra.hpp"
#include "plateau/cycint.hpp"
#include "plateau/differential.hpp"
#include "plateau/distribution.hpp"
#include "plateau/verdict.hpp"

namespace plateau {

struct ComponentInfo {
  std::optional<unsigned> t;  // plateau index, nullopt if not plateaued
  bool balanced = false;      // each value of <b, F> taken p^{n-1} times
  CycInt w0;                  // W(b, 0)
  u64 support = 0;            // number of a with W(b, a) != 0
};

struct AmplitudeProfile {
  DomainParams params;
  std::vector<ComponentInfo> components;  // entry b - 1 for b = 1 .. p^m - 1
  u64 bent_count = 0;
  u64 balanced_count = 0;
  u64 plateaued_count = 0;
  std::map<unsigned, u64> t_histogram;
  i128 linearity_sq = 0;  // max |W(b, a)|^2 over b != 0; exact when every component is plateaued

  const ComponentInfo& component(u64 b) const { return components.at(b - 1); }
  bool all_plateaued() const { return plateaued_count == components.size(); }
  /// The common plateau index when all components share it.
  std::optional<unsigned> single_t() const;
  /// sqrt(linearity_sq) when it is a perfect square.
  std::optional<i128> linearity() const;
};

/// Scans every Walsh row; throws BudgetExceeded when p^{n+m} > 2^max_log.
AmplitudeProfile component_profile(const FuncTable& f, unsigned max_log = 28);

/// d when F has exactly one fiber of size 1, all other nonempty fibers of size d, and d | p^n - 1.
/// A permutation reports d = 1.
std::optional<u64> dto1_degree(const PreimageDist& dist);

struct Dto1Report {
  std::optional<u64> d;
  std::optional<unsigned> t;  // d = p^t + 1
  u64 n0 = 0;                 // bent components
  u64 n1 = 0;                 // components of amplitude p^{n/2+t}
  i128 linearity_sq = 0;
  u64 image_size = 0;
  Verdict verdict;
};

/// With `assume_plateaued`, the conclusion is evaluated even when the profile
/// shows a non-plateaued component, so a false assertion surfaces as a failure.
Dto1Report dto1_check(const FuncTable& f, const AmplitudeProfile& profile, bool assume_plateaued = false);
Dto1Report dto1_check(const FuncTable& f, bool assume_plateaued = false);

/// Odd p, d-to-1 with d > 2, plateaued: after normalizing F^{-1}(0) = {0}, every
/// W(b, 0) is a rational integer congruent to 1 mod d.
Verdict walsh_integrality_check(const FuncTable& f, const AmplitudeProfile& profile, bool assume_plateaued = false);
Verdict walsh_integrality_check(const FuncTable& f, bool assume_plateaued = false);

/// n = m and either plateaued (p^t+1)-to-1 or single plateau index t > 0:
/// delta >= p^t, with equality iff the DDT is two-valued at p^t.
Verdict diff_two_valued_check(const FuncTable& f, const AmplitudeProfile& profile, const DiffSummary& diff,
                              bool assume_plateaued = false);

struct ApnStructure {
  u64 bent_count = 0;
  u64 balanced_count = 0;
  i128 imbalance = 0;
  bool min_image_attained = false;
  int distribution_type = 0;  // 1, 2, 3; -1 other; 0 when the image is not minimal
  std::vector<Verdict> checks;
  Verdict verdict;
};

ApnStructure apn_structure(const FuncTable& f, const AmplitudeProfile& profile, const DiffSummary& diff,
                           bool assume_plateaued = false);
ApnStructure apn_structure(const FuncTable& f, bool assume_plateaued = false);

}  // namespace plateau
