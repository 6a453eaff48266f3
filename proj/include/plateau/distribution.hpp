#pragma once

// Value distributions, the imbalance N_F, preimage-size bounds, almost
// balanced classification and surjectivity tools.
//
// All square roots are kept symbolic: an interval (center +- sqrt(R)) / D is
// compared against integers by squaring, never by rounding.

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "plateau/algebra.hpp"
#include "plateau/verdict.hpp"
#include "plateau/walsh.hpp"

namespace plateau {

/// An identity that must hold by construction failed; indicates an arithmetic bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct PreimageDist {
  DomainParams params;
  std::vector<u64> counts;        // counts[v] = |F^{-1}(v)|
  u64 image_size = 0;
  std::vector<u64> sorted_sizes;  // nonzero sizes, ascending

  /// (size, multiplicity) pairs in ascending size.
  std::vector<std::pair<u64, u64>> histogram() const;
  i128 sum_of_squares() const;
  bool surjective() const { return image_size == counts.size(); }
};

PreimageDist preimage_distribution(const FuncTable& f);

/// N_F = p^{-m} sum_{b != 0} |W_F(b, 0)|^2, checked against sum X_i^2 - p^{2n-m}.
/// Throws std::domain_error when N_F is not an integer (possible only for m > 2n).
i128 imbalance(const FuncTable& f);
i128 imbalance(const PreimageDist& dist, const ZeroColumn& column);

/// Xi(F) = sqrt(radicand) / denominator, denominator = |image(F)|.
struct XiDefect {
  i128 radicand = 0;
  u64 denominator = 1;

  bool is_zero() const { return radicand == 0; }
  /// Reduced num/den when the radicand is a perfect square.
  std::optional<std::pair<i128, i128>> rational() const;
};

XiDefect xi_defect(const FuncTable& f);
XiDefect xi_defect(const PreimageDist& dist, i128 imbalance);

/// The closed interval [(center - sqrt(radicand)) / denominator, (center + sqrt(radicand)) / denominator].
struct RadicalInterval {
  i128 center = 0;
  i128 radicand = 0;
  i128 denominator = 1;

  bool contains(u64 x) const;
  bool attains_upper(u64 x) const;
  bool attains_lower(u64 x) const;
  /// Integer envelope: smallest / largest integer inside the interval.
  i128 lo_int() const;
  i128 hi_int() const;
};

struct PreimageBounds {
  RadicalInterval image_aware;  // p^n/|image| +- Xi(F)
  RadicalInterval image_free;   // p^{n-m} +- sqrt((1 - p^{-m}) N_F)
};

PreimageBounds preimage_bounds(const FuncTable& f);
PreimageBounds preimage_bounds(const PreimageDist& dist, i128 imbalance);

enum class ABKind { NotAB, TypePlus, TypeMinus };

std::string_view to_string(ABKind kind);

struct ABWitness {
  u64 value = 0;
  ABKind kind = ABKind::NotAB;
  u64 size = 0;
};

struct ABClass {
  ABKind kind = ABKind::NotAB;
  std::optional<u64> witness;  // smallest witnessing output value
  bool surjective = false;
  std::vector<ABWitness> witnesses;
  /// Every other nonempty fiber has size (p^n - X_beta)/(|image| - 1) for each witness.
  bool rider_holds = true;
};

ABClass classify_almost_balanced(const FuncTable& f);
ABClass classify_almost_balanced(const PreimageDist& dist, const XiDefect& xi);

/// Walsh consequences of being surjective and almost balanced, applied to F - beta.
Verdict ab_walsh_consequences(const FuncTable& f);
Verdict ab_walsh_consequences(const FuncTable& f, const ABClass& ab, i128 imbalance);

struct SurjectivityCertificate {
  bool guaranteed = false;  // N_F < p^{2(n-m)} / (1 - p^{-m})
  bool surjective = false;  // from the distribution
};

SurjectivityCertificate surjectivity_certificate(const FuncTable& f);
SurjectivityCertificate surjectivity_certificate(const PreimageDist& dist, i128 imbalance);

/// ceil(p^{2n} / (p^{2n-m} + N_F)); never exceeds |image(F)|.
u64 image_lower_bound(const FuncTable& f);
u64 image_lower_bound(const DomainParams& params, i128 imbalance);

enum class ShiftGoal { Imbalance, Surjective };

struct BalancingShift {
  bool found = false;
  u64 trial = 0;        // index of the successful trial, or trials used on failure
  std::optional<MatrixFp> map;  // m x n over F_p
  i128 imbalance = 0;   // N_{F+L}, recomputed exactly
  bool surjective = false;
};

/// x -> F(x) + L x.
FuncTable add_linear(const FuncTable& f, const MatrixFp& l);

/// Images L x for every x < p^cols.
std::vector<std::uint32_t> linear_map_table(const MatrixFp& l);

/// Searches for L with N_{F+L} <= p^n - p^{n-m} (Imbalance) or F + L surjective.
/// Trial 0 is L = 0; later trials draw L uniformly from a seed-split stream.
/// `trials` = 0 selects the default budget 10 p^m.
BalancingShift find_balancing_shift(const FuncTable& f, ShiftGoal goal, u64 trials, u64 seed);

}  // namespace plateau
