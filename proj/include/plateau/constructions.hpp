#pragma once

// Builders for the explicit function families: monomials, Gold traces,
// the two Maiorana-McFarland families, and linear output compositions.
//
// Product domains F_{2^m} x F_{2^m} are flattened to index x * 2^m + y, and
// pair outputs (u, v) to u * 2^m + v.

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "plateau/algebra.hpp"
#include "plateau/verdict.hpp"

namespace plateau {

/// A construction's hypotheses do not hold and `force` was not given.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Preimage sizes a construction promises, to be re-derived from the table.
struct Expectation {
  std::map<u64, u64> special;   // value -> fiber size
  std::optional<u64> others;    // size of every other fiber
  bool others_nonempty_only = false;  // `others` applies only to values in the image
  std::optional<unsigned> single_t;   // common plateau index of every component
};

struct Construction {
  std::string kind;
  std::string description;
  FuncTable table;
  std::optional<Expectation> expected;  // nullopt when no distribution is promised
  bool hypotheses_hold = true;
  std::string hypothesis_note;          // why the hypotheses fail, when they do
};

/// x -> x^d on ctx; the expected nonzero fiber size is gcd(d, p^n - 1).
Construction monomial(const FieldCtx& ctx, u64 d);

/// x -> Tr^n_{n/2}(x^{2^r + 1}) on F_{2^n}; requires n / gcd(r, n) even.
Construction gold_trace(const FieldCtx& ctx, std::uint32_t r, bool force = false);

/// (x, y) -> x pi(y) + phi(y) on F_{2^m}^2; requires pi 2-to-1.
Construction mm_pi_phi(const FieldCtx& ctx_m, std::span<const std::uint32_t> pi, std::span<const std::uint32_t> phi,
                       bool force = false);

/// (x, y) -> (x pi(y), x pi(y)^{2^i}); requires pi a permutation and gcd(i, m) = 1.
Construction mm_pair(const FieldCtx& ctx_m, std::span<const std::uint32_t> pi, std::uint32_t i, bool force = false);

/// x -> L F(x) for a full-rank k x m matrix L over F_p.
Construction linear_compose(const FuncTable& f, const MatrixFp& l);

/// Compares the promised distribution with the table; Skipped when nothing is promised.
Verdict check_expectation(const Construction& c, const std::string& tag);

}  // namespace plateau
