#pragma once

// Difference distribution tables and fourth-moment identities.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "plateau/algebra.hpp"

namespace plateau {

/// Rows a = 1 .. p^n - 1, columns b < p^m: |{x : F(x + a) - F(x) = b}|.
struct DDT {
  DomainParams params;
  std::vector<std::uint32_t> counts;  // row-major, row a stored at (a - 1)

  u64 rows() const { return params.input_size() - 1; }
  u64 cols() const { return params.output_size(); }
  std::uint32_t at(u64 a, u64 b) const { return counts[(a - 1) * cols() + b]; }
};

/// One DDT row into `out` (length p^m, overwritten).
void ddt_row(const FuncTable& f, u64 a, std::span<std::uint32_t> out);

/// Full table; throws BudgetExceeded when (p^n - 1) p^m exceeds 2^max_log entries.
DDT ddt(const FuncTable& f, unsigned max_log = 28);

struct DiffSummary {
  u64 delta = 0;
  std::optional<u64> two_valued_at;  // v when every entry is in {0, v}
  std::optional<bool> apn;           // p = 2 and n = m only
  i128 sum_sq = 0;                   // sum over a != 0, b of DDT^2
  bool rows_sum_ok = true;
  bool entries_even = true;          // meaningful for p = 2
};

/// Row-parallel scan; rows are discarded after use.
DiffSummary diff_summary(const FuncTable& f);

struct FourthMoment {
  i128 value = 0;           // sum over b != 0, all a of |W(b,a)|^4
  i128 all_inclusive = 0;   // sum over all b, a
  bool walsh_checked = false;
  std::optional<bool> apn;  // value == (2^n - 1) 2^{3n+1}, for p = 2 and n = m
};

/// Differential side: sum_{all b,a} |W|^4 = p^{n+m} sum_{all c,d} |(D_c F)^{-1}(d)|^2.
/// With `walsh_check`, the Walsh side is computed too and compared (InternalError on mismatch).
FourthMoment fourth_moment(const FuncTable& f, bool walsh_check);
FourthMoment fourth_moment(const FuncTable& f, const DiffSummary& summary, bool walsh_check);

/// sum over all b, a of |W_F(b, a)|^4 from Walsh rows.
i128 walsh_fourth_moment(const FuncTable& f);

}  // namespace plateau
