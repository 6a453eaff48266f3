#include "plateau/differential.hpp"

#include <algorithm>

#include "plateau/cycint.hpp"
#include "plateau/distribution.hpp"
#include "plateau/parallel.hpp"
#include "plateau/walsh.hpp"

namespace plateau {

void ddt_row(const FuncTable& f, u64 a, std::span<std::uint32_t> out) {
  const std::uint32_t p = f.p();
  std::fill(out.begin(), out.end(), 0u);
  const auto v = f.values();
  if (p == 2) {
    for (u64 x = 0; x < v.size(); ++x) ++out[v[x ^ a] ^ v[x]];
    return;
  }
  for (u64 x = 0; x < v.size(); ++x) ++out[detail::sub_digits(v[detail::add_digits(x, a, p)], v[x], p)];
}

DDT ddt(const FuncTable& f, unsigned max_log) {
  const auto& prm = f.params();
  if (index_bits(prm.p, prm.n) + index_bits(prm.p, prm.m) > max_log)
    throw BudgetExceeded("ddt: table exceeds 2^" + std::to_string(max_log) + " entries");
  DDT t;
  t.params = prm;
  t.counts.assign(t.rows() * t.cols(), 0);
  const u64 cols = t.cols();
  parallel_for(t.rows(), worker_count(), [&](u64 lo, u64 hi, unsigned) {
    for (u64 r = lo; r < hi; ++r) ddt_row(f, r + 1, std::span<std::uint32_t>(t.counts.data() + r * cols, cols));
  });
  return t;
}

namespace {

struct RowStats {
  u64 delta = 0;
  u64 common = 0;  // nonzero value shared by all entries so far, 0 = none yet
  bool two_valued = true;
  i128 sum_sq = 0;
  bool rows_ok = true;
  bool even = true;

  void merge(const RowStats& o) {
    delta = std::max(delta, o.delta);
    if (o.common != 0) {
      if (common == 0)
        common = o.common;
      else if (common != o.common)
        two_valued = false;
    }
    two_valued = two_valued && o.two_valued;
    sum_sq += o.sum_sq;
    rows_ok = rows_ok && o.rows_ok;
    even = even && o.even;
  }
};

}  // namespace

DiffSummary diff_summary(const FuncTable& f) {
  const auto& prm = f.params();
  const u64 rows = prm.input_size() - 1;
  const u64 cols = prm.output_size();
  const unsigned workers = worker_count();
  std::vector<RowStats> partial(std::max(1u, workers));
  parallel_for(rows, workers, [&](u64 lo, u64 hi, unsigned w) {
    std::vector<std::uint32_t> row(cols);
    RowStats st;
    for (u64 r = lo; r < hi; ++r) {
      ddt_row(f, r + 1, row);
      u64 total = 0;
      for (auto c : row) {
        if (c == 0) continue;
        total += c;
        st.delta = std::max<u64>(st.delta, c);
        st.sum_sq += static_cast<i128>(c) * c;
        if (c & 1) st.even = false;
        if (st.common == 0)
          st.common = c;
        else if (st.common != c)
          st.two_valued = false;
      }
      if (total != prm.input_size()) st.rows_ok = false;
    }
    partial[w] = st;
  });
  RowStats all;
  for (const auto& st : partial) all.merge(st);
  DiffSummary s;
  s.delta = all.delta;
  if (all.two_valued && all.common != 0) s.two_valued_at = all.common;
  if (prm.p == 2 && prm.n == prm.m) s.apn = all.delta <= 2;
  s.sum_sq = all.sum_sq;
  s.rows_sum_ok = all.rows_ok;
  s.entries_even = all.even;
  if (!s.rows_sum_ok) throw InternalError("diff_summary: a DDT row does not sum to p^n");
  return s;
}

i128 walsh_fourth_moment(const FuncTable& f) {
  const auto& prm = f.params();
  const u64 q = prm.output_size();
  const unsigned workers = worker_count();
  std::vector<i128> partial(std::max(1u, workers), 0);
  parallel_for(q, workers, [&](u64 lo, u64 hi, unsigned w) {
    i128 acc = 0;
    if (prm.p == 2) {
      std::vector<std::int32_t> row(f.size());
      for (u64 b = lo; b < hi; ++b) {
        detail::binary_walsh_row(f, b, row);
        for (auto v : row) {
          const i128 s = static_cast<i128>(v) * v;
          acc += s * s;
        }
      }
    } else {
      CycInt sum(prm.p);
      for (u64 b = lo; b < hi; ++b) {
        const WalshRow row = walsh_row(f, b);
        for (u64 a = 0; a < row.size(); ++a) {
          const CycInt s = row.at(a).sq_modulus();
          sum += s * s;
        }
      }
      const auto exact = sum.as_integer();
      if (!exact) throw InternalError("walsh_fourth_moment: non-rational partial sum");
      acc = *exact;
    }
    partial[w] = acc;
  });
  i128 total = 0;
  for (auto v : partial) total += v;
  return total;
}

FourthMoment fourth_moment(const FuncTable& f, const DiffSummary& summary, bool walsh_check) {
  const auto& prm = f.params();
  const i128 pn = prm.input_size();
  if (4 * index_bits(prm.p, prm.n) + index_bits(prm.p, prm.m) > 125)
    throw BudgetExceeded("fourth_moment: p^{4n+m} does not fit in 128 bits");
  FourthMoment fm;
  // The c = 0 row contributes p^{2n}; the b = 0 Walsh row contributes p^{4n}.
  fm.all_inclusive = static_cast<i128>(pn) * prm.output_size() * (summary.sum_sq + pn * pn);
  fm.value = fm.all_inclusive - pn * pn * pn * pn;
  if (walsh_check) {
    const i128 w = walsh_fourth_moment(f);
    if (w != fm.all_inclusive)
      throw InternalError("fourth_moment: Walsh side " + to_string(w) + " != differential side " +
                          to_string(fm.all_inclusive));
    fm.walsh_checked = true;
  }
  if (prm.p == 2 && prm.n == prm.m) fm.apn = fm.value == (pn - 1) * 2 * pn * pn * pn;
  return fm;
}

FourthMoment fourth_moment(const FuncTable& f, bool walsh_check) {
  return fourth_moment(f, diff_summary(f), walsh_check);
}

}  // namespace plateau
