#include "plateau/plateaued.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "plateau/parallel.hpp"
#include "plateau/walsh.hpp"

namespace plateau {

std::optional<unsigned> AmplitudeProfile::single_t() const {
  if (!all_plateaued() || t_histogram.size() != 1) return std::nullopt;
  return t_histogram.begin()->first;
}

std::optional<i128> AmplitudeProfile::linearity() const {
  if (!is_perfect_square(linearity_sq)) return std::nullopt;
  return isqrt(linearity_sq);
}

namespace {

// Plateau index of a squared modulus p^{n+t}, 0 <= t <= n.
std::optional<unsigned> plateau_index(i128 sq, std::uint32_t p, std::uint32_t n) {
  if (sq <= 0 || sq > static_cast<i128>(~u64{0})) return std::nullopt;
  unsigned e = 0;
  if (!is_power_of(static_cast<u64>(sq), p, &e) || e < n || e > 2 * n) return std::nullopt;
  return e - n;
}

struct RowScan {
  bool plateaued = true;
  i128 amp_sq = 0;  // the common nonzero squared modulus
  i128 max_sq = 0;
  u64 support = 0;

  void add(std::optional<i128> sq, bool nonzero) {
    if (!nonzero) return;
    ++support;
    if (!sq) {
      plateaued = false;
      return;
    }
    max_sq = std::max(max_sq, *sq);
    if (amp_sq == 0)
      amp_sq = *sq;
    else if (amp_sq != *sq)
      plateaued = false;
  }
};

ComponentInfo scan_component(const FuncTable& f, u64 b, std::vector<std::int32_t>& buf, i128& max_sq) {
  const auto& prm = f.params();
  const std::uint32_t p = prm.p;
  ComponentInfo info;
  std::vector<u64> residues(p, 0);
  for (auto v : f.values()) ++residues[detail::dot_digits(b, v, p)];
  const u64 share = prm.input_size() / p;
  info.balanced = std::all_of(residues.begin(), residues.end(), [&](u64 c) { return c == share; });

  RowScan scan;
  if (p == 2) {
    detail::binary_walsh_row(f, b, buf);
    info.w0 = CycInt::from_integer(2, buf[0]);
    for (auto v : buf) scan.add(static_cast<i128>(static_cast<i64>(v) * v), v != 0);
  } else {
    const WalshRow row = walsh_row(f, b);
    info.w0 = row.at(0);
    for (u64 a = 0; a < row.size(); ++a) {
      const CycInt w = row.at(a);
      if (w.is_zero()) continue;
      const auto sq = w.sq_modulus().as_integer();
      scan.add(sq ? std::optional<i128>(*sq) : std::nullopt, true);
    }
  }
  info.support = scan.support;
  max_sq = scan.max_sq;
  if (scan.plateaued) info.t = plateau_index(scan.amp_sq, p, prm.n);
  if (info.t) {
    const u64 expect = ipow(p, prm.n - *info.t);
    if (info.support != expect)
      throw InternalError("component_profile: support " + std::to_string(info.support) + " != p^{n-t} = " +
                          std::to_string(expect) + " at b=" + std::to_string(b));
  }
  return info;
}

}  // namespace

AmplitudeProfile component_profile(const FuncTable& f, unsigned max_log) {
  const auto& prm = f.params();
  if (index_bits(prm.p, prm.n) + index_bits(prm.p, prm.m) > max_log)
    throw BudgetExceeded("component_profile: p^{n+m} exceeds 2^" + std::to_string(max_log));
  AmplitudeProfile prof;
  prof.params = prm;
  const u64 q = prm.output_size();
  prof.components.resize(q - 1);
  std::vector<i128> max_sq(q - 1, 0);
  parallel_for(q - 1, worker_count(), [&](u64 lo, u64 hi, unsigned) {
    std::vector<std::int32_t> buf(prm.p == 2 ? f.size() : 0);
    for (u64 i = lo; i < hi; ++i) prof.components[i] = scan_component(f, i + 1, buf, max_sq[i]);
  });
  for (u64 i = 0; i + 1 < q; ++i) {
    const auto& c = prof.components[i];
    if (c.balanced) ++prof.balanced_count;
    if (c.t) {
      ++prof.plateaued_count;
      ++prof.t_histogram[*c.t];
      if (*c.t == 0) ++prof.bent_count;
    }
    prof.linearity_sq = std::max(prof.linearity_sq, max_sq[i]);
  }
  return prof;
}

std::optional<u64> dto1_degree(const PreimageDist& dist) {
  const auto& s = dist.sorted_sizes;
  if (s.empty()) return std::nullopt;
  if (s.back() == 1) return s.size() == dist.params.input_size() ? std::optional<u64>(1) : std::nullopt;
  if (s[0] != 1 || s.size() < 2 || s[1] == 1) return std::nullopt;
  const u64 d = s[1];
  if (s.back() != d) return std::nullopt;
  if ((dist.params.input_size() - 1) % d != 0) return std::nullopt;
  return d;
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

const char* plateau_gate(const AmplitudeProfile& prof, bool assume) {
  if (prof.all_plateaued()) return nullptr;
  if (assume) return nullptr;
  return "hypothesis: F is not plateaued (some component has more than one nonzero |W|)";
}

}  // namespace

Dto1Report dto1_check(const FuncTable& f, const AmplitudeProfile& prof, bool assume_plateaued) {
  const char* tag = "platdto1";
  const auto& prm = f.params();
  Dto1Report r;
  const auto dist = preimage_distribution(f);
  r.image_size = dist.image_size;
  r.d = dto1_degree(dist);
  r.n0 = prof.bent_count;
  r.linearity_sq = prof.linearity_sq;
  if (prm.n != prm.m) {
    r.verdict = Verdict::skipped(tag, "hypothesis: n != m");
    return r;
  }
  if (!r.d) {
    r.verdict = Verdict::skipped(tag, "hypothesis: F is not d-to-1");
    return r;
  }
  const u64 d = *r.d;
  if (d < 2 || (d == 2 && prm.p == 2)) {
    r.verdict = Verdict::skipped(tag, "hypothesis: d = " + std::to_string(d) + " is outside the theorem's range");
    return r;
  }
  if (const char* why = plateau_gate(prof, assume_plateaued)) {
    r.verdict = Verdict::skipped(tag, why);
    return r;
  }
  const u64 pn = prm.input_size();
  if (d * r.image_size != pn + d - 1)
    throw InternalError("dto1_check: image size does not match d-to-1 structure");
  std::vector<std::string> bad;
  if (d == 2) {
    if (r.n0 != pn - 1) bad.push_back("planar: only " + std::to_string(r.n0) + " of " + std::to_string(pn - 1) + " components bent");
    r.t = 0;
    r.verdict = bad.empty() ? Verdict::pass(tag, "2-to-1 and all " + std::to_string(pn - 1) + " components bent")
                            : Verdict::fail(tag, join(bad));
    return r;
  }
  unsigned t = 0;
  if (!is_power_of(d - 1, prm.p, &t) || t == 0) {
    bad.push_back("d - 1 = " + std::to_string(d - 1) + " is not a positive power of p");
  } else {
    r.t = t;
  }
  if (prm.n % 2 != 0) bad.push_back("n = " + std::to_string(prm.n) + " is odd");
  if (r.t && prm.n % 2 == 0 && (prm.n / 2) % t != 0)
    bad.push_back("t = " + std::to_string(t) + " does not divide n/2 = " + std::to_string(prm.n / 2));
  if (r.t) {
    auto it = prof.t_histogram.find(2 * t);
    r.n1 = 2 * t == 0 ? 0 : (it == prof.t_histogram.end() ? 0 : it->second);
    const u64 want_n1 = (pn - 1) / d;
    const u64 want_n0 = pn - 1 - want_n1;
    if (r.n0 != want_n0) bad.push_back("N0 = " + std::to_string(r.n0) + ", expected " + std::to_string(want_n0));
    if (r.n1 != want_n1) bad.push_back("N1 = " + std::to_string(r.n1) + ", expected " + std::to_string(want_n1));
    if (prm.n % 2 == 0) {
      const i128 want_lin = ipow128(prm.p, prm.n + 2 * t);
      if (r.linearity_sq != want_lin)
        bad.push_back("linearity^2 = " + to_string(r.linearity_sq) + ", expected " + to_string(want_lin));
    }
  }
  if (!prof.all_plateaued())
    bad.push_back(std::to_string(prof.components.size() - prof.plateaued_count) +
                  " components are not plateaued despite the assertion");
  std::ostringstream os;
  os << d << "-to-1, t=" << t << ", N0=" << r.n0 << ", N1=" << r.n1 << ", linearity^2=" << to_string(r.linearity_sq);
  r.verdict = bad.empty() ? Verdict::pass(tag, os.str()) : Verdict::fail(tag, join(bad));
  return r;
}

Dto1Report dto1_check(const FuncTable& f, bool assume_plateaued) {
  return dto1_check(f, component_profile(f), assume_plateaued);
}

Verdict walsh_integrality_check(const FuncTable& f, const AmplitudeProfile& prof, bool assume_plateaued) {
  const char* tag = "integrality";
  const auto& prm = f.params();
  if (prm.p == 2) return Verdict::skipped(tag, "hypothesis: p must be odd");
  if (prm.n != prm.m) return Verdict::skipped(tag, "hypothesis: n != m");
  const auto dist = preimage_distribution(f);
  const auto d = dto1_degree(dist);
  if (!d || *d <= 2) return Verdict::skipped(tag, "hypothesis: F is not d-to-1 with d > 2");
  if (const char* why = plateau_gate(prof, assume_plateaued)) return Verdict::skipped(tag, why);

  // Normalize so that 0 is the unique input with a singleton fiber and maps to 0.
  u64 beta = 0;
  while (dist.counts[beta] != 1) ++beta;
  u64 x0 = 0;
  while (f[x0] != beta) ++x0;
  std::vector<std::uint32_t> g(f.size());
  for (u64 x = 0; x < f.size(); ++x)
    g[x] = static_cast<std::uint32_t>(detail::sub_digits(f[detail::add_digits(x, x0, prm.p)], beta, prm.p));
  const ZeroColumn col = zero_column(FuncTable(prm, std::move(g)));
  const i64 dd = static_cast<i64>(*d);
  std::map<i64, u64> seen;
  for (u64 b = 1; b < col.size(); ++b) {
    const CycInt w = col.at(b);
    const auto v = w.as_integer();
    if (!v) return Verdict::fail(tag, "W(" + std::to_string(b) + ",0) = " + w.to_string() + " is not a rational integer");
    if ((*v - 1) % dd != 0)
      return Verdict::fail(tag, "W(" + std::to_string(b) + ",0) = " + std::to_string(*v) + " is not 1 mod " +
                                    std::to_string(dd));
    ++seen[*v];
  }
  std::ostringstream os;
  os << "all W(b,0) rational integers = 1 mod " << dd << ":";
  for (const auto& [v, c] : seen) os << " " << v << "x" << c;
  return Verdict::pass(tag, os.str());
}

Verdict walsh_integrality_check(const FuncTable& f, bool assume_plateaued) {
  return walsh_integrality_check(f, component_profile(f), assume_plateaued);
}

Verdict diff_two_valued_check(const FuncTable& f, const AmplitudeProfile& prof, const DiffSummary& diff,
                              bool assume_plateaued) {
  const char* tag = "diff-two-valued";
  const auto& prm = f.params();
  if (prm.n != prm.m) return Verdict::skipped(tag, "hypothesis: n != m");
  std::optional<unsigned> t;
  std::string which;
  const auto d = dto1_degree(preimage_distribution(f));
  unsigned td = 0;
  if ((prof.all_plateaued() || assume_plateaued) && d && *d > 2 && is_power_of(*d - 1, prm.p, &td) && td > 0) {
    t = td;
    which = "plateaued " + std::to_string(*d) + "-to-1";
  } else if (auto st = prof.single_t(); st && *st > 0) {
    t = *st;
    which = std::to_string(*st) + "-plateaued";
  }
  if (!t) return Verdict::skipped(tag, "hypothesis: neither plateaued (p^t+1)-to-1 nor single plateau index t > 0");
  const u64 pt = ipow(prm.p, *t);
  std::vector<std::string> bad;
  if (diff.delta < pt) bad.push_back("delta = " + std::to_string(diff.delta) + " < p^t = " + std::to_string(pt));
  const bool tight = diff.delta == pt;
  const bool two_valued = diff.two_valued_at && *diff.two_valued_at == pt;
  if (tight != two_valued)
    bad.push_back(std::string("delta == p^t is ") + (tight ? "true" : "false") + " but two-valued at p^t is " +
                  (two_valued ? "true" : "false"));
  std::ostringstream os;
  os << which << ", t=" << *t << ", delta=" << diff.delta << ", two-valued "
     << (diff.two_valued_at ? "at " + std::to_string(*diff.two_valued_at) : std::string("no"));
  return bad.empty() ? Verdict::pass(tag, os.str()) : Verdict::fail(tag, join(bad) + " (" + os.str() + ")");
}

namespace {

int distribution_type(const std::vector<u64>& s) {
  const std::size_t len = s.size();
  auto all3 = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i)
      if (s[i] != 3) return false;
    return true;
  };
  if (len >= 1 && s[0] == 1 && all3(1, len)) return 1;
  if (len >= 2 && s[0] == 2 && s[1] == 2 && all3(2, len)) return 2;
  if (len >= 4 && s[0] == 2 && s[1] == 2 && s[2] == 2 && all3(3, len - 1) && s[len - 1] == 4) return 3;
  return -1;
}

}  // namespace

ApnStructure apn_structure(const FuncTable& f, const AmplitudeProfile& prof, const DiffSummary& diff,
                           bool assume_plateaued) {
  const char* tag = "apn-structure";
  const auto& prm = f.params();
  ApnStructure s;
  s.bent_count = prof.bent_count;
  s.balanced_count = prof.balanced_count;
  const auto dist = preimage_distribution(f);
  s.imbalance = imbalance(dist, zero_column(f));
  if (prm.p != 2 || prm.n != prm.m || prm.n % 2 != 0) {
    s.verdict = Verdict::skipped(tag, "hypothesis: requires p = 2, n = m, n even");
    return s;
  }
  if (!diff.apn || !*diff.apn) {
    s.verdict = Verdict::skipped(tag, "hypothesis: F is not APN (delta = " + std::to_string(diff.delta) + ")");
    return s;
  }
  if (const char* why = plateau_gate(prof, assume_plateaued)) {
    s.verdict = Verdict::skipped(tag, why);
    return s;
  }
  const i128 pn = prm.input_size();
  const i128 nf = s.imbalance;
  const i128 bent = s.bent_count;
  const i128 bal = s.balanced_count;
  auto check = [&](std::string name, bool ok, std::string detail) {
    s.checks.push_back(ok ? Verdict::pass(tag + std::string("/") + name, std::move(detail))
                          : Verdict::fail(tag + std::string("/") + name, std::move(detail)));
  };
  auto q = [](i128 v) { return to_string(v); };

  check("imbalance-upper", nf <= 2 * pn - 2, "N_F = " + q(nf) + " <= " + q(2 * pn - 2));
  if (prof.all_plateaued()) {
    i128 sum = 0;
    for (const auto& c : prof.components) sum += ipow128(2, prm.n + *c.t);
    check("amplitude-sum", sum == 2 * pn * (pn - 1), "sum of squared amplitudes = " + q(sum) + ", expected " + q(2 * pn * (pn - 1)));
  } else {
    check("amplitude-sum", false,
          std::to_string(prof.components.size() - prof.plateaued_count) + " components are not plateaued");
  }
  check("bent-lower", 3 * bent >= 2 * (pn - 1), "B(F) = " + q(bent) + " >= 2(2^n-1)/3");
  check("imbalance-lower", 3 * nf >= 2 * (pn - 1), "N_F = " + q(nf) + " >= 2(2^n-1)/3");
  check("imbalance-upper-equality", (nf == 2 * pn - 2) == (bal == 0),
        "N_F at upper bound: " + std::string(nf == 2 * pn - 2 ? "yes" : "no") + ", balanced components: " + q(bal));
  const bool lower_eq = 3 * nf == 2 * (pn - 1);
  const bool lower_profile = 3 * bent == 2 * (pn - 1) && 3 * bal == pn - 1;
  check("imbalance-lower-equality", lower_eq == lower_profile,
        "N_F at lower bound: " + std::string(lower_eq ? "yes" : "no") + ", B(F) = " + q(bent) + ", balanced = " + q(bal));
  check("imbalance-mod4", nf % 4 == 2, "N_F = " + q(nf) + " = " + q(nf % 4) + " mod 4");
  if (bal > 0) check("balanced-imbalance", nf <= 2 * pn - 6, "balanced components present, N_F = " + q(nf) + " <= " + q(2 * pn - 6));
  check("bent-mod4", bent % 4 == 2, "B(F) = " + q(bent) + " = " + q(bent % 4) + " mod 4");
  const i128 img = dist.image_size;
  check("image-lower", 3 * img >= pn + 2, "|image| = " + q(img) + " >= (2^n+2)/3");
  s.min_image_attained = 3 * img == pn + 2;
  if (s.min_image_attained) {
    s.distribution_type = distribution_type(dist.sorted_sizes);
    check("distribution-type", s.distribution_type == 1 || s.distribution_type == 3,
          "minimum image with distribution type " +
              (s.distribution_type > 0 ? std::to_string(s.distribution_type) : std::string("other")));
    check("min-image-no-balanced", bal == 0, "minimum image, balanced components = " + q(bal));
  }
  const Status st = combine(s.checks);
  std::ostringstream os;
  os << "B(F)=" << s.bent_count << ", balanced=" << s.balanced_count << ", N_F=" << q(nf) << ", " << s.checks.size()
     << " checks";
  if (st == Status::Fail) {
    std::vector<std::string> bad;
    for (const auto& c : s.checks)
      if (c.status == Status::Fail) bad.push_back(c.tag + ": " + c.details);
    s.verdict = Verdict::fail(tag, join(bad));
  } else {
    s.verdict = Verdict::pass(tag, os.str());
  }
  return s;
}

ApnStructure apn_structure(const FuncTable& f, bool assume_plateaued) {
  return apn_structure(f, component_profile(f), diff_summary(f), assume_plateaued);
}

}  // namespace plateau
