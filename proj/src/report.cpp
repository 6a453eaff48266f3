#include "plateau/report.hpp"

#include <chrono>
#include <limits>
#include <ostream>

#include "plateau/distribution.hpp"
#include "plateau/plateaued.hpp"
#include "plateau/walsh.hpp"

namespace plateau {

using nlohmann::json;

json json_int(i128 v) {
  if (v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max()) return static_cast<i64>(v);
  return to_string(v);
}

json to_json(const Verdict& v) { return {{"tag", v.tag}, {"status", std::string(to_string(v.status))}, {"details", v.details}}; }

int AnalysisReport::exit_code() const {
  if (status == Status::Fail) return 1;
  return budget_exceeded ? 3 : 0;
}

namespace {

json interval_json(const RadicalInterval& r) {
  return {{"center", json_int(r.center)},
          {"radicand", json_int(r.radicand)},
          {"denominator", json_int(r.denominator)},
          {"lo", json_int(r.lo_int())},
          {"hi", json_int(r.hi_int())}};
}

json skipped_section(const std::string& reason) { return {{"status", "skipped"}, {"reason", reason}}; }

json profile_json(const AmplitudeProfile& prof) {
  json hist = json::array();
  for (const auto& [t, c] : prof.t_histogram) hist.push_back({t, c});
  json j = {{"bent_count", prof.bent_count},
            {"balanced_count", prof.balanced_count},
            {"plateaued_count", prof.plateaued_count},
            {"component_count", prof.components.size()},
            {"all_plateaued", prof.all_plateaued()},
            {"t_histogram", hist},
            {"linearity_sq", json_int(prof.linearity_sq)}};
  const auto st = prof.single_t();
  j["single_t"] = st ? json(*st) : json(nullptr);
  const auto lin = prof.linearity();
  j["linearity"] = lin ? json_int(*lin) : json(nullptr);
  return j;
}

json diff_json(const DiffSummary& d, const FourthMoment& fm) {
  json j = {{"delta", d.delta},
            {"ddt_sum_sq", json_int(d.sum_sq)},
            {"entries_even", d.entries_even},
            {"fourth_moment", json_int(fm.value)},
            {"fourth_moment_all", json_int(fm.all_inclusive)},
            {"fourth_moment_walsh_checked", fm.walsh_checked}};
  j["two_valued_at"] = d.two_valued_at ? json(*d.two_valued_at) : json(nullptr);
  j["apn"] = d.apn ? json(*d.apn) : json(nullptr);
  j["fourth_moment_apn"] = fm.apn ? json(*fm.apn) : json(nullptr);
  return j;
}

class Stopwatch {
 public:
  explicit Stopwatch(json* sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  void lap(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    if (sink_) (*sink_)[name] = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
  }

 private:
  json* sink_;
  std::chrono::steady_clock::time_point start_;
};

Verdict bounds_verdict(const PreimageDist& dist, const PreimageBounds& b) {
  for (u64 s : dist.sorted_sizes) {
    if (!b.image_aware.contains(s))
      return Verdict::fail("preimage-bounds", "size " + std::to_string(s) + " outside the image-aware interval");
    if (!b.image_free.contains(s))
      return Verdict::fail("preimage-bounds", "size " + std::to_string(s) + " outside the image-free interval");
  }
  return Verdict::pass("preimage-bounds", "all " + std::to_string(dist.image_size) + " nonzero sizes inside both intervals");
}

Verdict image_bound_verdict(const PreimageDist& dist, u64 lower) {
  const std::string msg = "bound " + std::to_string(lower) + ", image size " + std::to_string(dist.image_size);
  return lower <= dist.image_size ? Verdict::pass("image-lower-bound", msg) : Verdict::fail("image-lower-bound", msg);
}

}  // namespace

AnalysisReport run_analysis(const FuncTable& f, const AnalysisOptions& opt) {
  const auto& prm = f.params();
  AnalysisReport rep;
  json& j = rep.json;
  json timing = json::object();
  Stopwatch clock(opt.timing ? &timing : nullptr);
  std::vector<Verdict> verdicts;

  j["params"] = {{"p", prm.p}, {"n", prm.n}, {"m", prm.m}};
  const auto dist = preimage_distribution(f);
  const ZeroColumn column = zero_column(f);
  const i128 nf = imbalance(dist, column);
  const XiDefect xi = xi_defect(dist, nf);
  const PreimageBounds bounds = preimage_bounds(dist, nf);
  const ABClass ab = classify_almost_balanced(dist, xi);
  const SurjectivityCertificate surj = surjectivity_certificate(dist, nf);
  const u64 lower = image_lower_bound(prm, nf);
  clock.lap("zero_column");

  json hist = json::array();
  for (const auto& [size, count] : dist.histogram()) hist.push_back({size, count});
  j["image_size"] = dist.image_size;
  j["preimage_histogram"] = hist;
  j["imbalance"] = json_int(nf);
  j["xi_radicand"] = json_int(xi.radicand);
  j["xi_denominator"] = xi.denominator;
  if (auto r = xi.rational())
    j["xi_rational"] = {json_int(r->first), json_int(r->second)};
  else
    j["xi_rational"] = nullptr;
  j["bounds"] = {{"image_aware", interval_json(bounds.image_aware)}, {"image_free", interval_json(bounds.image_free)}};
  j["ab_type"] = std::string(to_string(ab.kind));
  j["ab_witness"] = ab.witness ? json(*ab.witness) : json(nullptr);
  json wit = json::array();
  for (const auto& w : ab.witnesses) wit.push_back({{"value", w.value}, {"type", std::string(to_string(w.kind))}, {"size", w.size}});
  j["ab_witnesses"] = wit;
  j["ab_rider_holds"] = ab.rider_holds;
  j["surjectivity"] = {{"guaranteed", surj.guaranteed}, {"surjective", surj.surjective}};
  j["image_lower_bound"] = lower;

  verdicts.push_back(bounds_verdict(dist, bounds));
  verdicts.push_back(image_bound_verdict(dist, lower));
  verdicts.push_back(ab_walsh_consequences(f, ab, nf));
  clock.lap("ab_walsh");

  const unsigned work_log = index_bits(prm.p, prm.n) + index_bits(prm.p, prm.m);
  std::optional<AmplitudeProfile> prof;
  if (opt.zero_column_only) {
    j["profile"] = skipped_section("zero-column-only");
  } else if (work_log > opt.max_profile_log) {
    j["profile"] = skipped_section("budget: log2(p^(n+m)) = " + std::to_string(work_log) + " > " +
                                   std::to_string(opt.max_profile_log));
    rep.budget_exceeded = true;
  } else {
    prof = component_profile(f, opt.max_profile_log);
    j["profile"] = profile_json(*prof);
    clock.lap("profile");
  }

  std::optional<DiffSummary> diff;
  if (opt.zero_column_only || !(opt.ddt || opt.all)) {
    j["differential"] = skipped_section(opt.zero_column_only ? "zero-column-only" : "not requested");
  } else if (work_log > opt.max_table_log) {
    j["differential"] = skipped_section("budget: log2(p^(n+m)) = " + std::to_string(work_log) + " > " +
                                        std::to_string(opt.max_table_log));
    rep.budget_exceeded = true;
  } else {
    diff = diff_summary(f);
    const FourthMoment fm = fourth_moment(f, *diff, opt.all && prof.has_value());
    j["differential"] = diff_json(*diff, fm);
    clock.lap("differential");
  }

  if (prof) {
    const Dto1Report d = dto1_check(f, *prof, opt.assume_plateaued);
    j["dto1"] = {{"d", d.d ? json(*d.d) : json(nullptr)},
                 {"t", d.t ? json(*d.t) : json(nullptr)},
                 {"n0", d.n0},
                 {"n1", d.n1}};
    verdicts.push_back(d.verdict);
    verdicts.push_back(walsh_integrality_check(f, *prof, opt.assume_plateaued));
  }
  if (prof && diff) {
    verdicts.push_back(diff_two_valued_check(f, *prof, *diff, opt.assume_plateaued));
    const ApnStructure s = apn_structure(f, *prof, *diff, opt.assume_plateaued);
    json checks = json::array();
    for (const auto& c : s.checks) checks.push_back(to_json(c));
    j["apn_structure"] = {{"bent_count", s.bent_count},
                          {"balanced_count", s.balanced_count},
                          {"imbalance", json_int(s.imbalance)},
                          {"min_image_attained", s.min_image_attained},
                          {"distribution_type", s.distribution_type},
                          {"checks", checks}};
    verdicts.push_back(s.verdict);
  }
  clock.lap("verdicts");

  json vj = json::array();
  for (const auto& v : verdicts) vj.push_back(to_json(v));
  j["verdicts"] = vj;
  rep.status = combine(verdicts) == Status::Fail ? Status::Fail : Status::Pass;
  j["status"] = rep.status == Status::Fail ? "fail" : (rep.budget_exceeded ? "partial" : "pass");
  if (opt.timing) j["timing_ms"] = timing;
  return rep;
}

const std::vector<std::string>& theorem_tags() {
  static const std::vector<std::string> tags = {"platdto1",        "ab-walsh", "apn-structure", "integrality",
                                                "diff-two-valued", "gold",     "mm1",           "mm2"};
  return tags;
}

bool theorem_needs_construction(const std::string& tag) { return tag == "gold" || tag == "mm1" || tag == "mm2"; }

json TheoremResult::to_json() const {
  json parts_json = json::array();
  for (const auto& p : parts) parts_json.push_back(plateau::to_json(p));
  json j = plateau::to_json(verdict);
  j["parts"] = parts_json;
  return j;
}

int TheoremResult::exit_code() const { return plateau::exit_code(verdict.status); }

namespace {

std::optional<AmplitudeProfile> budgeted_profile(const FuncTable& f, const AnalysisOptions& opt, TheoremResult& r,
                                                 const std::string& tag) {
  try {
    return component_profile(f, opt.max_profile_log);
  } catch (const BudgetExceeded& e) {
    r.verdict = Verdict::skipped(tag, std::string("budget: ") + e.what());
    r.budget_exceeded = true;
    return std::nullopt;
  }
}

}  // namespace

TheoremResult check_theorem(const std::string& tag, const FuncTable& f, const AnalysisOptions& opt) {
  TheoremResult r;
  if (tag == "ab-walsh") {
    r.verdict = ab_walsh_consequences(f);
    return r;
  }
  if (tag != "platdto1" && tag != "integrality" && tag != "diff-two-valued" && tag != "apn-structure")
    throw std::invalid_argument("check-theorem: tag '" + tag + "' needs --construct or is unknown");
  const auto prof = budgeted_profile(f, opt, r, tag);
  if (!prof) return r;
  if (tag == "platdto1") {
    r.verdict = dto1_check(f, *prof, opt.assume_plateaued).verdict;
  } else if (tag == "integrality") {
    r.verdict = walsh_integrality_check(f, *prof, opt.assume_plateaued);
  } else {
    const DiffSummary diff = diff_summary(f);
    if (tag == "diff-two-valued") {
      r.verdict = diff_two_valued_check(f, *prof, diff, opt.assume_plateaued);
    } else {
      ApnStructure s = apn_structure(f, *prof, diff, opt.assume_plateaued);
      r.verdict = s.verdict;
      r.parts = std::move(s.checks);
    }
  }
  return r;
}

TheoremResult check_construction(const std::string& tag, const Construction& c, const AnalysisOptions& opt) {
  TheoremResult r;
  const std::string want = tag == "gold" ? "gold-trace" : tag;
  if (c.kind != want) {
    r.verdict = Verdict::skipped(tag, "construction is '" + c.kind + "', expected '" + want + "'");
    return r;
  }
  if (!c.hypotheses_hold) {
    r.verdict = Verdict::skipped(tag, "hypothesis: " + c.hypothesis_note);
    return r;
  }
  const auto& prm = c.table.params();
  if (c.expected && c.expected->single_t &&
      index_bits(prm.p, prm.n) + index_bits(prm.p, prm.m) > opt.max_profile_log) {
    r.verdict = Verdict::skipped(tag, "budget: amplitude profile too large");
    r.budget_exceeded = true;
    return r;
  }
  r.parts.push_back(check_expectation(c, tag + "/distribution"));
  if (tag == "gold" && c.expected) {
    const auto dist = preimage_distribution(c.table);
    const i128 nf = imbalance(dist, zero_column(c.table));
    const ABClass ab = classify_almost_balanced(dist, xi_defect(dist, nf));
    const bool ok = ab.kind == ABKind::TypePlus && ab.witness && *ab.witness == 0 && dist.surjective();
    r.parts.push_back(ok ? Verdict::pass(tag + "/ab-type", "surjective, type + with witness 0")
                         : Verdict::fail(tag + "/ab-type", "expected surjective type + with witness 0, got type " +
                                                               std::string(to_string(ab.kind)) +
                                                               (dist.surjective() ? "" : ", not surjective")));
    Verdict w = ab_walsh_consequences(c.table, ab, nf);
    w.tag = tag + "/" + w.tag;
    if (w.status == Status::Skipped) w = Verdict::fail(w.tag, "AB Walsh consequences not applicable: " + w.details);
    r.parts.push_back(w);
  }
  const Status st = combine(r.parts);
  std::string details;
  for (const auto& p : r.parts)
    if (p.status == st || st == Status::Pass) details += (details.empty() ? "" : "; ") + p.tag + ": " + p.details;
  r.verdict = {tag, st, details};
  return r;
}

void write_spectrum(std::ostream& out, const FuncTable& f, std::optional<u64> row) {
  const u64 q = f.params().output_size();
  const u64 first = row ? *row : 0;
  const u64 last = row ? *row + 1 : q;
  if (first >= q) throw std::out_of_range("spectrum: row out of range");
  for (u64 b = first; b < last; ++b) {
    const WalshRow w = walsh_row(f, b);
    for (u64 a = 0; a < w.size(); ++a) {
      out << b << ' ' << a;
      for (std::uint32_t k = 0; k < w.stride; ++k) out << ' ' << w.data[a * w.stride + k];
      out << '\n';
    }
  }
}

void write_zero_column(std::ostream& out, const FuncTable& f) {
  const ZeroColumn col = zero_column(f);
  for (u64 b = 0; b < col.size(); ++b) {
    out << b;
    for (std::uint32_t k = 0; k < col.stride; ++k) out << ' ' << col.data[b * col.stride + k];
    out << '\n';
  }
}

void write_ddt_csv(std::ostream& out, const DDT& t) {
  out << "a,b,count\n";
  for (u64 a = 1; a <= t.rows(); ++a)
    for (u64 b = 0; b < t.cols(); ++b) out << a << ',' << b << ',' << t.at(a, b) << '\n';
}

}  // namespace plateau
