#pragma once

// Analysis reports, the theorem-check driver, and bulk dumps.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plateau/constructions.hpp"
#include "plateau/differential.hpp"
#include "plateau/verdict.hpp"

namespace plateau {

struct AnalysisOptions {
  bool all = false;               // profile, differential block and every verdict
  bool zero_column_only = false;  // distribution, imbalance, bounds and AB only
  bool ddt = false;               // differential summary and fourth moment
  unsigned max_table_log = 32;    // budget on log2(p^n * p^m) for the differential scan
  unsigned max_profile_log = 28;  // budget on log2(p^n * p^m) for the amplitude profile
  bool timing = false;            // adds wall-clock timings (breaks byte-identity)
  bool assume_plateaued = false;  // evaluate plateaued theorems even when the profile disagrees
};

struct AnalysisReport {
  nlohmann::json json;
  Status status = Status::Pass;  // Fail if any verdict fails
  bool budget_exceeded = false;

  /// 1 on a failed verdict, else 3 when a section hit its budget, else 0.
  int exit_code() const;
};

/// Integers that fit in int64 become JSON numbers, larger ones decimal strings.
nlohmann::json json_int(i128 v);
nlohmann::json to_json(const Verdict& v);

AnalysisReport run_analysis(const FuncTable& f, const AnalysisOptions& opt);

/// Tags accepted by check_theorem.
const std::vector<std::string>& theorem_tags();
/// Tags that take a construction instead of a function table.
bool theorem_needs_construction(const std::string& tag);

struct TheoremResult {
  Verdict verdict;
  std::vector<Verdict> parts;
  bool budget_exceeded = false;

  nlohmann::json to_json() const;
  int exit_code() const;
};

/// platdto1, ab-walsh, apn-structure, integrality, diff-two-valued.
TheoremResult check_theorem(const std::string& tag, const FuncTable& f, const AnalysisOptions& opt);
/// gold, mm1, mm2.
TheoremResult check_construction(const std::string& tag, const Construction& c, const AnalysisOptions& opt);

/// Lines "b a v" (p = 2) or "b a c_0 ... c_{p-2}" in b-major order; one row if `row` is set.
void write_spectrum(std::ostream& out, const FuncTable& f, std::optional<u64> row = std::nullopt);
/// Lines "b v" or "b c_0 ... c_{p-2}".
void write_zero_column(std::ostream& out, const FuncTable& f);
/// Long CSV "a,b,count", a-major.
void write_ddt_csv(std::ostream& out, const DDT& t);

}  // namespace plateau
