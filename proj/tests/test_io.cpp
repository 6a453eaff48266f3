#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "helpers.hpp"
#include "plateau/distribution.hpp"
#include "plateau/dsl.hpp"
#include "plateau/io.hpp"
#include "plateau/random.hpp"
#include "plateau/report.hpp"

using namespace plateau;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("plateau_io_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

FuncTable swap_values(const FuncTable& f, u64 x, u64 y) {
  std::vector<std::uint32_t> v(f.values().begin(), f.values().end());
  std::swap(v[x], v[y]);
  return FuncTable(f.params(), v);
}

std::size_t parse_error_line(std::string_view text) {
  try {
    parse_function_text(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("text and binary round trips") {
  struct Case {
    std::uint32_t p, n, m;
  };
  for (auto c : {Case{2, 4, 4}, Case{2, 6, 8}, Case{3, 3, 7}, Case{2, 3, 17}, Case{5, 2, 3}, Case{7, 1, 10}}) {
    for (u64 seed = 0; seed < 5; ++seed) {
      const FuncTable f = random_function({c.p, c.n, c.m}, seed);
      CHECK(parse_function_text(emit_text(f)) == f);
      const auto bin = emit_binary(f);
      CHECK(parse_function_binary(bin) == f);
      CHECK(parse_function_bytes(bin) == f);
      const std::string txt = emit_text(f);
      CHECK(parse_function_bytes(std::vector<unsigned char>(txt.begin(), txt.end())) == f);
    }
  }
  const auto bin1 = emit_binary(random_function({2, 4, 8}, 1));
  CHECK(bin1.size() == 5 + 12 + 16);
  const auto bin2 = emit_binary(random_function({2, 4, 9}, 1));
  CHECK(bin2.size() == 5 + 12 + 32);
  const auto bin4 = emit_binary(random_function({2, 4, 17}, 1));
  CHECK(bin4.size() == 5 + 12 + 64);
  CHECK(std::string(bin1.begin(), bin1.begin() + 5) == "PLTB1");
}

TEST_CASE("files on disk") {
  const fs::path dir = scratch_dir();
  const FuncTable f = random_function({3, 3, 2}, 4);
  write_function_file((dir / "f.tt").string(), f, false);
  write_function_file((dir / "f.bin").string(), f, true);
  CHECK(parse_function_file((dir / "f.tt").string()) == f);
  CHECK(parse_function_file((dir / "f.bin").string()) == f);
  CHECK_THROWS(parse_function_file((dir / "missing.tt").string()));
  fs::remove_all(dir);
}

TEST_CASE("text parsing details and errors") {
  const FuncTable f = parse_function_text("# a comment\n2 2 1  # header\n0 1\n1 # trailing\n0\n");
  CHECK(f.params() == DomainParams(2, 2, 1));
  CHECK(std::vector<std::uint32_t>(f.values().begin(), f.values().end()) == std::vector<std::uint32_t>{0, 1, 1, 0});
  CHECK(parse_error_line("2 2 1\n0 1 2 0\n") == 2);
  CHECK(parse_error_line("2 2 1\n0 1\n1\n") == 3);
  CHECK(parse_error_line("2 2 1\n0 1 1 0 1\n") == 2);
  CHECK(parse_error_line("4 2 1\n0 1 1 0\n") == 1);
  CHECK(parse_error_line("2 2\n") == 1);
  CHECK(parse_error_line("2 2 1\n0 x 1 0\n") == 2);
  CHECK(parse_error_line("") == 1);
  CHECK_THROWS_AS(parse_function_text("2 40 1\n"), ParseError);
}

TEST_CASE("binary parsing errors") {
  auto bin = emit_binary(random_function({2, 4, 4}, 2));
  auto bad = bin;
  bad[0] = 'X';
  CHECK_THROWS_AS(parse_function_binary(bad), ParseError);
  bad = bin;
  bad.pop_back();
  CHECK_THROWS_AS(parse_function_binary(bad), ParseError);
  bad = bin;
  bad.push_back(0);
  CHECK_THROWS_AS(parse_function_binary(bad), ParseError);
  bad = bin;
  bad.back() = 16;
  try {
    parse_function_binary(bad);
    FAIL("accepted an out-of-range entry");
  } catch (const ParseError& e) {
    CHECK(e.offset() == bad.size() - 1);
  }
  bad = bin;
  bad[5] = 4;  // p = 4 is not prime
  CHECK_THROWS_AS(parse_function_binary(bad), ParseError);
}

TEST_CASE("matrix text") {
  const MatrixFp m = parse_matrix_text("3 2 3\n1 2 0\n0 1 1\n");
  CHECK(m == MatrixFp(3, {{1, 2, 0}, {0, 1, 1}}));
  CHECK(parse_matrix_text(emit_matrix(m)) == m);
  CHECK_THROWS(parse_matrix_text("3 2 3\n1 2 0\n0 1\n"));
  CHECK_THROWS(parse_matrix_text("3 1 2\n1 3\n"));
}

TEST_CASE("construction specs") {
  CHECK(build_construction("monomial p=2 n=4 d=3").table == testing::power_map(2, 4, 3));
  const Construction alt = build_construction("monomial p=2 n=4 d=3 modulus=1,0,0,1,1");
  CHECK(alt.table == monomial(FieldCtx(2, 4, {1, 0, 0, 1, 1}), 3).table);
  CHECK_FALSE(alt.table == testing::power_map(2, 4, 3));
  CHECK(build_construction("gold-trace n=6 r=1").table == gold_trace(FieldCtx::standard(2, 6), 1).table);
  CHECK_THROWS_AS(build_construction("gold-trace n=6 r=2"), HypothesisError);
  CHECK_FALSE(build_construction("gold-trace n=6 r=2", true).hypotheses_hold);

  const Construction mm1 = build_construction("mm1 m=2 pi=0,0,1,1 phi=0,0,0,0");
  CHECK(check_expectation(mm1, "mm1").status == Status::Pass);
  CHECK(preimage_distribution(mm1.table).counts[0] == 10);
  const Construction mm2 = build_construction("mm2 m=2 i=1 pi=0,1,2,3");
  CHECK(preimage_distribution(mm2.table).counts[0] == 7);
  CHECK_THROWS_AS(build_construction("mm2 m=2 i=2 pi=0,1,2,3"), HypothesisError);

  const fs::path dir = scratch_dir();
  write_function_file((dir / "g.tt").string(), gold_trace(FieldCtx::standard(2, 6), 1).table, false);
  write_text(dir / "l.txt", "2 2 3\n1 0 0\n0 1 0\n");
  write_function_file((dir / "pi.tt").string(), FuncTable({2, 2, 2}, {0, 0, 1, 1}), true);
  write_function_file((dir / "phi.tt").string(), FuncTable({2, 2, 2}, {0, 1, 2, 3}), false);
  const Construction c1 = build_construction("compose L=@l.txt F=@g.tt", false, dir.string());
  const Construction c2 = build_construction("compose L=1,0,0;0,1,0 F=@" + (dir / "g.tt").string());
  CHECK(c1.table == c2.table);
  CHECK(c1.table.params() == DomainParams(2, 6, 2));
  const Construction c3 = build_construction("mm1 m=2 pi=@pi.tt phi=@phi.tt", false, dir.string());
  CHECK(check_expectation(c3, "mm1").status == Status::Pass);
  CHECK_THROWS_AS(build_construction("mm1 m=3 pi=@pi.tt phi=@phi.tt", false, dir.string()), std::invalid_argument);
  fs::remove_all(dir);

  CHECK_THROWS_AS(build_construction(""), std::invalid_argument);
  CHECK_THROWS_AS(build_construction("cubic p=2 n=4"), std::invalid_argument);
  CHECK_THROWS_AS(build_construction("monomial p=2 n=4"), std::invalid_argument);
  CHECK_THROWS_AS(build_construction("monomial p=2 n=4 d=3 e=1"), std::invalid_argument);
  CHECK_THROWS_AS(build_construction("monomial p=2 n=4 d=3 d=5"), std::invalid_argument);
  CHECK_THROWS_AS(build_construction("monomial p=2 n=4 d=-3"), std::invalid_argument);
  CHECK_THROWS_AS(build_construction("monomial p=2 n=4 d3"), std::invalid_argument);
  CHECK_THROWS_AS(build_construction("monomial p=4 n=2 d=3"), std::invalid_argument);
  CHECK_THROWS_AS(build_construction("mm1 m=2 pi=0,0,1 phi=0,0,0,0"), std::invalid_argument);
  CHECK_THROWS_AS(build_construction("mm1 m=2 pi=0,0,1,x phi=0,0,0,0"), std::invalid_argument);
}

TEST_CASE("analysis report for x^3 on F16") {
  AnalysisOptions opt;
  opt.all = true;
  const AnalysisReport r = run_analysis(testing::power_map(2, 4, 3), opt);
  const auto& j = r.json;
  CHECK(j["imbalance"] == 30);
  CHECK(j["xi_radicand"] == 100);
  CHECK(j["xi_denominator"] == 6);
  CHECK(j["ab_type"] == "-");
  CHECK(j["ab_witness"] == 0);
  CHECK(j["image_size"] == 6);
  CHECK(j["image_lower_bound"] == 6);
  CHECK(j["differential"]["apn"] == true);
  CHECK(j["differential"]["fourth_moment"] == 122880);
  CHECK(j["profile"]["bent_count"] == 10);
  CHECK(j["apn_structure"]["distribution_type"] == 1);
  CHECK(j["status"] == "pass");
  CHECK(r.exit_code() == 0);
  CHECK_FALSE(j.contains("timing_ms"));
  // byte-identical reruns
  CHECK(run_analysis(testing::power_map(2, 4, 3), opt).json.dump() == j.dump());
  for (const auto& v : j["verdicts"]) CHECK(v["status"] != "fail");
}

TEST_CASE("analysis report for x^3 on F64") {
  AnalysisOptions opt;
  opt.all = true;
  const auto j = run_analysis(testing::power_map(2, 6, 3), opt).json;
  CHECK(j["imbalance"] == 126);
  CHECK(j["ab_type"] == "-");
  CHECK(j["differential"]["apn"] == true);
  CHECK(j["profile"]["bent_count"] == 42);
  CHECK(j["apn_structure"]["distribution_type"] == 1);
}

TEST_CASE("analysis sections and budgets") {
  AnalysisOptions zc;
  zc.zero_column_only = true;
  const auto j = run_analysis(random_function({2, 10, 10}, 1), zc).json;
  CHECK(j.contains("imbalance"));
  CHECK(j["profile"]["status"] == "skipped");
  CHECK(j["differential"]["status"] == "skipped");

  AnalysisOptions tight;
  tight.max_profile_log = 6;
  const AnalysisReport r = run_analysis(testing::power_map(2, 4, 3), tight);
  CHECK(r.budget_exceeded);
  CHECK(r.exit_code() == 3);
  CHECK(r.json["status"] == "partial");

  AnalysisOptions timed;
  timed.timing = true;
  CHECK(run_analysis(testing::power_map(2, 4, 3), timed).json.contains("timing_ms"));
}

TEST_CASE("negative control: swapped cube values") {
  const FuncTable f = swap_values(testing::power_map(2, 4, 3), 1, 2);
  AnalysisOptions opt;
  TheoremResult t = check_theorem("platdto1", f, opt);
  CHECK(t.verdict.status == Status::Skipped);
  CHECK(t.exit_code() == 3);
  opt.assume_plateaued = true;
  t = check_theorem("platdto1", f, opt);
  CHECK(t.verdict.status == Status::Fail);
  CHECK(t.exit_code() == 1);
  opt.all = true;
  CHECK(run_analysis(f, opt).exit_code() == 1);
}

TEST_CASE("theorem checks") {
  AnalysisOptions opt;
  CHECK(check_theorem("platdto1", testing::power_map(2, 8, 5), opt).exit_code() == 0);
  CHECK(check_theorem("integrality", testing::power_map(3, 4, 4), opt).exit_code() == 0);
  CHECK(check_theorem("apn-structure", testing::power_map(2, 6, 3), opt).exit_code() == 0);
  CHECK(check_theorem("diff-two-valued", testing::power_map(2, 8, 5), opt).exit_code() == 0);
  CHECK(check_theorem("ab-walsh", gold_trace(FieldCtx::standard(2, 6), 1).table, opt).exit_code() == 0);
  CHECK(check_theorem("ab-walsh", testing::identity_map(2, 4), opt).exit_code() == 3);
  CHECK_THROWS_AS(check_theorem("nonsense", testing::identity_map(2, 4), opt), std::invalid_argument);
  CHECK(check_construction("gold", gold_trace(FieldCtx::standard(2, 6), 1), opt).exit_code() == 0);
  CHECK(check_construction("gold", gold_trace(FieldCtx::standard(2, 8), 2), opt).exit_code() == 1);
  CHECK(check_construction("gold", gold_trace(FieldCtx::standard(2, 6), 2, true), opt).exit_code() == 3);
  CHECK(check_construction("mm2", build_construction("mm2 m=3 i=1 pi=0,1,2,3,4,5,6,7"), opt).exit_code() == 0);
  CHECK(check_construction("mm1", build_construction("mm1 m=2 pi=0,0,1,1 phi=0,1,2,3"), opt).exit_code() == 0);
  const auto& tags = theorem_tags();
  CHECK(std::find(tags.begin(), tags.end(), "platdto1") != tags.end());
  CHECK(theorem_needs_construction("gold"));
  CHECK_FALSE(theorem_needs_construction("platdto1"));
}

TEST_CASE("dump formats") {
  const FuncTable f = testing::power_map(2, 2, 3);
  std::ostringstream spec, col, csv;
  write_spectrum(spec, f, 1);
  write_zero_column(col, f);
  write_ddt_csv(csv, ddt(f));
  // x^3 on F_4 sends 0 to 0 and every other element to 1
  CHECK(spec.str() == "1 0 -2\n1 1 2\n1 2 2\n1 3 2\n");
  CHECK(col.str() == "0 4\n1 -2\n2 4\n3 -2\n");
  CHECK(csv.str().rfind("a,b,count\n1,", 0) == 0);
  std::ostringstream odd;
  write_zero_column(odd, FuncTable({3, 1, 1}, {0, 1, 1}));
  // 1 + 2 zeta and 1 + 2 zeta^2 = -1 - 2 zeta
  CHECK(odd.str() == "0 3 0\n1 1 2\n2 -1 -2\n");
  CHECK_THROWS(write_spectrum(spec, f, 4));
}

TEST_CASE("json integers beyond 64 bits become strings") {
  CHECK(json_int(5) == 5);
  CHECK(json_int(static_cast<i128>(1) << 70) == "1180591620717411303424");
}
