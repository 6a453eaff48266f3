#include "plateau/dsl.hpp"

#include <charconv>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "plateau/io.hpp"

namespace plateau {

namespace {

struct Spec {
  std::string kind;
  std::map<std::string, std::string> args;
  std::string base_dir;

  bool has(const std::string& key) const { return args.count(key) != 0; }

  const std::string& get(const std::string& key) const {
    auto it = args.find(key);
    if (it == args.end()) throw std::invalid_argument(kind + ": missing argument '" + key + "'");
    return it->second;
  }

  u64 number(const std::string& key) const {
    const std::string& s = get(key);
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw std::invalid_argument(kind + ": '" + key + "' must be a nonnegative integer, got '" + s + "'");
    return v;
  }

  std::uint32_t small(const std::string& key) const {
    const u64 v = number(key);
    if (v > 64) throw std::invalid_argument(kind + ": '" + key + "' is too large");
    return static_cast<std::uint32_t>(v);
  }

  std::string path(const std::string& value) const {
    std::filesystem::path p(value.substr(1));
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    return p.string();
  }

  void allow(std::set<std::string> keys) const {
    for (const auto& [k, v] : args)
      if (!keys.count(k)) throw std::invalid_argument(kind + ": unknown argument '" + k + "'");
  }
};

Spec tokenize(std::string_view text, const std::string& base_dir) {
  std::istringstream in{std::string(text)};
  Spec s;
  s.base_dir = base_dir;
  if (!(in >> s.kind)) throw std::invalid_argument("empty construction spec");
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument(s.kind + ": expected key=value, got '" + tok + "'");
    if (!s.args.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second)
      throw std::invalid_argument(s.kind + ": duplicate argument '" + tok.substr(0, eq) + "'");
  }
  return s;
}

std::vector<std::uint32_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + comma, v);
    if (ec != std::errc() || ptr != text.data() + comma)
      throw std::invalid_argument(what + ": bad list entry '" + text.substr(pos, comma - pos) + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

// A table on F_{2^m} from '@file' (function file with p = 2, n = m = deg) or an inline list.
std::vector<std::uint32_t> field_table(const Spec& s, const std::string& key, const FieldCtx& ctx) {
  const std::string& v = s.get(key);
  if (!v.empty() && v[0] == '@') {
    const FuncTable t = parse_function_file(s.path(v));
    if (t.p() != ctx.p() || t.n() != ctx.deg() || t.m() != ctx.deg())
      throw std::invalid_argument(s.kind + ": '" + key + "' must be a table " + std::to_string(ctx.p()) + " " +
                                  std::to_string(ctx.deg()) + " " + std::to_string(ctx.deg()));
    return {t.values().begin(), t.values().end()};
  }
  return parse_list(v, s.kind + " " + key);
}

FieldCtx field(const Spec& s, std::uint32_t p, std::uint32_t deg) {
  if (!s.has("modulus")) return FieldCtx::standard(p, deg);
  return FieldCtx(p, deg, parse_list(s.get("modulus"), s.kind + " modulus"));
}

MatrixFp matrix(const Spec& s, const std::string& key, std::uint32_t p) {
  const std::string& v = s.get(key);
  if (!v.empty() && v[0] == '@') return parse_matrix_text([&] {
      const auto bytes = read_file_bytes(s.path(v));
      return std::string(bytes.begin(), bytes.end());
    }());
  std::vector<std::vector<std::uint32_t>> rows;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const std::size_t semi = std::min(v.find(';', pos), v.size());
    rows.push_back(parse_list(v.substr(pos, semi - pos), s.kind + " " + key));
    pos = semi + 1;
  }
  return MatrixFp(p, std::move(rows));
}

}  // namespace

Construction build_construction(std::string_view text, bool force, const std::string& base_dir) {
  const Spec s = tokenize(text, base_dir);
  if (s.kind == "monomial") {
    s.allow({"p", "n", "d", "modulus"});
    const u64 p = s.number("p");
    if (p > 0x7fffffffULL) throw std::invalid_argument("monomial: p is too large");
    const FieldCtx ctx = field(s, static_cast<std::uint32_t>(p), s.small("n"));
    return monomial(ctx, s.number("d"));
  }
  if (s.kind == "gold-trace") {
    s.allow({"n", "r", "modulus"});
    return gold_trace(field(s, 2, s.small("n")), s.small("r"), force);
  }
  if (s.kind == "mm1") {
    s.allow({"m", "pi", "phi", "modulus"});
    const FieldCtx ctx = field(s, 2, s.small("m"));
    return mm_pi_phi(ctx, field_table(s, "pi", ctx), field_table(s, "phi", ctx), force);
  }
  if (s.kind == "mm2") {
    s.allow({"m", "i", "pi", "modulus"});
    const FieldCtx ctx = field(s, 2, s.small("m"));
    return mm_pair(ctx, field_table(s, "pi", ctx), s.small("i"), force);
  }
  if (s.kind == "compose") {
    s.allow({"L", "F"});
    const std::string& fv = s.get("F");
    if (fv.empty() || fv[0] != '@') throw std::invalid_argument("compose: F must be '@file'");
    const FuncTable f = parse_function_file(s.path(fv));
    return linear_compose(f, matrix(s, "L", f.p()));
  }
  throw std::invalid_argument("unknown construction '" + s.kind + "' (expected monomial, gold-trace, mm1, mm2, compose)");
}

}  // namespace plateau
