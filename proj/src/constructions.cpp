#include "plateau/constructions.hpp"

#include <numeric>
#include <sstream>

#include "plateau/distribution.hpp"
#include "plateau/plateaued.hpp"

namespace plateau {

namespace {

void require(bool ok, bool force, const std::string& msg, Construction& c) {
  if (ok) return;
  if (!force) throw HypothesisError(msg);
  c.hypotheses_hold = false;
  c.hypothesis_note = c.hypothesis_note.empty() ? msg : c.hypothesis_note + "; " + msg;
}

void check_table(std::span<const std::uint32_t> t, const FieldCtx& ctx, const char* name) {
  if (t.size() != ctx.order())
    throw std::invalid_argument(std::string(name) + " must have " + std::to_string(ctx.order()) + " entries");
  for (auto v : t)
    if (v >= ctx.order()) throw std::invalid_argument(std::string(name) + " entry out of range");
}

}  // namespace

Construction monomial(const FieldCtx& ctx, u64 d) {
  const u64 q = ctx.order();
  std::vector<std::uint32_t> v(q);
  for (u64 x = 0; x < q; ++x) v[x] = static_cast<std::uint32_t>(ctx.pow(x, d));
  const u64 g = std::gcd(d, q - 1);
  Construction c{"monomial", "x^" + std::to_string(d) + " over F_" + std::to_string(ctx.p()) + "^" + std::to_string(ctx.deg()),
                 FuncTable(DomainParams(ctx.p(), ctx.deg(), ctx.deg()), std::move(v)), std::nullopt};
  if (d >= 1) {
    Expectation e;
    e.special[0] = 1;
    e.others = g;
    e.others_nonempty_only = true;
    c.expected = e;
  }
  return c;
}

Construction gold_trace(const FieldCtx& ctx, std::uint32_t r, bool force) {
  const std::uint32_t n = ctx.deg();
  if (ctx.p() != 2) throw HypothesisError("gold-trace: p must be 2");
  if (n % 2 != 0) throw HypothesisError("gold-trace: n must be even");
  Construction c{"gold-trace", "Tr^" + std::to_string(n) + "_" + std::to_string(n / 2) + "(x^(2^" + std::to_string(r) + "+1))",
                 FuncTable(DomainParams(2, 1, 1), {0, 0}), std::nullopt};
  const std::uint32_t d = std::gcd(r, n);
  require(r >= 1 && (n / d) % 2 == 0, force,
          "gold-trace: n/gcd(r,n) = " + std::to_string(n / d) + " must be even", c);
  const std::uint32_t h = n / 2;
  const SubfieldEncoding enc(ctx, h);
  const u64 e = (u64{1} << r) + 1;
  std::vector<std::uint32_t> v(ctx.order());
  for (u64 x = 0; x < ctx.order(); ++x) v[x] = static_cast<std::uint32_t>(enc.encode(ctx.rel_trace(ctx.pow(x, e), h)));
  c.table = FuncTable(DomainParams(2, n, h), std::move(v));
  if (c.hypotheses_hold && d != h) {
    Expectation ex;
    const u64 half = u64{1} << h;
    ex.special[0] = half + (half - 1) * (u64{1} << d);
    ex.others = half - (u64{1} << d);
    ex.single_t = 2 * d;
    c.expected = ex;
  }
  return c;
}

Construction mm_pi_phi(const FieldCtx& ctx_m, std::span<const std::uint32_t> pi, std::span<const std::uint32_t> phi,
                       bool force) {
  if (ctx_m.p() != 2) throw HypothesisError("mm1: p must be 2");
  check_table(pi, ctx_m, "pi");
  check_table(phi, ctx_m, "phi");
  const std::uint32_t m = ctx_m.deg();
  const u64 q = ctx_m.order();
  Construction c{"mm1", "x*pi(y) + phi(y) over F_2^" + std::to_string(m), FuncTable(DomainParams(2, 1, 1), {0, 0}),
                 std::nullopt};
  std::vector<u64> fiber(q, 0);
  for (auto v : pi) ++fiber[v];
  bool two_to_one = true;
  for (auto s : fiber) two_to_one = two_to_one && (s == 0 || s == 2);
  require(two_to_one, force, "mm1: pi is not 2-to-1", c);

  std::vector<std::uint32_t> v(q * q);
  for (u64 x = 0; x < q; ++x)
    for (u64 y = 0; y < q; ++y) v[x * q + y] = static_cast<std::uint32_t>(ctx_m.add(ctx_m.mul(x, pi[y]), phi[y]));
  c.table = FuncTable(DomainParams(2, 2 * m, m), std::move(v));
  if (!c.hypotheses_hold) return c;

  Expectation e;
  if (fiber[0] == 0) {
    e.others = q;
    c.description += " (case 1: 0 not in image(pi))";
  } else {
    std::vector<u64> zeros;
    for (u64 y = 0; y < q; ++y)
      if (pi[y] == 0) zeros.push_back(y);
    const u64 b1 = phi[zeros[0]], b2 = phi[zeros[1]];
    if (b1 == b2) {
      e.special[b1] = q + 2 * (q - 1);
      c.description += " (case 2: phi agrees on pi^-1(0))";
    } else {
      e.special[b1] = 2 * q - 2;
      e.special[b2] = 2 * q - 2;
      c.description += " (case 3: phi differs on pi^-1(0))";
    }
    e.others = q - 2;
  }
  c.expected = e;
  return c;
}

Construction mm_pair(const FieldCtx& ctx_m, std::span<const std::uint32_t> pi, std::uint32_t i, bool force) {
  if (ctx_m.p() != 2) throw HypothesisError("mm2: p must be 2");
  check_table(pi, ctx_m, "pi");
  const std::uint32_t m = ctx_m.deg();
  const u64 q = ctx_m.order();
  Construction c{"mm2", "(x*pi(y), x*pi(y)^(2^" + std::to_string(i) + ")) over F_2^" + std::to_string(m),
                 FuncTable(DomainParams(2, 1, 1), {0, 0}), std::nullopt};
  std::vector<bool> hit(q, false);
  bool perm = true;
  for (auto v : pi) {
    perm = perm && !hit[v];
    hit[v] = true;
  }
  require(perm, force, "mm2: pi is not a permutation", c);
  require(std::gcd(i, m) == 1, force, "mm2: gcd(i, m) = " + std::to_string(std::gcd(i, m)) + " != 1", c);
  const u64 e = u64{1} << i;
  std::vector<std::uint32_t> v(q * q);
  for (u64 x = 0; x < q; ++x)
    for (u64 y = 0; y < q; ++y) {
      const u64 u = ctx_m.mul(x, pi[y]);
      const u64 w = ctx_m.mul(x, ctx_m.pow(pi[y], e));
      v[x * q + y] = static_cast<std::uint32_t>(u * q + w);
    }
  c.table = FuncTable(DomainParams(2, 2 * m, 2 * m), std::move(v));
  if (c.hypotheses_hold) {
    Expectation ex;
    ex.special[0] = 2 * q - 1;
    ex.others = 1;
    ex.others_nonempty_only = true;
    c.expected = ex;
  }
  return c;
}

Construction linear_compose(const FuncTable& f, const MatrixFp& l) {
  const auto& prm = f.params();
  if (l.p() != prm.p || l.cols() != prm.m) throw std::invalid_argument("compose: L must be k x m over F_p");
  if (l.rows() == 0 || l.rank() != l.rows()) throw HypothesisError("compose: L is not of full rank");
  std::vector<std::uint32_t> v(f.size());
  const auto img = linear_map_table(l);
  for (u64 x = 0; x < f.size(); ++x) v[x] = img[f[x]];
  return Construction{"compose", "L o F with L of size " + std::to_string(l.rows()) + "x" + std::to_string(l.cols()),
                      FuncTable(DomainParams(prm.p, prm.n, static_cast<std::uint32_t>(l.rows())), std::move(v)),
                      std::nullopt};
}

Verdict check_expectation(const Construction& c, const std::string& tag) {
  if (!c.hypotheses_hold) return Verdict::skipped(tag, "hypothesis: " + c.hypothesis_note);
  if (!c.expected) return Verdict::skipped(tag, "no distribution is promised for this instance");
  const Expectation& e = *c.expected;
  const auto dist = preimage_distribution(c.table);
  std::vector<std::string> bad;
  for (u64 v = 0; v < dist.counts.size(); ++v) {
    const u64 got = dist.counts[v];
    std::optional<u64> want;
    if (auto it = e.special.find(v); it != e.special.end())
      want = it->second;
    else if (e.others && (!e.others_nonempty_only || got != 0))
      want = e.others;
    if (want && got != *want && bad.size() < 4)
      bad.push_back("|F^-1(" + std::to_string(v) + ")| = " + std::to_string(got) + ", expected " + std::to_string(*want));
  }
  std::ostringstream os;
  for (const auto& [size, mult] : dist.histogram()) os << (os.tellp() > 0 ? ", " : "") << size << "x" << mult;
  if (e.single_t) {
    const auto prof = component_profile(c.table);
    const auto st = prof.single_t();
    if (!st || *st != *e.single_t) {
      std::ostringstream h;
      for (const auto& [t, k] : prof.t_histogram) h << " t=" << t << ":" << k;
      if (!prof.all_plateaued()) h << " non-plateaued:" << prof.components.size() - prof.plateaued_count;
      bad.push_back("expected every component with plateau index " + std::to_string(*e.single_t) + ", got" + h.str());
    }
  }
  if (!bad.empty()) {
    std::string msg;
    for (const auto& b : bad) msg += (msg.empty() ? "" : "; ") + b;
    return Verdict::fail(tag, msg + " (sizes " + os.str() + ")");
  }
  return Verdict::pass(tag, c.description + ": sizes " + os.str());
}

}  // namespace plateau
