#include <doctest.h>

#include <numeric>

#include "oracle.hpp"
#include "plateau/algebra.hpp"
#include "plateau/random.hpp"

using namespace plateau;

namespace {

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kBundled = [] {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> v;
  for (std::uint32_t d = 1; d <= 16; ++d) v.push_back({2, d});
  for (std::uint32_t d = 1; d <= 8; ++d) v.push_back({3, d});
  for (std::uint32_t d = 1; d <= 5; ++d) v.push_back({5, d});
  for (std::uint32_t d = 1; d <= 4; ++d) v.push_back({7, d});
  return v;
}();

// Element X of the polynomial basis; for degree 1 it is the root of the modulus.
u64 generator_x(std::uint32_t p, const Polynomial& f) {
  return f.size() == 2 ? (p - f[0]) % p : p;
}

}  // namespace

TEST_CASE("vector encoding examples") {
  CHECK(vec_add(0b1010, 0b0110, 2, 4) == 0b1100);
  CHECK(vec_add(from_digits(std::vector<std::uint32_t>{1, 2}, 3), from_digits(std::vector<std::uint32_t>{2, 2}, 3), 3, 2) ==
        from_digits(std::vector<std::uint32_t>{0, 1}, 3));
  CHECK(dot(0b101, 0b111, 2, 3) == 0);
  CHECK(dot(from_digits(std::vector<std::uint32_t>{1, 2}, 3), from_digits(std::vector<std::uint32_t>{2, 2}, 3), 3, 2) == 0);
  CHECK(to_digits(7, 3, 3) == std::vector<std::uint32_t>{1, 2, 0});
  CHECK_THROWS(vec_add(9, 0, 3, 2));
  for (u64 x = 0; x < 27; ++x) {
    CHECK(vec_add(x, 0, 3, 3) == x);
    CHECK(dot(x, 0, 3, 3) == 0);
  }
}

TEST_CASE("vector arithmetic matches the oracle exhaustively") {
  for (auto [p, len] : {std::pair{2u, 5u}, {3u, 3u}, {5u, 2u}, {7u, 2u}}) {
    const u64 size = oracle::ipow(p, len);
    for (u64 x = 0; x < size; ++x) {
      u64 acc = 0;
      for (std::uint32_t k = 0; k < p; ++k) acc = vec_add(acc, x, p, len);
      CHECK(acc == 0);
      CHECK(vec_add(x, vec_neg(x, p, len), p, len) == 0);
      for (u64 y = 0; y < size; ++y) {
        CHECK(vec_add(x, y, p, len) == oracle::add(x, y, p, len));
        CHECK(vec_add(x, y, p, len) == vec_add(y, x, p, len));
        CHECK(vec_sub(x, y, p, len) == oracle::sub(x, y, p, len));
        CHECK(dot(x, y, p, len) == oracle::dot(x, y, p, len));
        CHECK(detail::add_digits(x, y, p) == oracle::add(x, y, p, len));
        CHECK(detail::dot_digits(x, y, p) == oracle::dot(x, y, p, len));
      }
    }
  }
}

TEST_CASE("vec_add associative and dot bilinear on random triples") {
  Rng rng(7);
  for (auto [p, len] : {std::pair{2u, 16u}, {3u, 10u}, {5u, 6u}}) {
    const u64 size = oracle::ipow(p, len);
    for (int i = 0; i < 2000; ++i) {
      const u64 x = rng.below(size), y = rng.below(size), z = rng.below(size);
      CHECK(vec_add(vec_add(x, y, p, len), z, p, len) == vec_add(x, vec_add(y, z, p, len), p, len));
      CHECK(dot(vec_add(x, y, p, len), z, p, len) == (dot(x, z, p, len) + dot(y, z, p, len)) % p);
      const std::uint32_t c = static_cast<std::uint32_t>(rng.below(p));
      CHECK(dot(vec_scale(c, x, p, len), z, p, len) == (c * dot(x, z, p, len)) % p);
    }
  }
}

TEST_CASE("matrices over F_p") {
  MatrixFp a(3, {{1, 2, 0}, {0, 1, 1}});
  CHECK(a.rank() == 2);
  CHECK(a.apply(from_digits(std::vector<std::uint32_t>{1, 1, 1}, 3)) == from_digits(std::vector<std::uint32_t>{0, 2}, 3));
  MatrixFp dep(2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  CHECK(dep.rank() == 2);
  CHECK(MatrixFp::identity(5, 4).rank() == 4);
  for (u64 x = 0; x < 625; ++x) CHECK(MatrixFp::identity(5, 4).apply(x) == x);
  CHECK(MatrixFp(2, 3, 3).rank() == 0);
  CHECK(a.to_rows() == std::vector<std::vector<std::uint32_t>>{{1, 2, 0}, {0, 1, 1}});
  CHECK_THROWS(a.set(0, 0, 3));
  // apply is linear
  for (u64 x = 0; x < 27; ++x)
    for (u64 y = 0; y < 27; ++y) CHECK(a.apply(vec_add(x, y, 3, 3)) == vec_add(a.apply(x), a.apply(y), 3, 2));
}

TEST_CASE("irreducibility agrees with trial division") {
  for (auto [p, deg] : {std::pair{2u, 6u}, {2u, 8u}, {3u, 4u}, {5u, 3u}}) {
    const u64 count = oracle::ipow(p, deg);
    for (u64 low = 0; low < count; ++low) {
      Polynomial f = to_digits(low, p, deg);
      f.push_back(1);
      CHECK(is_irreducible(f, p) == oracle::irreducible(f, p));
    }
  }
}

TEST_CASE("bundled moduli are irreducible with X primitive") {
  for (auto [p, deg] : kBundled) {
    CAPTURE(p);
    CAPTURE(deg);
    const Polynomial f = default_modulus(p, deg);
    REQUIRE(f.size() == deg + 1);
    CHECK(f.back() == 1);
    if (oracle::ipow(p, deg) <= (1u << 16)) {
      CHECK(oracle::irreducible(f, p));
      oracle::Field of{p, deg, f};
      const u64 x = generator_x(p, f);
      u64 order = 1, cur = x;
      while (cur != 1) {
        cur = of.mul(cur, x);
        ++order;
      }
      CHECK(order == of.order() - 1);
    }
    const FieldCtx ctx(p, deg, f);
    CHECK(ctx.is_primitive_element(generator_x(p, f)));
  }
}

TEST_CASE("default modulus falls back to the smallest irreducible") {
  const Polynomial f = default_modulus(11, 2);
  CHECK(is_irreducible(f, 11));
  CHECK(oracle::irreducible(f, 11));
  CHECK_THROWS_AS(FieldCtx(2, 4, {1, 0, 0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(default_modulus(4, 2), std::invalid_argument);
}

TEST_CASE("field examples") {
  const FieldCtx f4(2, 2, {1, 1, 1});
  const u64 w = 2;
  CHECK(f4.pow(w, 3) == 1);
  CHECK(f4.rel_trace(1, 1) == 0);
  CHECK(f4.rel_trace(w, 1) == 1);
  const FieldCtx f16 = FieldCtx::standard(2, 4);
  for (u64 a = 1; a < 16; ++a) {
    CHECK(f16.mul(a, f16.inv(a)) == 1);
    CHECK(f16.mul(a, 1) == a);
  }
  CHECK(f16.rel_trace(0, 1) == 0);
  CHECK_THROWS(f16.rel_trace(1, 3));
}

TEST_CASE("field arithmetic matches schoolbook oracle and field axioms") {
  for (auto [p, deg] : {std::pair{2u, 6u}, {2u, 4u}, {3u, 3u}, {5u, 2u}, {7u, 2u}}) {
    const FieldCtx ctx = FieldCtx::standard(p, deg);
    const oracle::Field of{p, deg, ctx.modulus()};
    const u64 q = ctx.order();
    for (u64 a = 0; a < q; ++a) {
      if (a) CHECK(ctx.mul(a, ctx.inv(a)) == 1);
      CHECK(ctx.frobenius(a) == of.pow(a, p));
      for (u64 b = 0; b < q; ++b) {
        const u64 ab = ctx.mul(a, b);
        CHECK(ab == of.mul(a, b));
        CHECK(ab == ctx.mul(b, a));
      }
    }
    Rng rng(p * 100 + deg);
    for (int i = 0; i < 500; ++i) {
      const u64 a = rng.below(q), b = rng.below(q), c = rng.below(q);
      CHECK(ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)));
      CHECK(ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
      const u64 e = rng.below(3 * q);
      CHECK(ctx.pow(a, e) == of.pow(a, e));
    }
  }
}

TEST_CASE("field axioms exhaustive up to 2^12 elements") {
  for (auto [p, deg] : {std::pair{2u, 12u}, {3u, 7u}}) {
    const FieldCtx ctx = FieldCtx::standard(p, deg);
    const u64 q = ctx.order();
    const u64 g = generator_x(p, ctx.modulus());
    u64 cur = 1;
    for (u64 a = 1; a < q; ++a) {
      CHECK(ctx.mul(a, ctx.inv(a)) == 1);
      cur = ctx.mul(cur, g);
      if (a < q - 1) CHECK(cur != 1);
    }
    CHECK(cur == 1);
  }
}

TEST_CASE("relative trace is linear over the subfield and onto it") {
  struct Case {
    std::uint32_t p, deg, m;
  };
  for (auto c : {Case{2, 12, 1}, Case{2, 12, 4}, Case{2, 12, 6}, Case{2, 8, 4}, Case{3, 8, 4}, Case{3, 6, 2}, Case{3, 8, 1}}) {
    CAPTURE(c.deg);
    CAPTURE(c.m);
    const FieldCtx ctx = FieldCtx::standard(c.p, c.deg);
    const SubfieldEncoding sub(ctx, c.m);
    const u64 q = ctx.order();
    const u64 qm = oracle::ipow(c.p, c.m);
    std::vector<u64> hits(qm, 0);
    for (u64 a = 0; a < q; ++a) {
      const u64 t = ctx.rel_trace(a, c.m);
      REQUIRE_NOTHROW(++hits[sub.encode(t)]);
    }
    // onto, and every fiber has the same size since the map is linear
    for (u64 h : hits) CHECK(h == q / qm);
    Rng rng(c.deg * 31 + c.m);
    for (int i = 0; i < 300; ++i) {
      const u64 a = rng.below(q), b = rng.below(q);
      const u64 lam = sub.decode(rng.below(qm));
      CHECK(ctx.rel_trace(ctx.add(a, b), c.m) == ctx.add(ctx.rel_trace(a, c.m), ctx.rel_trace(b, c.m)));
      CHECK(ctx.rel_trace(ctx.mul(lam, a), c.m) == ctx.mul(lam, ctx.rel_trace(a, c.m)));
    }
  }
}

TEST_CASE("subfield encoding is an additive bijection") {
  const FieldCtx ctx = FieldCtx::standard(2, 8);
  const SubfieldEncoding sub(ctx, 4);
  std::vector<bool> seen(256, false);
  for (u64 i = 0; i < 16; ++i) {
    const u64 e = sub.decode(i);
    CHECK(ctx.pow(e, 16) == e);
    CHECK(sub.encode(e) == i);
    CHECK_FALSE(seen[e]);
    seen[e] = true;
    for (u64 j = 0; j < 16; ++j) CHECK(sub.encode(ctx.add(e, sub.decode(j))) == vec_add(i, j, 2, 4));
  }
  u64 outside = 0;
  while (ctx.pow(outside, 16) == outside) ++outside;
  CHECK_THROWS(sub.encode(outside));
}

TEST_CASE("wide integer helpers") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(15) == 3);
  CHECK(isqrt(16) == 4);
  const i128 big = static_cast<i128>(1) << 120;
  CHECK(isqrt(big) == static_cast<i128>(1) << 60);
  CHECK(isqrt(big - 1) == (static_cast<i128>(1) << 60) - 1);
  CHECK(is_perfect_square(2304));
  CHECK_FALSE(is_perfect_square(2305));
  CHECK(floor_div(-7, 2) == -4);
  CHECK(ceil_div(-7, 2) == -3);
  CHECK(ceil_div(256, 46) == 6);
  CHECK_THROWS_AS(exact_div(7, 2), std::domain_error);
  CHECK(to_string(big) == "1329227995784915872903807060280344576");
  CHECK(to_string(-big) == "-1329227995784915872903807060280344576");
  CHECK_THROWS_AS(ipow(2, 64), std::overflow_error);
  unsigned k = 0;
  CHECK(is_power_of(243, 3, &k));
  CHECK(k == 5);
  CHECK_FALSE(is_power_of(12, 2));
  CHECK(index_bits(3, 4) == 7);
  CHECK(is_prime(65537));
  CHECK_FALSE(is_prime(65535));
}
