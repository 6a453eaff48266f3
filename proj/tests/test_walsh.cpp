#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "oracle.hpp"
#include "plateau/cycint.hpp"
#include "plateau/random.hpp"
#include "plateau/walsh.hpp"

using namespace plateau;

namespace {

CycInt oracle_walsh(const FuncTable& f, u64 b, u64 a) {
  const auto c = oracle::walsh_counts(f, b, a);
  return CycInt::from_exponent_counts(f.p(), c);
}

CycInt random_cyc(Rng& rng, std::uint32_t p) {
  std::vector<i64> c(p);
  for (auto& x : c) x = static_cast<i64>(rng.below(41)) - 20;
  return CycInt::from_exponent_counts(p, c);
}

u64 neg(u64 x, std::uint32_t p, std::uint32_t len) { return vec_neg(x, p, len); }

}  // namespace

TEST_CASE("cyclotomic integer examples") {
  const CycInt z = CycInt::zeta_power(3, 1);
  const CycInt one = CycInt::from_integer(3, 1);
  const CycInt x = one + z + z;
  CHECK(x.sq_modulus().as_integer() == 3);
  CHECK((z + CycInt::zeta_power(3, 2)).as_integer() == -1);
  CHECK(x.conj().conj() == x);
  CHECK_FALSE(z.as_integer().has_value());
  CHECK_THROWS_AS(z.to_integer(), std::domain_error);
  CHECK(CycInt::zeta_power(5, 5) == CycInt::from_integer(5, 1));
  CHECK(CycInt::zeta_power(5, -1) == CycInt::zeta_power(5, 4));
  CHECK(CycInt::from_integer(2, -7).to_integer() == -7);
  CycInt all(7);
  for (int k = 0; k < 7; ++k) all += CycInt::zeta_power(7, k);
  CHECK(all.is_zero());
}

TEST_CASE("cyclotomic ring laws on random elements") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    Rng rng(p);
    for (int i = 0; i < 300; ++i) {
      const CycInt a = random_cyc(rng, p), b = random_cyc(rng, p), c = random_cyc(rng, p);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a * b).conj() == a.conj() * b.conj());
      CHECK(a - a == CycInt(p));
      CHECK(-(-a) == a);
      CHECK(a.sq_modulus() == a * a.conj());
      CHECK(a.conj().conj() == a);
    }
  }
}

TEST_CASE("walsh point examples") {
  const FuncTable zero = testing::constant_map(2, 4, 2);
  CHECK(walsh_point(zero, 0, 0).to_integer() == 16);
  for (u64 a = 1; a < 16; ++a) CHECK(walsh_point(zero, 0, a).is_zero());
  const FuncTable sq({3, 1, 1}, {0, 1, 1});
  const CycInt expect = CycInt::from_integer(3, 1) + CycInt::zeta_power(3, 1) + CycInt::zeta_power(3, 1);
  CHECK(walsh_point(sq, 1, 0) == expect);
}

TEST_CASE("walsh rows agree with direct summation") {
  struct Case {
    std::uint32_t p, n, m;
  };
  for (auto c : {Case{2, 6, 4}, Case{2, 5, 5}, Case{3, 4, 2}, Case{3, 3, 3}, Case{5, 2, 2}, Case{7, 2, 1}}) {
    for (u64 seed = 0; seed < 3; ++seed) {
      const FuncTable f = random_function({c.p, c.n, c.m}, seed);
      const u64 in = f.size(), out = f.params().output_size();
      for (u64 b = 0; b < out; ++b) {
        const WalshRow row = walsh_row(f, b);
        REQUIRE(row.size() == in);
        for (u64 a = 0; a < in; ++a) {
          const CycInt w = row.at(a);
          CHECK(w == walsh_point(f, b, a));
          CHECK(w == oracle_walsh(f, b, a));
        }
      }
    }
  }
}

TEST_CASE("binary rows agree with the oracle") {
  const FuncTable f = random_function({2, 7, 5}, 11);
  std::vector<std::int32_t> out(128);
  for (u64 b = 0; b < 32; ++b) {
    detail::binary_walsh_row(f, b, out);
    for (u64 a = 0; a < 128; ++a) CHECK(out[a] == oracle::walsh_int(f, b, a));
  }
}

TEST_CASE("walsh rows on larger domains, sampled") {
  for (auto c : {std::tuple{2u, 12u, 8u}, {3u, 7u, 3u}}) {
    const auto [p, n, m] = c;
    const FuncTable f = random_function({p, n, m}, 5);
    Rng rng(9);
    for (int i = 0; i < 4; ++i) {
      const u64 b = rng.below(f.params().output_size());
      const WalshRow row = walsh_row(f, b);
      for (int j = 0; j < 20; ++j) {
        const u64 a = rng.below(f.size());
        CHECK(row.at(a) == oracle_walsh(f, b, a));
      }
    }
  }
}

TEST_CASE("Parseval and conjugation symmetry") {
  struct Case {
    std::uint32_t p, n, m;
  };
  for (auto c : {Case{2, 8, 4}, Case{3, 4, 2}, Case{5, 3, 1}, Case{7, 2, 2}}) {
    const FuncTable f = random_function({c.p, c.n, c.m}, 3);
    const i64 p2n = static_cast<i64>(ipow(c.p, 2 * c.n));
    const u64 out = f.params().output_size();
    for (u64 b = 0; b < out; ++b) {
      const WalshRow row = walsh_row(f, b);
      CycInt total(c.p);
      for (u64 a = 0; a < f.size(); ++a) total += row.at(a).sq_modulus();
      CHECK(total.as_integer() == p2n);
      if (c.p == 2) continue;
      const WalshRow mirror = walsh_row(f, neg(b, c.p, c.m));
      for (u64 a = 0; a < f.size(); ++a) CHECK(mirror.at(neg(a, c.p, c.n)) == row.at(a).conj());
    }
  }
}

TEST_CASE("zero column agrees with walsh points") {
  struct Case {
    std::uint32_t p, n, m;
  };
  for (auto c : {Case{2, 6, 6}, Case{2, 4, 7}, Case{3, 3, 3}, Case{5, 2, 3}, Case{3, 4, 2}}) {
    const FuncTable f = random_function({c.p, c.n, c.m}, 2);
    const ZeroColumn col = zero_column(f);
    REQUIRE(col.size() == f.params().output_size());
    for (u64 b = 0; b < col.size(); ++b) CHECK(col.at(b) == walsh_point(f, b, 0));
  }
}

TEST_CASE("column sum recovers the zero fiber on random tables") {
  struct Case {
    std::uint32_t p, n, m;
  };
  for (auto c : {Case{2, 8, 4}, Case{3, 4, 2}}) {
    for (u64 seed = 0; seed < 1000; ++seed) {
      const FuncTable f = random_function({c.p, c.n, c.m}, seed, 17);
      const ZeroColumn col = zero_column(f);
      CycInt total(c.p);
      for (u64 b = 0; b < col.size(); ++b) total += col.at(b);
      const auto fib = oracle::fibers(f);
      const std::optional<i64> expect = static_cast<i64>(col.size() * fib[0]);
      if (total.as_integer() != expect) {
        FAIL("column sum mismatch at seed " << seed);
      }
    }
  }
}

TEST_CASE("spectra of standard examples") {
  const FuncTable cube = testing::power_map(2, 4, 3);
  const ZeroColumn col = zero_column(cube);
  CHECK(col.integer(0) == 16);
  // bent components have W(b, 0) = 4, the five others -8 (sum of squares 16 * 30)
  std::map<i64, int> zero_values;
  for (u64 b = 1; b < 16; ++b) ++zero_values[col.integer(b)];
  CHECK(zero_values == std::map<i64, int>{{-8, 5}, {4, 10}});
  int eights = 0;
  for (u64 b = 1; b < 16; ++b) {
    std::map<i64, int> mags;
    const WalshRow row = walsh_row(cube, b);
    for (u64 a = 0; a < 16; ++a) ++mags[row.integer(a) < 0 ? -row.integer(a) : row.integer(a)];
    if (mags.count(8)) {
      ++eights;
      CHECK(mags == std::map<i64, int>{{0, 12}, {8, 4}});
    } else {
      CHECK(mags == std::map<i64, int>{{4, 16}});
    }
  }
  CHECK(eights == 5);

  const WalshRow r0 = walsh_row(cube, 0);
  CHECK(r0.integer(0) == 16);
  for (u64 a = 1; a < 16; ++a) CHECK(r0.integer(a) == 0);

  const FuncTable id = testing::identity_map(2, 5);
  const ZeroColumn icol = zero_column(id);
  CHECK(icol.integer(0) == 32);
  for (u64 b = 1; b < 32; ++b) {
    CHECK(icol.integer(b) == 0);
    const WalshRow row = walsh_row(id, b);
    for (u64 a = 0; a < 32; ++a) CHECK(row.integer(a) == (a == b ? 32 : 0));
  }
}

TEST_CASE("zero column from counts") {
  const std::vector<u64> counts = {1, 0, 2, 0, 0, 0, 0, 0, 6};
  const ZeroColumn col = zero_column_from_counts(3, 2, counts);
  for (u64 b = 0; b < 9; ++b) {
    CycInt expect(3);
    for (u64 v = 0; v < 9; ++v)
      expect += CycInt::from_integer(3, static_cast<i64>(counts[v])) * CycInt::zeta_power(3, dot(b, v, 3, 2));
    CHECK(col.at(b) == expect);
  }
}
