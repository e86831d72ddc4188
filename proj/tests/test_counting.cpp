#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "lieq/counting.hpp"
#include "lieq/rational.hpp"

using namespace lieq;

namespace {

const CubicPoly kSplit{-1, -2, 1};  // x^3 - x^2 - 2x + 1, discriminant 49

// independent 9-entry oracle, written against the definition only
long long naive_count(const CubicPoly& p, double T) {
  long long limit = (long long)std::ceil(T), hits = 0;
  Mat3 m{};
  auto rec = [&](auto&& self, int pos, long long rs) -> void {
    if (double(rs) >= T * T) return;
    if (pos == 9) {
      if (char_poly(m) == p) ++hits;
      return;
    }
    for (long long v = -limit; v <= limit; ++v) {
      m[pos / 3][pos % 3] = v;
      self(self, pos + 1, rs + v * v);
    }
    m[pos / 3][pos % 3] = 0;
  };
  rec(rec, 0, 0);
  return hits;
}

}  // namespace

TEST_CASE("companion matrices reproduce their polynomials") {
  Mat3 c = companion(kSplit);
  Mat3 expected{{{0, 0, -1}, {1, 0, 2}, {0, 1, 1}}};
  CHECK(c == expected);
  CHECK(frob_sq(c) == 8);  // so the companion lands inside radius 3
  CHECK(char_poly(c) == kSplit);

  Mat3 shift = companion(CubicPoly{0, 0, 0});
  CHECK(shift == Mat3{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}});
  // nilpotency: cube by hand
  long long sq[3][3] = {}, cube[3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) sq[i][j] += shift[i][k] * shift[k][j];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) cube[i][j] += sq[i][k] * shift[k][j];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(cube[i][j] == 0);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    CubicPoly p{(long long)(rng() % 19) - 9, (long long)(rng() % 19) - 9,
                (long long)(rng() % 19) - 9};
    CHECK(char_poly(companion(p)) == p);
  }
}

TEST_CASE("cubic flags: discriminant, irreducibility, splitting") {
  CHECK(kSplit.discriminant() == 49);
  CHECK(kSplit.irreducible_over_q());
  CHECK(kSplit.split_over_r());

  CHECK(!CubicPoly{0, 0, 0}.irreducible_over_q());   // x^3
  CHECK(!CubicPoly{0, -1, 0}.irreducible_over_q());  // x(x-1)(x+1)
  CHECK(!CubicPoly{-6, 11, -6}.irreducible_over_q());  // (x-1)(x-2)(x-3)

  CubicPoly notsplit{0, 1, 1};  // x^3 + x + 1
  CHECK(notsplit.discriminant() == -31);
  CHECK(notsplit.irreducible_over_q());
  CHECK(!notsplit.split_over_r());

  CubicPoly cbrt2{0, 0, -2};  // x^3 - 2
  CHECK(cbrt2.irreducible_over_q());
  CHECK(!cbrt2.split_over_r());

  CubicPoly split2{0, -3, 1};  // x^3 - 3x + 1, discriminant 81
  CHECK(split2.discriminant() == 81);
  CHECK(split2.irreducible_over_q());
  CHECK(split2.split_over_r());
}

TEST_CASE("row solve equals the 9-entry oracle on small balls") {
  for (double T : {2.0, 3.0, 4.0}) {
    long long oracle = naive_count(kSplit, T);
    CHECK(brute_force_count(kSplit, T) == oracle);
    CHECK(enumerate_count(kSplit, T) == oracle);
  }
  CubicPoly split2{0, -3, 1};
  for (double T : {2.5, 3.0}) {
    long long oracle = naive_count(split2, T);
    CHECK(brute_force_count(split2, T) == oracle);
    CHECK(enumerate_count(split2, T) == oracle);
  }
  // fractional radius exercises the open-ball boundary handling
  CHECK(enumerate_count(kSplit, 2.9) == naive_count(kSplit, 2.9));
}

TEST_CASE("counts nest, catch the companion, and ignore threads") {
  long long n3 = enumerate_count(kSplit, 3);
  CHECK(n3 >= 1);  // companion norm sqrt(8) < 3
  CHECK(enumerate_count(kSplit, 2.8) < n3);  // radius below sqrt(8)
  long long n4 = enumerate_count(kSplit, 4);
  CHECK(n3 <= n4);
  for (int threads : {1, 2, 8}) {
    CHECK(enumerate_count(kSplit, 5, threads) ==
          enumerate_count(kSplit, 5, 1));
  }
}

TEST_CASE("reducible polynomials are rejected by the row solver only") {
  CHECK_THROWS_AS(enumerate_count(CubicPoly{0, 0, 0}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_count(kSplit, 0), std::invalid_argument);
  // the oracle may still count nilpotent matrices
  CHECK(brute_force_count(CubicPoly{0, 0, 0}, 1.5) ==
        naive_count(CubicPoly{0, 0, 0}, 1.5));
  CHECK_THROWS_AS(brute_force_count(kSplit, 6.1), std::invalid_argument);
  CHECK(brute_force_count(kSplit, 2, true) == naive_count(kSplit, 2));
}

TEST_CASE("zeta agrees with the classical closed forms") {
  const double pi = 3.14159265358979323846;
  CHECK(zeta(2) == doctest::Approx(pi * pi / 6).epsilon(1e-13));
  CHECK(zeta(4) == doctest::Approx(pi * pi * pi * pi / 90).epsilon(1e-13));
  CHECK(zeta(3) == doctest::Approx(1.2020569031595943).epsilon(1e-13));
  CHECK_THROWS_AS(zeta(1.0), std::invalid_argument);
}

TEST_CASE("the two cp closed forms coincide") {
  FieldInvariants unit{1, 1, 1, "unit test grid"};
  CHECK(cp_n3(unit) == doctest::Approx(167.2649017706712).epsilon(1e-13));
  CHECK(cp_value(3, unit) ==
        doctest::Approx(167.2649017706712).epsilon(1e-12));

  for (long long h : {1, 2, 5})
    for (double reg : {0.3, 1.0, 2.7})
      for (double disc : {49.0, 1.0, 148.0}) {
        FieldInvariants inv{disc, h, reg, "grid"};
        double general = cp_value(3, inv), simple = cp_n3(inv);
        CHECK(std::fabs(general - simple) <= 1e-12 * std::fabs(simple));
      }

  FieldInvariants inv = reference_invariants();
  CHECK(inv.disc == 49);
  CHECK(inv.h == 1);
  CHECK(!inv.provenance.empty());
  CHECK(cp_n3(inv) == doctest::Approx(12.555732255738762).epsilon(1e-12));

  FieldInvariants twice = inv;
  twice.h = 2;
  CHECK(cp_n3(twice) == doctest::Approx(2 * cp_n3(inv)).epsilon(1e-14));

  CHECK_THROWS_AS(cp_value(1, inv), std::invalid_argument);
  CHECK_THROWS_AS(cp_n3(FieldInvariants{0, 1, 1, "x"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cp_n3(FieldInvariants{49, 1, 1, ""}),
                  std::invalid_argument);
}

TEST_CASE("power-law fits recover synthetic constants") {
  std::vector<CountRow> rows;
  for (double T : {10.0, 15.0, 20.0, 25.0, 30.0, 40.0})
    rows.push_back({T, (long long)std::llround(7 * T * T * T), 0.0});
  FitResult f = fit_leading(rows);
  CHECK(f.slope == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(f.constant == doctest::Approx(7.0).epsilon(1e-8));
  CHECK(f.residual < 1e-9);

  rows.clear();
  for (double T : {10.0, 15.0, 20.0, 25.0, 30.0, 40.0})
    rows.push_back({T, (long long)std::llround(7 * T * T * T + T * T), 0.0});
  f = fit_leading(rows);
  CHECK(f.slope > 2.9);
  CHECK(f.slope < 3.0);

  CHECK_THROWS_AS(fit_leading({{10, 7000, 0}, {20, 56000, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      fit_leading({{1, 0, 0}, {2, 0, 0}, {3, 0, 0}, {4, 0, 0}, {5, 0, 0}}),
      std::invalid_argument);
}

TEST_CASE("count series ties rows, fit, and the reference constant") {
  CountResult res = count_series(kSplit, {3, 4, 5, 6}, 2,
                                 reference_invariants());
  REQUIRE(res.rows.size() == 4);
  for (size_t i = 1; i < res.rows.size(); ++i)
    CHECK(res.rows[i].N >= res.rows[i - 1].N);
  CHECK(res.rows[0].N == enumerate_count(kSplit, 3));
  CHECK(res.cp_reference == doctest::Approx(12.555732255738762));
  CHECK(res.fit.slope > 0);

  CHECK_THROWS_AS(count_series(kSplit, {4, 3, 5, 6}, 1,
                               reference_invariants()),
                  std::invalid_argument);
  CHECK_THROWS_AS(count_series(CubicPoly{0, 1, 1}, {3, 4, 5, 6}, 1,
                               reference_invariants()),
                  std::invalid_argument);
}
