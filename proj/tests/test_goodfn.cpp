#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "lieq/goodfn.hpp"

using namespace lieq;

namespace {

ExpPolynomial one_term(double c, double lambda, double Lambda = 1,
                       double delta = 1) {
  return make_exp_polynomial(1, {{c, {lambda}}}, Lambda, delta);
}

}  // namespace

TEST_CASE("certificate constants match the closed forms") {
  GoodCertificate c = certificate(1, 1);
  CHECK(c.alpha == 0.5);
  CHECK(c.b == doctest::Approx(0.048112522432468814).epsilon(1e-13));
  CHECK(c.B == doctest::Approx(4.7082022361822937).epsilon(1e-13));
  CHECK(c.eta == doctest::Approx(0.010218873365873398).epsilon(1e-13));
  CHECK(c.C == doctest::Approx(308.41225290419139).epsilon(1e-13));
  // hand identities at (1,1): b = 3^{-3/2}/4, eta = 1/(36e), C = 6 sqrt(972e)
  CHECK(c.b == doctest::Approx(std::pow(3.0, -1.5) / 4).epsilon(1e-15));
  CHECK(c.eta == doctest::Approx(1 / (36 * std::exp(1.0))).epsilon(1e-14));
  CHECK(c.C ==
        doctest::Approx(6 * std::sqrt(972 * std::exp(1.0))).epsilon(1e-14));
}

TEST_CASE("certificates stay positive and monotone over the parameter grid") {
  for (double L : {1.0, 2.0, 4.0}) {
    double prev_alpha = 0;
    for (double d : {0.25, 0.5, 1.0}) {
      GoodCertificate c = certificate(L, d);
      CHECK(c.C > 0);
      CHECK(c.b > 0);
      CHECK(c.B > 0);
      CHECK(c.eta > 0);
      CHECK(std::isfinite(c.C));
      CHECK(std::isfinite(c.B));
      CHECK(c.alpha == doctest::Approx(d / (2 * L)).epsilon(1e-15));
      CHECK(c.alpha > prev_alpha);  // alpha grows with the separation
      CHECK(c.eta < 1.0);
      CHECK(2 * c.b < 1.0);
      prev_alpha = c.alpha;
    }
  }
  CHECK_THROWS_AS(certificate(0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(certificate(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(certificate(1, -2), std::invalid_argument);
}

TEST_CASE("vandermonde floors hold on frozen and sampled exponents") {
  VandermondeReport r = vandermonde_floor({0, 1, 2}, 1);
  CHECK(r.det_abs == doctest::Approx(2.0));
  CHECK(r.floor == doctest::Approx(1.0));
  CHECK(r.pass);

  r = vandermonde_floor({0, 0.37}, 0.37);  // equality case
  CHECK(r.det_abs == doctest::Approx(0.37));
  CHECK(r.floor == doctest::Approx(0.37));
  CHECK(r.pass);

  r = vandermonde_floor({0, 2, 4}, 2);
  CHECK(r.det_abs == doctest::Approx(16.0));
  CHECK(r.floor == doctest::Approx(8.0));
  CHECK(r.pass);

  CHECK_THROWS_AS(vandermonde_floor({1, 1, 2}, 1), std::invalid_argument);
  CHECK_THROWS_AS(vandermonde_floor({1}, 1), std::invalid_argument);

  std::mt19937_64 rng(11);
  int seen = 0;
  while (seen < 1000) {
    ExpPolynomial f = sample_exp_polynomial(1, 2, 0.5, rng);
    if (f.terms.size() < 2) continue;
    std::vector<double> lams;
    for (const ExpTerm& t : f.terms) lams.push_back(t.lambda[0]);
    CHECK(vandermonde_floor(lams, 0.5).pass);
    ++seen;
  }
}

TEST_CASE("sampled polynomials satisfy the class constraints") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    ExpPolynomial f = sample_exp_polynomial(i % 2 + 1, 1 + i % 3, 0.5, rng);
    CHECK(f.dim == i % 2 + 1);
    for (const ExpTerm& t : f.terms)
      for (double l : t.lambda) CHECK(std::fabs(l) <= f.Lambda + 1e-12);
    for (size_t a = 0; a < f.terms.size(); ++a)
      for (size_t b = a + 1; b < f.terms.size(); ++b)
        for (int k = 0; k < f.dim; ++k)
          CHECK(std::fabs(f.terms[a].lambda[k] - f.terms[b].lambda[k]) >=
                f.delta - 1e-12);
  }
}

TEST_CASE("class validation rejects out-of-class data") {
  CHECK_THROWS_AS(make_exp_polynomial(1, {{1, {1.5}}}, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_exp_polynomial(1, {{1, {0.0}}, {1, {0.5}}}, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      make_exp_polynomial(
          1, {{1, {-1.0}}, {1, {-0.3}}, {1, {0.4}}, {1, {1.0}}}, 1, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(make_exp_polynomial(2, {{1, {0.0}}}, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_exp_polynomial(1, {}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(one_term(1, 0).eval({1, 2}), std::invalid_argument);
}

TEST_CASE("the exponential sublevel set matches the analytic interval") {
  ExpPolynomial f = one_term(1, 1);  // e^t
  GoodCertificate cert = certificate(1, 1);
  Ball b{{0.5}, 0.5};
  double sup = std::exp(1.0);
  GoodCheckReport rep = empirical_good_check(f, b, sup / 2, cert);
  CHECK(rep.pass);
  CHECK(rep.sup_abs == doctest::Approx(sup).epsilon(1e-4));
  // {t in (0,1) : e^t < e/2} = (0, 1 - ln 2)
  CHECK(rep.sublevel_measure ==
        doctest::Approx(1 - std::log(2.0)).epsilon(1e-3));
  CHECK(rep.bound > rep.sublevel_measure);
}

TEST_CASE("constants clear the sublevel test with zero mass") {
  ExpPolynomial f = one_term(3, 0);
  GoodCheckReport rep = empirical_good_check(f, {{0.0}, 1.0}, 1.0,
                                             certificate(1, 1));
  CHECK(rep.pass);
  CHECK(rep.sublevel_measure == 0.0);
  CHECK(rep.ratio == 0.0);
}

TEST_CASE("seeded class members pass the sublevel inequality") {
  std::mt19937_64 rng(17);
  GoodCertificate cert = certificate(1, 1);
  std::uniform_real_distribution<double> cpos(-3.0, 3.0),
      crad(0.05, 0.5);
  for (int i = 0; i < 10; ++i) {
    ExpPolynomial f = sample_exp_polynomial(1, 1, 1, rng);
    for (int j = 0; j < 10; ++j) {
      Ball ball{{cpos(rng)}, crad(rng)};
      GoodCheckReport probe = empirical_good_check(f, ball, 1.0, cert);
      if (probe.sup_abs == 0) continue;
      for (double frac : {0.5, 1e-2, 1e-4}) {
        GoodCheckReport rep =
            empirical_good_check(f, ball, frac * probe.sup_abs, cert);
        CHECK(rep.pass);
      }
    }
  }
}

TEST_CASE("the sublevel ratio is invariant under scalar multiples") {
  std::mt19937_64 rng(29);
  GoodCertificate cert = certificate(1, 1);
  for (int i = 0; i < 5; ++i) {
    ExpPolynomial f = sample_exp_polynomial(1, 1, 1, rng);
    Ball ball{{0.7}, 0.4};
    GoodCheckReport base = empirical_good_check(f, ball, 0.3, cert);
    for (double c : {2.0, -5.0, 1.0 / 3}) {
      GoodCheckReport rep =
          empirical_good_check(scaled(f, c), ball, std::fabs(c) * 0.3, cert);
      CHECK(rep.pass == base.pass);
      CHECK(rep.ratio == doctest::Approx(base.ratio).epsilon(1e-6));
      CHECK(rep.sup_abs ==
            doctest::Approx(std::fabs(c) * base.sup_abs).epsilon(1e-12));
    }
  }
}

TEST_CASE("the class and the sublevel ratio are translation invariant") {
  std::mt19937_64 rng(31);
  GoodCertificate cert = certificate(1, 1);
  for (int i = 0; i < 5; ++i) {
    ExpPolynomial f = sample_exp_polynomial(1, 1, 1, rng);
    double t0 = 2.0 * i - 4;
    ExpPolynomial g = translated(f, {t0});
    for (double x : {-0.9, 0.0, 1.3})
      CHECK(g.eval({x}) == doctest::Approx(f.eval({x + t0})).epsilon(1e-12));
    GoodCheckReport a = empirical_good_check(f, {{0.2 + t0}, 0.3}, 0.25, cert);
    GoodCheckReport b = empirical_good_check(g, {{0.2}, 0.3}, 0.25, cert);
    CHECK(a.pass);
    CHECK(b.pass);
    CHECK(a.ratio == doctest::Approx(b.ratio).epsilon(1e-3));
  }
}

TEST_CASE("two-dimensional grids respect the disk geometry") {
  std::mt19937_64 rng(41);
  GoodCertificate cert = certificate(1, 0.5);
  ExpPolynomial f = sample_exp_polynomial(2, 1, 0.5, rng);
  Ball disk{{0.3, -0.2}, 0.8};
  GoodCheckReport probe = empirical_good_check(f, disk, 1.0, cert);
  REQUIRE(probe.sup_abs > 0);
  GoodCheckReport rep =
      empirical_good_check(f, disk, probe.sup_abs / 3, cert);
  CHECK(rep.pass);
  CHECK(rep.sublevel_measure <= 3.14159265358979323846 * 0.64 + 1e-9);

  // a constant is below eps everywhere: the full disk area must come back
  ExpPolynomial c0 = make_exp_polynomial(2, {{0.01, {0.0, 0.0}}}, 1, 0.5);
  GoodCheckReport full = empirical_good_check(c0, disk, 1.0, cert);
  CHECK(full.ratio == 1.0);
  CHECK(full.sublevel_measure ==
        doctest::Approx(3.14159265358979323846 * 0.64).epsilon(1e-12));
}

TEST_CASE("sublevel checks validate their inputs") {
  GoodCertificate cert = certificate(1, 1);
  ExpPolynomial f = one_term(1, 1);
  CHECK_THROWS_AS(empirical_good_check(f, {{0.0}, 0.0}, 1, cert),
                  std::invalid_argument);
  CHECK_THROWS_AS(empirical_good_check(f, {{0.0, 0.0}, 1.0}, 1, cert),
                  std::invalid_argument);
  CHECK_THROWS_AS(empirical_good_check(f, {{0.0}, 1.0}, 0, cert),
                  std::invalid_argument);
  ExpPolynomial h = make_exp_polynomial(
      3, {{1, {0.0, 0.0, 0.0}}}, 1, 1);
  CHECK_THROWS_AS(empirical_good_check(h, {{0, 0, 0}, 1.0}, 1, cert),
                  std::invalid_argument);
}
