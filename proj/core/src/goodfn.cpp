#include "lieq/goodfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lieq {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double ExpPolynomial::eval(const std::vector<double>& x) const {
  if (int(x.size()) != dim)
    throw std::invalid_argument("eval: point dimension mismatch");
  double s = 0;
  for (const ExpTerm& t : terms) {
    double e = 0;
    for (int k = 0; k < dim; ++k) e += t.lambda[k] * x[k];
    s += t.c * std::exp(e);
  }
  return s;
}

ExpPolynomial make_exp_polynomial(int dim, std::vector<ExpTerm> terms,
                                  double Lambda, double delta) {
  require(dim >= 1, "exp polynomial: dimension must be positive");
  require(Lambda >= 1, "exp polynomial: Lambda below one");
  require(delta > 0, "exp polynomial: delta must be positive");
  require(!terms.empty(), "exp polynomial: no terms");
  require(double(terms.size()) - 1 <= 2 * Lambda / delta,
          "exp polynomial: too many terms for the separation");
  for (const ExpTerm& t : terms) {
    require(int(t.lambda.size()) == dim, "exp polynomial: exponent dimension");
    for (double l : t.lambda)
      require(std::fabs(l) <= Lambda, "exp polynomial: exponent above Lambda");
  }
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i + 1; j < terms.size(); ++j)
      for (int k = 0; k < dim; ++k)
        require(std::fabs(terms[i].lambda[k] - terms[j].lambda[k]) >=
                    delta * (1 - 1e-12),
                "exp polynomial: exponents closer than delta");
  ExpPolynomial f;
  f.dim = dim;
  f.terms = std::move(terms);
  f.Lambda = Lambda;
  f.delta = delta;
  return f;
}

ExpPolynomial scaled(const ExpPolynomial& f, double c) {
  ExpPolynomial g = f;
  for (ExpTerm& t : g.terms) t.c *= c;
  return g;
}

ExpPolynomial translated(const ExpPolynomial& f,
                         const std::vector<double>& t0) {
  if (int(t0.size()) != f.dim)
    throw std::invalid_argument("translated: shift dimension mismatch");
  // f(x + t0) absorbs the shift into the coefficients; exponents survive,
  // so membership in the class is preserved
  ExpPolynomial g = f;
  for (ExpTerm& t : g.terms) {
    double e = 0;
    for (int k = 0; k < f.dim; ++k) e += t.lambda[k] * t0[k];
    t.c *= std::exp(e);
  }
  return g;
}

ExpPolynomial sample_exp_polynomial(int dim, double Lambda, double delta,
                                    std::mt19937_64& rng) {
  require(dim >= 1 && Lambda >= 1 && delta > 0, "sample: bad class parameters");
  int max_terms = int(std::floor(2 * Lambda / delta)) + 1;
  std::uniform_int_distribution<int> count(1, std::min(4, max_terms));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int m = count(rng);
  // per coordinate: m exponents in [-Lambda, Lambda] with gaps >= delta,
  // placed by distributing the slack, then shuffled across terms
  std::vector<ExpTerm> terms(m);
  for (ExpTerm& t : terms) {
    t.lambda.resize(dim);
    t.c = 4 * unit(rng) - 2;
    if (std::fabs(t.c) < 0.1) t.c = t.c < 0 ? -0.1 : 0.1;
  }
  for (int k = 0; k < dim; ++k) {
    double slack = 2 * Lambda - (m - 1) * delta;
    std::vector<double> cuts(m + 1);
    for (double& c : cuts) c = unit(rng);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> vals(m);
    double pos = -Lambda + slack * cuts[0];
    vals[0] = pos;
    for (int i = 1; i < m; ++i) {
      pos += delta + slack * (cuts[i] - cuts[i - 1]);
      vals[i] = pos;
    }
    std::shuffle(vals.begin(), vals.end(), rng);
    for (int i = 0; i < m; ++i) terms[i].lambda[k] = vals[i];
  }
  return make_exp_polynomial(dim, std::move(terms), Lambda, delta);
}

//---------------------------------------------------------------- certificates

GoodCertificate certificate(double Lambda, double delta) {
  require(Lambda >= 1, "certificate: Lambda below one");
  require(delta > 0, "certificate: delta must be positive");
  // evaluated through logarithms: B/b alone passes 1e650 on the test grid
  long double L = Lambda, d = delta;
  long double m = 2 * L / d;  // the derivative-order ceiling
  GoodCertificate c;
  c.alpha = d / (2 * L);
  long double log_b = -1.5L * std::log(m + 1) - (L / d) * std::log(m) +
                      (L / d) * (m + 1) * std::log(d / L) -
                      std::log(2.0L);
  long double log_B =
      0.5L * std::log(m + 1) + m * std::log(L) + L;  // (m+1) powers over L
  c.b = std::exp(log_b);
  c.B = std::exp(log_B);
  c.eta = std::exp(log_b - 0.5L * std::log(m + 1) - (m + 1) * std::log(L) - L);
  long double log_two_mm = std::log(2.0L) + m * std::log(m);
  c.C = m * (m + 1) *
        std::exp(c.alpha * (log_B - log_b + std::log(m + 1) + log_two_mm +
                            std::log1p(std::exp(-log_two_mm))));
  require(std::isfinite(c.C) && c.b > 0 && c.eta > 0 && c.C > 0,
          "certificate: constants overflow for these parameters");
  return c;
}

VandermondeReport vandermonde_floor(const std::vector<double>& lambda,
                                    double delta) {
  require(lambda.size() >= 2, "vandermonde: need at least two exponents");
  require(delta > 0, "vandermonde: delta must be positive");
  VandermondeReport r;
  r.det_abs = 1;
  for (size_t j = 0; j < lambda.size(); ++j)
    for (size_t k = j + 1; k < lambda.size(); ++k) {
      double d = std::fabs(lambda[k] - lambda[j]);
      require(d > 0, "vandermonde: repeated exponent");
      r.det_abs *= d;
    }
  double n = double(lambda.size()) - 1;
  r.floor = std::pow(delta, n * (n + 1) / 2);
  r.pass = r.det_abs >= r.floor * (1 - 1e-12);
  return r;
}

//---------------------------------------------------------------- sublevels

GoodCheckReport empirical_good_check(const ExpPolynomial& f, const Ball& ball,
                                     double eps, const GoodCertificate& cert) {
  require(ball.radius > 0, "good check: degenerate ball");
  require(int(ball.center.size()) == f.dim, "good check: ball dimension");
  require(eps > 0, "good check: epsilon must be positive");
  require(f.dim <= 2, "good check: grids cover dimensions one and two only");

  int64_t per_axis = f.dim == 1 ? 100001 : 101;
  int64_t inside = 0, below = 0;
  double sup = 0;
  std::vector<double> x(f.dim);
  double r2 = ball.radius * ball.radius;
  int64_t total = f.dim == 1 ? per_axis : per_axis * per_axis;
  for (int64_t idx = 0; idx < total; ++idx) {
    int64_t rem = idx;
    double d2 = 0;
    for (int k = 0; k < f.dim; ++k) {
      int64_t step = rem % per_axis;
      rem /= per_axis;
      double off = ball.radius * (2 * double(step) / double(per_axis - 1) - 1);
      x[k] = ball.center[k] + off;
      d2 += off * off;
    }
    if (d2 >= r2) continue;  // open ball
    ++inside;
    double v = std::fabs(f.eval(x));
    sup = std::max(sup, v);
    if (v < eps) ++below;
  }
  GoodCheckReport rep;
  if (inside == 0) throw std::invalid_argument("good check: empty grid");
  double leb = f.dim == 1 ? 2 * ball.radius
                          : 3.14159265358979323846 * ball.radius * ball.radius;
  rep.sup_abs = sup;
  rep.ratio = double(below) / double(inside);
  rep.sublevel_measure = rep.ratio * leb;
  if (sup == 0) {  // identically zero on the grid; the inequality is void
    rep.bound = leb * cert.C;
    rep.pass = true;
    return rep;
  }
  rep.bound = cert.C * std::pow(eps / sup, cert.alpha) * leb;
  rep.pass = rep.sublevel_measure <= rep.bound * (1 + 1e-9);
  return rep;
}

}  // namespace lieq
