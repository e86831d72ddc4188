#pragma once

#include <random>
#include <vector>

namespace lieq {

// member of E(r, Lambda, delta): sum of c_j exp(lambda_j . x) with bounded,
// coordinate-wise separated exponent vectors
struct ExpTerm {
  double c = 0;
  std::vector<double> lambda;
};

struct ExpPolynomial {
  int dim = 1;
  std::vector<ExpTerm> terms;
  double Lambda = 1, delta = 1;

  double eval(const std::vector<double>& x) const;
};

// validates |lambda| <= Lambda, per-coordinate separation >= delta, and the
// forced term bound n <= 2 Lambda / delta; throws std::invalid_argument
ExpPolynomial make_exp_polynomial(int dim, std::vector<ExpTerm> terms,
                                  double Lambda, double delta);

// class-preserving symmetries: scalar multiple and domain translation
ExpPolynomial scaled(const ExpPolynomial& f, double c);
ExpPolynomial translated(const ExpPolynomial& f, const std::vector<double>& t0);

// admissible sample with exponents spread by stick-breaking, so the
// separation constraint holds by construction
ExpPolynomial sample_exp_polynomial(int dim, double Lambda, double delta,
                                    std::mt19937_64& rng);

//---------------------------------------------------------------- certificates

// extended precision: b drops to ~1e-636 already at (Lambda, delta) = (4, 1/4),
// far below double range, while staying comfortably inside long double
struct GoodCertificate {
  long double C = 0, alpha = 0;  // sublevel constants
  long double b = 0, B = 0;      // derivative floor / ceiling on (-1, 1)
  long double eta = 0;           // radius where the floor persists
};

// closed-form certificate for E(Lambda, delta); requires Lambda >= 1 and
// delta > 0
GoodCertificate certificate(double Lambda, double delta);

struct VandermondeReport {
  double det_abs = 0;
  double floor = 0;
  bool pass = false;
};

// |det| of the exponent power matrix against the separation floor
// delta^{n(n+1)/2}; repeated exponents are rejected
VandermondeReport vandermonde_floor(const std::vector<double>& lambda,
                                    double delta);

//---------------------------------------------------------------- sublevels

struct Ball {
  std::vector<double> center;
  double radius = 0;
};

struct GoodCheckReport {
  double sublevel_measure = 0;  // Leb{x in B : |f(x)| < eps}, grid estimate
  double sup_abs = 0;           // sup |f| over the ball grid
  double bound = 0;             // C (eps / sup)^alpha Leb(B)
  double ratio = 0;             // sublevel fraction of the ball
  bool pass = false;
};

// deterministic grid test of the sublevel inequality; dim 1 uses at least
// 1e5 points, dim 2 at least 1e4 over the bounding square
GoodCheckReport empirical_good_check(const ExpPolynomial& f, const Ball& ball,
                                     double eps, const GoodCertificate& cert);

}  // namespace lieq
