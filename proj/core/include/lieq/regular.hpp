#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lieq/algebra.hpp"

namespace lieq {

// sl2 triple with [h, n_hat] = n_hat, [h, n_check] = -n_check,
// [n_hat, n_check] = 2h (half-normalized convention)
struct Sl2Triple {
  QVec n_hat, h, n_check;
};

struct Irrep {
  int j = 0;      // 1-based, ordered by kappa descending, ties by basis order
  int kappa = 0;  // highest ad(h)-weight
  std::vector<QVec> vectors;  // index k + kappa holds the weight-k vector
};

struct Sl2Data {
  Sl2Triple triple;
  std::vector<Irrep> irreps;
  std::vector<QVec> centralizer_basis;  // Z(n_hat) = span of top vectors
  std::vector<QVec> u_n_basis;          // nilradical: tops with kappa >= 1
  bool scaled_basis = false;  // coordinates in the norm-scaled root basis
};

// Scaled root basis E_beta / m_beta with m_beta^2 = r^{height} prod_alpha
// g_alpha^{c_alpha}. m is multiplicative over root addition, so structure
// constants are unchanged and all bracket computations carry over verbatim.
struct TildeScale {
  std::vector<QQ> m_sq;  // per positive root
  double m(int k) const;
  std::optional<QQ> m_exact(int k) const;
};
TildeScale tilde_scale(const Algebra& g);

// epsilon = sqrt(r) min_{alpha in Pi} ||n_alpha|| / ||n||; 0 on the
// irregular locus. epsilon^2 is rational and returned exactly.
double epsilon_regularity(const Algebra& g, const QVec& n);
QQ epsilon_regularity_sq(const Algebra& g, const QVec& n);

// coefficient-based variant for sl3 only (different normalization:
// min(|x|,|y|)/sqrt(x^2+y^2+z^2) for n = xE12+yE23+zE13); convenience
// predicate, not the regularity constant used elsewhere
double sl3_coefficient_regularity(const Algebra& g, const QVec& n);

// n_hat = sum of simple root vectors, h = h_natural, n_check solved from the
// triple relations; weight decomposition attached. With normalized = true the
// same coordinates are interpreted in the scaled basis, which realizes the
// variant whose simple components all have norm 1/sqrt(r).
Sl2Data natural_triple(const Algebra& g, bool normalized = false);

// decompose the adjoint representation under a given triple
Sl2Data weight_decompose(const Algebra& g, const Sl2Triple& t,
                         bool scaled_basis = false);

// action of Ad(exp sigma): the factor on the root-beta space is
// q[k] * sqrt(m_sq[k]) (stored split so exactness survives when possible)
struct CartanScaling {
  std::vector<QQ> q;
  std::vector<QQ> m_sq;
  double factor(int k) const;
  std::optional<QQ> factor_exact(int k) const;
  bool all_exact() const;
};

struct ConjugationData {
  QVec n;  // input, standard coordinates
  QQ epsilon_sq;
  double epsilon = 0;
  // scaled-basis coordinates (exact): n_natural is +-1 on simple slots
  QVec n_natural;
  QVec omega;  // in w, heights 1..height(Phi)-1, orthogonal to Z(n_natural)
  CartanScaling sigma_action;
  // standard-coordinate float views
  std::vector<double> n_natural_std, omega_std;
};

// n = Ad(exp sigma) Ad(exp omega) n_natural; throws invariant_error naming
// the vanishing simple root when n is not regular
ConjugationData jordan_decompose(const Algebra& g, const QVec& n);

// G-norm error of the all-double reconstruction pipeline
double jordan_reconstruction_error(const Algebra& g, const ConjugationData& c);
// exact identity n_beta = q_beta * (exp(ad omega_tilde) n_natural)_beta
bool jordan_reconstruction_exact(const Algebra& g, const ConjugationData& c);

struct OperatorBoundReport {
  double epsilon = 0, norm_n = 0;
  // measured G-operator norms on all of g
  double sigma_fwd = 0, sigma_inv = 0, omega_fwd = 0, omega_inv = 0;
  // measured with the domain restricted to a + w
  double sigma_fwd_aw = 0, sigma_inv_aw = 0, omega_fwd_aw = 0, omega_inv_aw = 0;
  // predicted ceilings
  double sigma_fwd_env = 0;   // (sqrt(r)||n||)^h, guaranteed on a+w
  double sigma_inv_env = 0;   // eps^{-h}||n||^h, guaranteed on a+w
  double sigma_full_env = 0;  // max of the two, guaranteed on all of g
  double omega_env = 0;       // eps^{-4h(h-1)}, up to a fitted constant
  double omega_env_aw = 0;    // eps^{-2h(h-1)}, up to a fitted constant
  std::vector<std::string> violations;  // breaches of the guaranteed bounds
};
OperatorBoundReport operator_bound_report(const Algebra& g, const QVec& n,
                                          double epsilon);

// integer coefficients in [-9, 9] on every positive root space, resampled
// until every simple component is nonzero; engine output used directly so
// draws are identical across platforms
QVec sample_regular_nilpotent(const Algebra& g, std::mt19937_64& rng);

}  // namespace lieq
