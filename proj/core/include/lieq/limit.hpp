#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lieq/qmat.hpp"
#include "lieq/regular.hpp"

namespace lieq {

// lex-ordered list of grade-r subsets of {0,...,n-1}, encoded as bitmasks
const std::vector<uint32_t>& wedge_masks(int n, int r);
int wedge_index(int n, int r, uint32_t mask);

// Exterior-power vector. Coordinates are taken in the orthogonal frame of
// the algebra (the orthogonal Cartan frame followed by the root vectors),
// where the Gram matrix is diagonal, so wedge inner products reduce to
// weighted coordinate sums.
struct WedgeVector {
  int grade = 0;
  QVec coords;  // indexed by wedge_masks(dim, grade)
};

// coordinate change between standard coordinates and the orthogonal frame
struct WedgeFrame {
  explicit WedgeFrame(const Algebra& g);
  const Algebra* alg;
  std::vector<QVec> tau;  // Cartan frame vectors, standard coordinates
  QVec weight;            // squared norms of the frame vectors
  QVec to_frame(const QVec& std_coords) const;
  QVec to_std(const QVec& frame_coords) const;

 private:
  QMat cartan_fwd_, cartan_inv_;
};

// exterior product of independent vectors given in standard coordinates
WedgeVector wedge_of(const Algebra& g, const std::vector<QVec>& vectors);
// equals the Gram determinant of the constituents
QQ wedge_inner(const Algebra& g, const WedgeVector& a, const WedgeVector& b);
double wedge_norm(const Algebra& g, const WedgeVector& a);
// projective distance min{||a^ - b^||, ||a^ + b^||} of the normalized wedges
double fubini_study(const Algebra& g, const WedgeVector& a,
                    const WedgeVector& b);

struct GrassmannCurve {
  int grade = 0;
  std::vector<WedgeVector> coefficients;  // index = power of t
  int degree = 0;                         // highest nonzero coefficient
  WedgeVector eval(const QQ& t) const;
};

// t -> wedge of exp(ad(t n)) applied to an orthogonal basis of the Cartan
// (or of the given subspace); exact product of the per-factor polynomials
GrassmannCurve orbit_curve(const Algebra& g, const QVec& n);
GrassmannCurve orbit_curve(const Algebra& g, const QVec& n,
                           const std::vector<QVec>& tau);

struct LimitingResult {
  std::vector<QVec> subspace_basis;  // standard coordinates, spans l(inf)
  int leading_degree = 0;
  double c_phi = 0;  // 4 max{1, n||x_{n-1}||, ..., n||x_0||}, ||x_n|| = 1
  bool is_lie_algebra = false;
  bool is_abelian = false;
  bool is_quasi_centralizing = false;
  bool is_centralizing = false;
  std::optional<QVec> witness;  // n' in l(inf) with top projection = n
  // diagnostics filled by classify
  double epsilon = 0;
  // Principal-angle cosines between the limit and u_n in the string metric
  // (weight basis orthogonal, pushforward norms).  pairing is their product,
  // exactly zero iff the projection onto u_n degenerates on the limit;
  // pi_upper/pi_lower are the extreme cosines, always within [0, 1].
  double pairing = 0;
  double pi_upper = 0, pi_lower = 0;
  double pi_lower_env = 0;  // epsilon^{6 r height(Phi)^2} reference floor
  bool witness_gap_ok = false;  // witness - n supported in grades >= 2
};

// subspace recovery from the leading coefficient: kernel of v -> v ^ P
LimitingResult leading_subspace(const Algebra& g, const GrassmannCurve& curve);

// full classification of the limiting space of a regular element
LimitingResult classify(const Algebra& g, const QVec& n);

// regular element of g2 whose limiting space fails the projection test
QVec g2_counterexample();

struct ConvergenceRow {
  QQ t;
  double distance = 0, bound = 0;
  bool within = false;
};
std::vector<ConvergenceRow> convergence_report(const Algebra& g, const QVec& n,
                                               const std::vector<QQ>& t_grid);

// smallest singular value of exp(ad(T n)) restricted to the Cartan
double expansion_floor(const Algebra& g, const QVec& n, double T);

}  // namespace lieq
