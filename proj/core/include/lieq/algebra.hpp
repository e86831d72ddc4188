#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lieq/qmat.hpp"

namespace lieq {

// A positive root, aligned with one basis slot (its negative sits in the
// mirrored slot). coords are over the simple roots of the full (product)
// algebra, heights are per-factor sums.
struct Root {
  std::vector<int> coords;  // length = rank
  int height = 0;
  int factor = 0;           // which simple factor it belongs to
  QVec h_values;            // beta(h_i) for each Cartan basis element
};

// Split semisimple Lie algebra over Q given by a defining matrix
// representation. Basis order: Cartan h_1..h_r, then positive root vectors
// by (height, lexicographic coords), then the negative root vectors in the
// mirrored order. Construction runs structural self-tests (independence,
// eigen-relations, bracket closure) and throws invariant_error on failure.
class Algebra {
 public:
  // tags: sl2, sl3, sl4, sp4, g2, products like "sl2xsl2" (aliases
  // A1, A2, A3, C2, G2 accepted, case-insensitive)
  static const Algebra& get(const std::string& tag);
  static std::string canonical_tag(const std::string& tag);
  static const std::vector<std::string>& known_tags();

  std::string tag;
  int rep_dim = 0;    // n of the n x n matrices
  int rank = 0;       // r
  int dim = 0;        // |basis|
  int num_pos = 0;    // number of positive roots
  int height_phi = 0; // height of the highest root (max over factors)
  int num_factors = 1;

  std::vector<QMat> basis;
  std::vector<Root> pos_roots;        // size num_pos
  std::vector<int> simple_pos_index;  // pos_roots index of each simple root, by coord slot
  std::vector<int> factor_of_cartan;  // size rank

  QMat gram;  // exact Gram matrix of <X,Y> = tr(X Y^T), block diagonal

  // --- index helpers ---
  int pos_basis_index(int k) const { return rank + k; }
  int neg_basis_index(int k) const { return rank + num_pos + k; }
  bool is_cartan_index(int i) const { return i < rank; }

  // --- element operations on coefficient vectors (length dim) ---
  QVec bracket(const QVec& x, const QVec& y) const;
  QMat ad(const QVec& x) const;
  QMat matrix_of(const QVec& coeffs) const;         // rep_dim x rep_dim
  QVec coords_of_matrix(const QMat& m) const;       // throws if outside span
  QQ inner(const QVec& x, const QVec& y) const;
  QQ norm_sq(const QVec& x) const;
  double norm(const QVec& x) const;

  // exp(ad(t n)) as dim x dim rational matrix; throws if ad(n) not nilpotent
  QMat exp_ad_nilpotent(const QVec& n, const QQ& t = QQ(1)) const;

  // unique h in the Cartan with alpha(h) = 1 for all simple alpha
  QVec h_natural() const;

  // beta(h) for h given by Cartan coefficients (first rank coords used)
  QQ root_value(const Root& beta, const QVec& h) const;

  // component decomposition. keys: "cartan", "+c1,c2,..", "-c1,c2,.."
  std::map<std::string, QVec> root_decompose(const QVec& x) const;

  // zero coefficient vector / basis unit
  QVec zero() const { return QVec(dim); }
  QVec unit(int basis_index) const;

  // element of w (positive-height part) from root-coord map; missing = 0
  QVec from_pos_root_map(const std::map<std::vector<int>, QQ>& m) const;

  // is x supported only on positive root spaces?
  bool in_w(const QVec& x) const;
  // is x supported only on the Cartan?
  bool in_a(const QVec& x) const;

  // exact orthogonal (unnormalized Gram-Schmidt) basis of the Cartan,
  // ordered per factor; used as the tau basis for orbit curves
  std::vector<QVec> cartan_orthogonal_basis() const;

  // full structural validation (closure, Jacobi, orthogonality, heights);
  // returns number of checks run, throws invariant_error on failure
  int self_check() const;

  std::string root_key(int pos_index, bool negative) const;

 private:
  friend struct AlgebraBuilder;
  Algebra() = default;
  void finalize();  // builds tables + runs construction self-tests

  std::vector<std::vector<QVec>> btab_;  // bracket table [i][j] -> coords
  QMat basis_flat_rref_;                 // solver cache for coords_of_matrix
  std::vector<int> basis_flat_piv_;
};

}  // namespace lieq
