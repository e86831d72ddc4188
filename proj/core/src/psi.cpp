#include "lieq/psi.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace lieq {

namespace {

// beta(v0) for every positive root; throws when v0 is irregular, naming the
// vanishing root
QVec regular_root_values(const Algebra& g, const QVec& v0,
                         const char* caller) {
  if (!g.in_a(v0))
    throw std::invalid_argument(std::string(caller) +
                                ": v0 must lie in the Cartan subalgebra");
  QVec bv(g.num_pos);
  for (int k = 0; k < g.num_pos; ++k) {
    bv[k] = g.root_value(g.pos_roots[k], v0);
    if (bv[k] == 0) {
      std::ostringstream os;
      os << caller << ": v0 is not regular: alpha(v0) = 0 for alpha = "
         << g.root_key(k, false);
      throw std::invalid_argument(os.str());
    }
  }
  return bv;
}

void require_in_w(const Algebra& g, const QVec& x, const char* caller) {
  if (int(x.size()) != g.dim || !g.in_w(x))
    throw std::invalid_argument(
        std::string(caller) +
        ": argument must be supported on the positive root spaces");
}

}  // namespace

//---------------------------------------------------------------- psi

QVec psi_map(const Algebra& g, const QVec& nu, const QVec& v0) {
  require_in_w(g, nu, "psi_map");
  regular_root_values(g, v0, "psi_map");
  QMat e = g.exp_ad_nilpotent(nu, QQ(-1));
  QVec out = qvec_sub(e.apply(v0), v0);
  if (!g.in_w(out))
    throw invariant_error("psi_map: image left the positive-height part");
  return out;
}

QVec psi_inverse(const Algebra& g, const QVec& w, const QVec& v0) {
  require_in_w(g, w, "psi_inverse");
  QVec bv = regular_root_values(g, v0, "psi_inverse");
  QVec nu = g.zero();
  // Heights are solved in increasing order: adding a height-h correction to
  // nu changes psi at heights >= h, and at height h itself only through the
  // diagonal linear term.
  for (int h = 1; h <= g.height_phi; ++h) {
    QVec cur = psi_map(g, nu, v0);
    for (int k = 0; k < g.num_pos; ++k) {
      if (g.pos_roots[k].height != h) continue;
      int i = g.pos_basis_index(k);
      nu[i] += (w[i] - cur[i]) / bv[k];
    }
  }
  if (psi_map(g, nu, v0) != w)
    throw invariant_error(
        "psi_inverse: height recursion failed to reproduce the input");
  return nu;
}

//---------------------------------------------------------------- jacobian

JacobianReport jacobian_check(const Algebra& g, const QVec& nu,
                              const QVec& v0) {
  require_in_w(g, nu, "jacobian_check");
  QVec bv = regular_root_values(g, v0, "jacobian_check");
  int H = g.height_phi;

  std::vector<QQ> fact(H + 2);
  fact[0] = 1;
  for (int i = 1; i <= H + 1; ++i) fact[i] = fact[i - 1] * i;

  // d/ds exp(A + sB) v0 at s = 0 is sum over a, b >= 0 of
  // A^a B A^b v0 / (a + b + 1)!, with A = ad(-nu) and B = ad(-E_gamma).
  // Every operator raises height, so the sums terminate at height_phi.
  QMat A = g.ad(nu).scaled(QQ(-1));
  std::vector<QVec> vb(H + 1);
  vb[0] = v0;
  for (int b = 1; b <= H; ++b) vb[b] = A.apply(vb[b - 1]);

  QMat jac(g.num_pos, g.num_pos);
  for (int gamma = 0; gamma < g.num_pos; ++gamma) {
    QMat B = g.ad(g.unit(g.pos_basis_index(gamma))).scaled(QQ(-1));
    QVec col = g.zero();
    for (int b = 0; b <= H; ++b) {
      QVec t = B.apply(vb[b]);
      for (int a = 0; a + b + 1 <= H + 1; ++a) {
        if (qvec_is_zero(t)) break;
        col = qvec_add(col, qvec_scale(QQ(1) / fact[a + b + 1], t));
        t = A.apply(t);
      }
    }
    if (!g.in_w(col))
      throw invariant_error("jacobian_check: derivative column left w");
    for (int p = 0; p < g.num_pos; ++p)
      jac.at(p, gamma) = col[g.pos_basis_index(p)];
  }

  JacobianReport rep;
  rep.derivative = jac;
  // Row i, column j of the unipotent factor pairs input slot i with output
  // slot j; entries below the diagonal vanish because output heights never
  // drop below input heights.
  QMat uni(g.num_pos, g.num_pos);
  bool upper = true;
  for (int i = 0; i < g.num_pos; ++i)
    for (int j = 0; j < g.num_pos; ++j) {
      uni.at(i, j) = jac.at(j, i) / bv[j];
      if (i > j && uni.at(i, j) != 0) upper = false;
      if (i == j && uni.at(i, j) != 1) upper = false;
    }
  rep.unipotent = uni;
  rep.det_derivative = jac.det();
  rep.det_unipotent = uni.det();
  rep.unit_upper_triangular = upper;
  return rep;
}

//---------------------------------------------------------------- sandwich

SandwichReport star_ball_sandwich(const Algebra& g, const QVec& v0, double T,
                                  int samples) {
  if (!g.in_a(v0))
    throw std::invalid_argument(
        "star_ball_sandwich: v0 must lie in the Cartan subalgebra");
  if (samples < 2)
    throw std::invalid_argument("star_ball_sandwich: need samples >= 2");

  int d = g.num_pos;
  double a = g.norm(v0);
  if (!(T > a))
    throw std::invalid_argument(
        "star_ball_sandwich: T must exceed ||v0|| = " + std::to_string(a));
  if (std::pow(double(samples), d) > 5e8)
    throw std::invalid_argument(
        "star_ball_sandwich: samples^dim(w) grid is too large");

  // Orthonormal grid coordinates: slot k scaled by sqrt(g_k). The cross
  // inner products <E_k, v0> are kept literal rather than assumed zero.
  std::vector<double> gk(d), cross(d);
  for (int k = 0; k < d; ++k) {
    int i = g.pos_basis_index(k);
    gk[k] = qd(g.gram.at(i, i));
    cross[k] = qd(g.inner(g.unit(i), v0)) / std::sqrt(gk[k]);
  }
  double a2 = qd(g.norm_sq(v0));
  double t2 = T * T;

  double box = T + a;  // C_T sits inside the ball of radius T + ||v0||
  double h = 2 * box / samples;
  long long count = 0;
  std::vector<int> idx(d, 0);
  std::vector<double> y(d);
  for (;;) {
    double q = a2;
    for (int k = 0; k < d; ++k) {
      y[k] = -box + h * (idx[k] + 0.5);
      q += y[k] * y[k] + 2 * y[k] * cross[k];
    }
    if (q < t2) ++count;
    int k = d - 1;
    while (k >= 0 && ++idx[k] == samples) idx[k--] = 0;
    if (k < 0) break;
  }

  SandwichReport rep;
  rep.t = T;
  rep.v0_norm = a;
  rep.dim_w = d;
  rep.estimate = double(count) * std::pow(h, d);
  double unit = std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
  rep.lower = unit * std::pow(T - a, d);
  rep.upper = unit * std::pow(T + a, d);
  rep.grid_slack = 8.0 * d / samples;
  rep.holds = rep.estimate >= rep.lower * (1 - rep.grid_slack) &&
              rep.estimate <= rep.upper * (1 + rep.grid_slack);
  return rep;
}

}  // namespace lieq
