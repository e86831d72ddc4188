#include "lieq/regular.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace lieq {

namespace {

Eigen::MatrixXd to_eigen(const QMat& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = qd(m.at(i, j));
  return out;
}

// operator norm of A w.r.t. the inner product given by gram (optionally with
// the domain restricted to a coordinate subset; valid here because gram is
// block diagonal along the same split, so the G-orthonormalization preserves
// the subspace)
double op_norm(const Eigen::MatrixXd& A, const Eigen::MatrixXd& gram,
               const std::vector<int>* domain = nullptr) {
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  Eigen::MatrixXd LT = Eigen::MatrixXd(llt.matrixL()).transpose();
  Eigen::MatrixXd inv_LT = LT.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXd::Identity(LT.rows(), LT.cols()));
  Eigen::MatrixXd B = LT * A * inv_LT;
  if (domain) {
    Eigen::MatrixXd sel(B.rows(), domain->size());
    for (size_t c = 0; c < domain->size(); ++c) sel.col(c) = B.col((*domain)[c]);
    B = sel;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
  return svd.singularValues()(0);
}

}  // namespace

//---------------------------------------------------------------- scaling

double TildeScale::m(int k) const { return std::sqrt(qd(m_sq[k])); }

std::optional<QQ> TildeScale::m_exact(int k) const {
  return qq_sqrt_exact(m_sq[k]);
}

TildeScale tilde_scale(const Algebra& g) {
  TildeScale t;
  for (int k = 0; k < g.num_pos; ++k) {
    const Root& r = g.pos_roots[k];
    QQ v = 1;
    for (int i = 0; i < r.height; ++i) v *= g.rank;
    for (int s = 0; s < g.rank; ++s) {
      int b = g.pos_basis_index(g.simple_pos_index[s]);
      for (int c = 0; c < r.coords[s]; ++c) v *= g.gram.at(b, b);
    }
    t.m_sq.push_back(v);
  }
  return t;
}

//---------------------------------------------------------------- regularity

QQ epsilon_regularity_sq(const Algebra& g, const QVec& n) {
  if (!g.in_w(n))
    throw std::invalid_argument("epsilon_regularity: element not in w");
  QQ nsq = g.norm_sq(n);
  if (nsq == 0) return QQ(0);
  std::optional<QQ> min_sq;
  for (int s = 0; s < g.rank; ++s) {
    int b = g.pos_basis_index(g.simple_pos_index[s]);
    QQ comp = n[b] * n[b] * g.gram.at(b, b);
    if (!min_sq || comp < *min_sq) min_sq = comp;
  }
  return QQ(g.rank) * *min_sq / nsq;
}

double epsilon_regularity(const Algebra& g, const QVec& n) {
  return std::sqrt(qd(epsilon_regularity_sq(g, n)));
}

double sl3_coefficient_regularity(const Algebra& g, const QVec& n) {
  if (g.tag != "sl3")
    throw std::invalid_argument("sl3_coefficient_regularity: sl3 only");
  if (!g.in_w(n))
    throw std::invalid_argument("sl3_coefficient_regularity: element not in w");
  double x = qd(n[g.pos_basis_index(1)]);  // E12
  double y = qd(n[g.pos_basis_index(0)]);  // E23
  double z = qd(n[g.pos_basis_index(2)]);  // E13
  double len = std::sqrt(x * x + y * y + z * z);
  if (len == 0) return 0;
  return std::min(std::fabs(x), std::fabs(y)) / len;
}

//---------------------------------------------------------------- triples

Sl2Data natural_triple(const Algebra& g, bool normalized) {
  Sl2Triple t;
  t.n_hat = g.zero();
  for (int s = 0; s < g.rank; ++s)
    t.n_hat[g.pos_basis_index(g.simple_pos_index[s])] = 1;
  t.h = g.h_natural();

  // n_check = sum_s c_s E_{-alpha_s} with sum_s c_s [E_s, E_{-s}] = 2h
  QMat M(g.rank, g.rank);
  for (int s = 0; s < g.rank; ++s) {
    int k = g.simple_pos_index[s];
    QVec Hs = g.bracket(g.unit(g.pos_basis_index(k)),
                        g.unit(g.neg_basis_index(k)));
    if (!g.in_a(Hs))
      throw invariant_error("natural_triple: [E,F] not in the Cartan");
    for (int i = 0; i < g.rank; ++i) M.at(i, s) = Hs[i];
  }
  QVec rhs(g.rank);
  for (int i = 0; i < g.rank; ++i) rhs[i] = 2 * t.h[i];
  auto c = M.solve(rhs);
  if (!c) throw invariant_error("natural_triple: inconsistent linear system");
  t.n_check = g.zero();
  for (int s = 0; s < g.rank; ++s)
    t.n_check[g.neg_basis_index(g.simple_pos_index[s])] = (*c)[s];

  return weight_decompose(g, t, normalized);
}

Sl2Data weight_decompose(const Algebra& g, const Sl2Triple& t,
                         bool scaled_basis) {
  if (g.bracket(t.h, t.n_hat) != t.n_hat ||
      g.bracket(t.h, t.n_check) != qvec_scale(QQ(-1), t.n_check) ||
      g.bracket(t.n_hat, t.n_check) != qvec_scale(QQ(2), t.h))
    throw invariant_error("weight_decompose: triple relations violated");

  Sl2Data out;
  out.triple = t;
  out.scaled_basis = scaled_basis;

  QMat A = g.ad(t.h);
  QMat adn = g.ad(t.n_hat);

  // integer ad(h)-eigenvalues; a valid triple diagonalizes with these
  std::map<int, int> eig_dim;
  int total = 0;
  for (int k = -g.dim; k <= g.dim; ++k) {
    QMat B = A - QMat::identity(g.dim).scaled(QQ(k));
    int d = g.dim - B.rank();
    if (d > 0) {
      eig_dim[k] = d;
      total += d;
    }
  }
  if (total != g.dim)
    throw invariant_error("weight_decompose: defective eigenstructure");

  int jidx = 0, dim_sum = 0;
  for (int kappa = g.dim; kappa >= 0; --kappa) {
    if (!eig_dim.count(kappa)) continue;
    // highest weight vectors: ker(ad h - kappa) ∩ ker(ad n_hat)
    QMat stacked(2 * g.dim, g.dim);
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j) {
        stacked.at(i, j) = A.at(i, j) - (i == j ? QQ(kappa) : QQ(0));
        stacked.at(g.dim + i, j) = adn.at(i, j);
      }
    QMat hw = stacked.kernel();
    for (int c = 0; c < hw.cols(); ++c) {
      Irrep irr;
      irr.kappa = kappa;
      irr.j = ++jidx;
      std::vector<QVec> desc;  // weights kappa, kappa-1, ..., -kappa
      QVec v = hw.col(c);
      desc.push_back(v);
      for (int k = kappa; k > -kappa; --k) {
        v = g.bracket(t.n_check, v);
        if (qvec_is_zero(v))
          throw invariant_error("weight_decompose: string broke early");
        desc.push_back(v);
      }
      if (!qvec_is_zero(g.bracket(t.n_check, desc.back())))
        throw invariant_error("weight_decompose: string does not terminate");
      // raising checks: ad(n_hat) kills the top, is nonzero below it
      for (int i = 0; i < int(desc.size()); ++i) {
        QVec up = g.bracket(t.n_hat, desc[i]);
        if (i == 0) {
          if (!qvec_is_zero(up))
            throw invariant_error("weight_decompose: top vector not killed");
        } else if (qvec_is_zero(up)) {
          throw invariant_error("weight_decompose: raising map vanished");
        }
      }
      irr.vectors.assign(desc.rbegin(), desc.rend());
      dim_sum += 2 * kappa + 1;
      out.irreps.push_back(std::move(irr));
    }
  }
  if (dim_sum != g.dim)
    throw invariant_error("weight_decompose: irreps do not fill the algebra");

  for (const Irrep& irr : out.irreps) {
    out.centralizer_basis.push_back(irr.vectors.back());
    if (irr.kappa >= 1) out.u_n_basis.push_back(irr.vectors.back());
  }
  return out;
}

//---------------------------------------------------------------- jordan

double CartanScaling::factor(int k) const {
  return qd(q[k]) * std::sqrt(qd(m_sq[k]));
}

std::optional<QQ> CartanScaling::factor_exact(int k) const {
  auto m = qq_sqrt_exact(m_sq[k]);
  if (!m) return std::nullopt;
  return q[k] * *m;
}

bool CartanScaling::all_exact() const {
  for (size_t k = 0; k < m_sq.size(); ++k)
    if (!qq_sqrt_exact(m_sq[k])) return false;
  return true;
}

ConjugationData jordan_decompose(const Algebra& g, const QVec& n) {
  if (!g.in_w(n))
    throw std::invalid_argument("jordan_decompose: element not in w");
  for (int s = 0; s < g.rank; ++s) {
    int k = g.simple_pos_index[s];
    if (n[g.pos_basis_index(k)] == 0)
      throw invariant_error(
          "jordan_decompose: not regular: vanishing component on simple root " +
          g.root_key(k, false));
  }

  ConjugationData cd;
  cd.n = n;
  cd.epsilon_sq = epsilon_regularity_sq(g, n);
  cd.epsilon = std::sqrt(qd(cd.epsilon_sq));

  TildeScale ts = tilde_scale(g);
  cd.sigma_action.m_sq = ts.m_sq;
  cd.sigma_action.q.resize(g.num_pos);
  for (int k = 0; k < g.num_pos; ++k) {
    QQ qk = 1;
    for (int s = 0; s < g.rank; ++s) {
      QQ a = abs(n[g.pos_basis_index(g.simple_pos_index[s])]);
      for (int c = 0; c < g.pos_roots[k].coords[s]; ++c) qk *= a;
    }
    cd.sigma_action.q[k] = qk;
  }

  // scaled-basis coordinates of Ad(exp(-sigma)) n
  QVec ntil = g.zero();
  for (int k = 0; k < g.num_pos; ++k)
    ntil[g.pos_basis_index(k)] = n[g.pos_basis_index(k)] / cd.sigma_action.q[k];

  cd.n_natural = g.zero();
  for (int s = 0; s < g.rank; ++s) {
    int b = g.pos_basis_index(g.simple_pos_index[s]);
    cd.n_natural[b] = qsign(n[b]);
  }

  // height induction: w built so that Ad(exp w) ntil = n_natural, each stage
  // the least-norm solution (normal equations with the scaled Gram), hence
  // orthogonal to ker(ad n_natural) height by height
  QVec w = g.zero();
  for (int p = 1; p <= g.height_phi - 1; ++p) {
    QVec cur = g.exp_ad_nilpotent(w).apply(ntil);
    std::vector<int> rows_idx, cols_idx;
    for (int k = 0; k < g.num_pos; ++k) {
      if (g.pos_roots[k].height == p + 1) rows_idx.push_back(k);
      if (g.pos_roots[k].height == p) cols_idx.push_back(k);
    }
    if (rows_idx.empty()) break;
    QVec b(rows_idx.size());
    bool all_zero = true;
    for (size_t r = 0; r < rows_idx.size(); ++r) {
      b[r] = -cur[g.pos_basis_index(rows_idx[r])];
      if (b[r] != 0) all_zero = false;
    }
    if (all_zero) continue;
    QMat A(int(rows_idx.size()), int(cols_idx.size()));
    for (size_t c = 0; c < cols_idx.size(); ++c) {
      QVec br = g.bracket(g.unit(g.pos_basis_index(cols_idx[c])), cd.n_natural);
      for (size_t r = 0; r < rows_idx.size(); ++r)
        A.at(int(r), int(c)) = br[g.pos_basis_index(rows_idx[r])];
    }
    // least-norm x for A x = b under sum x_c^2 g_c / m_c^2:
    // x = D^{-1} A^T y with (A D^{-1} A^T) y = b
    std::vector<QQ> dinv(cols_idx.size());
    for (size_t c = 0; c < cols_idx.size(); ++c) {
      int bidx = g.pos_basis_index(cols_idx[c]);
      dinv[c] = ts.m_sq[cols_idx[c]] / g.gram.at(bidx, bidx);
    }
    QMat ADAt(int(rows_idx.size()), int(rows_idx.size()));
    for (size_t r1 = 0; r1 < rows_idx.size(); ++r1)
      for (size_t r2 = 0; r2 < rows_idx.size(); ++r2) {
        QQ s = 0;
        for (size_t c = 0; c < cols_idx.size(); ++c)
          s += A.at(int(r1), int(c)) * dinv[c] * A.at(int(r2), int(c));
        ADAt.at(int(r1), int(r2)) = s;
      }
    auto y = ADAt.solve(b);
    if (!y)
      throw invariant_error("jordan_decompose: height surjectivity failed");
    for (size_t c = 0; c < cols_idx.size(); ++c) {
      QQ s = 0;
      for (size_t r = 0; r < rows_idx.size(); ++r)
        s += A.at(int(r), int(c)) * (*y)[r];
      w[g.pos_basis_index(cols_idx[c])] += dinv[c] * s;
    }
  }
  if (g.exp_ad_nilpotent(w).apply(ntil) != cd.n_natural)
    throw invariant_error("jordan_decompose: height induction failed");
  cd.omega = qvec_scale(QQ(-1), w);

  // standard-coordinate float views
  cd.n_natural_std.assign(g.dim, 0.0);
  cd.omega_std.assign(g.dim, 0.0);
  for (int k = 0; k < g.num_pos; ++k) {
    int b = g.pos_basis_index(k);
    double mk = ts.m(k);
    cd.n_natural_std[b] = qd(cd.n_natural[b]) / mk;
    cd.omega_std[b] = qd(cd.omega[b]) / mk;
  }
  return cd;
}

bool jordan_reconstruction_exact(const Algebra& g, const ConjugationData& cd) {
  QVec y = g.exp_ad_nilpotent(cd.omega).apply(cd.n_natural);
  for (int k = 0; k < g.num_pos; ++k) {
    int b = g.pos_basis_index(k);
    if (cd.n[b] != cd.sigma_action.q[k] * y[b]) return false;
  }
  return true;
}

double jordan_reconstruction_error(const Algebra& g,
                                   const ConjugationData& cd) {
  // all-double pipeline from the float views
  int d = g.dim;
  Eigen::MatrixXd adw = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (cd.omega_std[i] == 0) continue;
    adw += cd.omega_std[i] * to_eigen(g.ad(g.unit(i)));
  }
  Eigen::MatrixXd E = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(d, d);
  for (int k = 1; k <= d; ++k) {
    term = (adw * term) / k;
    E += term;
  }
  Eigen::VectorXd nat(d);
  for (int i = 0; i < d; ++i) nat(i) = cd.n_natural_std[i];
  Eigen::VectorXd y = E * nat;
  for (int k = 0; k < g.num_pos; ++k) {
    y(g.pos_basis_index(k)) *= cd.sigma_action.factor(k);
    y(g.neg_basis_index(k)) /= cd.sigma_action.factor(k);
  }
  // G-norm of the difference
  Eigen::VectorXd diff = y;
  for (int i = 0; i < d; ++i) diff(i) -= qd(cd.n[i]);
  Eigen::MatrixXd G = to_eigen(g.gram);
  return std::sqrt(diff.dot(G * diff));
}

//---------------------------------------------------------------- bounds

OperatorBoundReport operator_bound_report(const Algebra& g, const QVec& n,
                                          double epsilon) {
  OperatorBoundReport rep;
  rep.epsilon = epsilon;
  rep.norm_n = g.norm(n);
  if (rep.norm_n < 1.0 - 1e-12)
    throw std::invalid_argument("operator_bound_report requires ||n|| >= 1");

  ConjugationData cd = jordan_decompose(g, n);
  int h = g.height_phi;

  // sigma action is diagonal per root space: operator norms are exact maxima
  double max_f = 1, max_inv = 1;
  for (int k = 0; k < g.num_pos; ++k) {
    double f = cd.sigma_action.factor(k);
    max_f = std::max(max_f, f);
    max_inv = std::max(max_inv, 1.0 / f);
  }
  rep.sigma_fwd = std::max(max_f, max_inv);  // negative roots carry 1/f
  rep.sigma_inv = rep.sigma_fwd;
  rep.sigma_fwd_aw = max_f;
  rep.sigma_inv_aw = max_inv;

  rep.sigma_fwd_env = std::pow(std::sqrt(double(g.rank)) * rep.norm_n, h);
  rep.sigma_inv_env = std::pow(epsilon, -h) * std::pow(rep.norm_n, h);
  rep.sigma_full_env = std::max(rep.sigma_fwd_env, rep.sigma_inv_env);
  rep.omega_env = std::pow(epsilon, -4.0 * h * (h - 1));
  rep.omega_env_aw = std::pow(epsilon, -2.0 * h * (h - 1));

  // omega norms via the scaled-basis Gram (the scaled basis change is itself
  // an Ad of a Cartan exponential, so these equal the standard G-norms)
  TildeScale ts = tilde_scale(g);
  QMat gram_t = g.gram;
  for (int k = 0; k < g.num_pos; ++k) {
    int p = g.pos_basis_index(k), m = g.neg_basis_index(k);
    gram_t.at(p, p) = g.gram.at(p, p) / ts.m_sq[k];
    gram_t.at(m, m) = g.gram.at(m, m) * ts.m_sq[k];
  }
  Eigen::MatrixXd Gt = to_eigen(gram_t);
  Eigen::MatrixXd Efwd = to_eigen(g.exp_ad_nilpotent(cd.omega));
  Eigen::MatrixXd Einv = to_eigen(g.exp_ad_nilpotent(qvec_scale(QQ(-1), cd.omega)));
  std::vector<int> aw;
  for (int i = 0; i < g.rank; ++i) aw.push_back(i);
  for (int k = 0; k < g.num_pos; ++k) aw.push_back(g.pos_basis_index(k));
  rep.omega_fwd = op_norm(Efwd, Gt);
  rep.omega_inv = op_norm(Einv, Gt);
  rep.omega_fwd_aw = op_norm(Efwd, Gt, &aw);
  rep.omega_inv_aw = op_norm(Einv, Gt, &aw);

  const double slack = 1 + 1e-9;
  if (rep.sigma_fwd_aw > rep.sigma_fwd_env * slack)
    rep.violations.push_back("sigma forward exceeded its ceiling on a+w");
  if (rep.sigma_inv_aw > rep.sigma_inv_env * slack)
    rep.violations.push_back("sigma inverse exceeded its ceiling on a+w");
  if (rep.sigma_fwd > rep.sigma_full_env * slack)
    rep.violations.push_back("sigma forward exceeded the combined ceiling");
  if (rep.sigma_inv > rep.sigma_full_env * slack)
    rep.violations.push_back("sigma inverse exceeded the combined ceiling");
  return rep;
}

//---------------------------------------------------------------- sampling

QVec sample_regular_nilpotent(const Algebra& g, std::mt19937_64& rng) {
  auto draw = [&] { return int(rng() % 19) - 9; };
  for (;;) {
    QVec n = g.zero();
    for (int k = 0; k < g.num_pos; ++k) n[g.pos_basis_index(k)] = draw();
    bool ok = true;
    for (int s = 0; s < g.rank && ok; ++s)
      if (n[g.pos_basis_index(g.simple_pos_index[s])] == 0) ok = false;
    if (ok) return n;
  }
}

}  // namespace lieq
