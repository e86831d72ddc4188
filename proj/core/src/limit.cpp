#include "lieq/limit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>

#include "lieq/rational.hpp"

namespace lieq {

namespace {

struct MaskTable {
  std::vector<uint32_t> masks;
  std::unordered_map<uint32_t, int> index;
};

const MaskTable& mask_table(int n, int r) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, MaskTable> cache;
  if (n < 0 || r < 0 || r > n)
    throw std::invalid_argument("wedge_masks: bad grade");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, r});
  if (it != cache.end()) return it->second;
  MaskTable t;
  std::vector<int> c(r);
  for (int i = 0; i < r; ++i) c[i] = i;
  for (;;) {
    uint32_t m = 0;
    for (int i = 0; i < r; ++i) m |= 1u << c[i];
    t.index[m] = int(t.masks.size());
    t.masks.push_back(m);
    if (r == 0) break;
    int i = r - 1;
    while (i >= 0 && c[i] == n - r + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
  }
  return cache.emplace(std::make_pair(n, r), std::move(t)).first->second;
}

inline int insertion_sign(uint32_t mask, int i) {
  return std::popcount(mask >> (i + 1)) % 2 == 0 ? 1 : -1;
}

// multiply a grade-a wedge polynomial by a grade-1 polynomial
std::vector<QVec> wedge_step(int dim, int a, const std::vector<QVec>& A,
                             const std::vector<QVec>& f) {
  const MaskTable& ta = mask_table(dim, a);
  const MaskTable& tb = mask_table(dim, a + 1);
  std::vector<QVec> out(A.size() + f.size() - 1, qvec_zero(tb.masks.size()));
  for (size_t p = 0; p < A.size(); ++p)
    for (size_t q = 0; q < f.size(); ++q)
      for (size_t s = 0; s < ta.masks.size(); ++s) {
        if (A[p][s] == 0) continue;
        uint32_t m = ta.masks[s];
        for (int i = 0; i < dim; ++i) {
          if ((m >> i) & 1) continue;
          if (f[q][i] == 0) continue;
          QQ term = A[p][s] * f[q][i];
          if (insertion_sign(m, i) < 0) term = -term;
          out[p + q][tb.index.at(m | (1u << i))] += term;
        }
      }
  return out;
}

Eigen::MatrixXd to_eigen(const QMat& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = qd(m.at(i, j));
  return out;
}

Eigen::VectorXd to_eigen_vec(const QVec& v) {
  Eigen::VectorXd out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out(i) = qd(v[i]);
  return out;
}

}  // namespace

//---------------------------------------------------------------- wedges

const std::vector<uint32_t>& wedge_masks(int n, int r) {
  return mask_table(n, r).masks;
}

int wedge_index(int n, int r, uint32_t mask) {
  const MaskTable& t = mask_table(n, r);
  auto it = t.index.find(mask);
  if (it == t.index.end())
    throw std::invalid_argument("wedge_index: not a grade-r subset");
  return it->second;
}

WedgeFrame::WedgeFrame(const Algebra& g)
    : alg(&g), tau(g.cartan_orthogonal_basis()) {
  weight = qvec_zero(g.dim);
  cartan_fwd_ = QMat(g.rank, g.rank);
  for (int j = 0; j < g.rank; ++j) {
    for (int i = 0; i < g.rank; ++i) cartan_fwd_.at(i, j) = tau[j][i];
    weight[j] = g.norm_sq(tau[j]);
  }
  cartan_inv_ = cartan_fwd_.inverse();
  for (int k = 0; k < g.num_pos; ++k) {
    int p = g.pos_basis_index(k), m = g.neg_basis_index(k);
    weight[p] = g.gram.at(p, p);
    weight[m] = g.gram.at(m, m);
  }
}

QVec WedgeFrame::to_frame(const QVec& std_coords) const {
  const Algebra& g = *alg;
  QVec head(g.rank);
  for (int i = 0; i < g.rank; ++i) head[i] = std_coords[i];
  QVec y = cartan_inv_.apply(head);
  y.resize(g.dim);
  for (int i = g.rank; i < g.dim; ++i) y[i] = std_coords[i];
  return y;
}

QVec WedgeFrame::to_std(const QVec& frame_coords) const {
  const Algebra& g = *alg;
  QVec head(g.rank);
  for (int i = 0; i < g.rank; ++i) head[i] = frame_coords[i];
  QVec x = cartan_fwd_.apply(head);
  x.resize(g.dim);
  for (int i = g.rank; i < g.dim; ++i) x[i] = frame_coords[i];
  return x;
}

WedgeVector wedge_of(const Algebra& g, const std::vector<QVec>& vectors) {
  int r = int(vectors.size());
  if (r < 1 || r > g.dim) throw std::invalid_argument("wedge_of: bad grade");
  WedgeFrame F(g);
  QMat M(g.dim, r);
  for (int j = 0; j < r; ++j) {
    QVec y = F.to_frame(vectors[j]);
    for (int i = 0; i < g.dim; ++i) M.at(i, j) = y[i];
  }
  const MaskTable& t = mask_table(g.dim, r);
  WedgeVector w{r, qvec_zero(t.masks.size())};
  for (size_t s = 0; s < t.masks.size(); ++s) {
    QMat sub(r, r);
    int row = 0;
    for (int i = 0; i < g.dim; ++i) {
      if (!((t.masks[s] >> i) & 1)) continue;
      for (int j = 0; j < r; ++j) sub.at(row, j) = M.at(i, j);
      ++row;
    }
    w.coords[s] = sub.det();
  }
  return w;
}

QQ wedge_inner(const Algebra& g, const WedgeVector& a, const WedgeVector& b) {
  if (a.grade != b.grade)
    throw std::invalid_argument("wedge_inner: grade mismatch");
  WedgeFrame F(g);
  const MaskTable& t = mask_table(g.dim, a.grade);
  QQ s = 0;
  for (size_t k = 0; k < t.masks.size(); ++k) {
    if (a.coords[k] == 0 || b.coords[k] == 0) continue;
    QQ w = a.coords[k] * b.coords[k];
    for (int i = 0; i < g.dim; ++i)
      if ((t.masks[k] >> i) & 1) w *= F.weight[i];
    s += w;
  }
  return s;
}

double wedge_norm(const Algebra& g, const WedgeVector& a) {
  return std::sqrt(qd(wedge_inner(g, a, a)));
}

double fubini_study(const Algebra& g, const WedgeVector& a,
                    const WedgeVector& b) {
  double na = wedge_norm(g, a), nb = wedge_norm(g, b);
  if (na == 0 || nb == 0)
    throw std::invalid_argument("fubini_study: zero wedge");
  double c = std::fabs(qd(wedge_inner(g, a, b))) / (na * nb);
  return std::sqrt(std::max(0.0, 2 - 2 * std::min(1.0, c)));
}

//---------------------------------------------------------------- curves

WedgeVector GrassmannCurve::eval(const QQ& t) const {
  WedgeVector out{grade, coefficients[degree].coords};
  for (int k = degree - 1; k >= 0; --k) {
    out.coords = qvec_scale(t, out.coords);
    out.coords = qvec_add(out.coords, coefficients[k].coords);
  }
  return out;
}

GrassmannCurve orbit_curve(const Algebra& g, const QVec& n) {
  return orbit_curve(g, n, g.cartan_orthogonal_basis());
}

GrassmannCurve orbit_curve(const Algebra& g, const QVec& n,
                           const std::vector<QVec>& tau) {
  if (!g.in_w(n)) throw std::invalid_argument("orbit_curve: n not in w");
  int r = int(tau.size());
  if (r < 1) throw std::invalid_argument("orbit_curve: empty basis");
  for (int i = 0; i < r; ++i) {
    if (g.norm_sq(tau[i]) == 0)
      throw std::invalid_argument("orbit_curve: dependent basis");
    for (int j = i + 1; j < r; ++j)
      if (g.inner(tau[i], tau[j]) != 0)
        throw std::invalid_argument("orbit_curve: basis not orthogonal");
  }
  WedgeFrame F(g);

  // per-factor polynomials sum_k ad(n)^k tau_j / k! t^k in frame coordinates
  std::vector<std::vector<QVec>> factors;
  for (int j = 0; j < r; ++j) {
    std::vector<QVec> f;
    QVec u = tau[j];
    QQ fact = 1;
    for (int k = 0; k <= g.height_phi; ++k) {
      if (k > 0) {
        u = g.bracket(n, u);
        fact *= k;
      }
      f.push_back(F.to_frame(qvec_scale(QQ(1) / fact, u)));
    }
    if (!qvec_is_zero(g.bracket(n, u)))
      throw invariant_error("orbit_curve: iterate survives past the height");
    while (f.size() > 1 && qvec_is_zero(f.back())) f.pop_back();
    factors.push_back(std::move(f));
  }

  std::vector<QVec> poly = factors[0];
  for (int j = 1; j < r; ++j) poly = wedge_step(g.dim, j, poly, factors[j]);

  GrassmannCurve c;
  c.grade = r;
  int deg = 0;
  for (size_t k = 0; k < poly.size(); ++k)
    if (!qvec_is_zero(poly[k])) deg = int(k);
  c.degree = deg;
  for (int k = 0; k <= deg; ++k)
    c.coefficients.push_back(WedgeVector{r, std::move(poly[k])});
  if (c.degree > r * g.height_phi)
    throw invariant_error("orbit_curve: degree exceeds its cap");
  return c;
}

//---------------------------------------------------------------- limits

LimitingResult leading_subspace(const Algebra& g, const GrassmannCurve& curve) {
  int r = curve.grade;
  const QVec& P = curve.coefficients[curve.degree].coords;
  if (qvec_is_zero(P)) throw std::invalid_argument("leading_subspace: zero curve");
  const MaskTable& ta = mask_table(g.dim, r);
  const MaskTable& tb = mask_table(g.dim, r + 1);

  QMat M(int(tb.masks.size()), g.dim);
  for (size_t s = 0; s < ta.masks.size(); ++s) {
    if (P[s] == 0) continue;
    uint32_t m = ta.masks[s];
    for (int i = 0; i < g.dim; ++i) {
      if ((m >> i) & 1) continue;
      QQ term = P[s];
      if (insertion_sign(m, i) < 0) term = -term;
      M.at(tb.index.at(m | (1u << i)), i) += term;
    }
  }
  QMat kern = M.kernel();
  if (kern.cols() != r)
    throw invariant_error("leading_subspace: leading coefficient is not a pure wedge");

  LimitingResult res;
  WedgeFrame F(g);
  for (int c = 0; c < r; ++c) res.subspace_basis.push_back(F.to_std(kern.col(c)));
  res.leading_degree = curve.degree;

  double lead = wedge_norm(g, curve.coefficients[curve.degree]);
  double mx = 1;
  for (int k = 0; k < curve.degree; ++k)
    mx = std::max(mx, curve.degree * wedge_norm(g, curve.coefficients[k]) / lead);
  res.c_phi = 4 * mx;

  QMat L = QMat::from_cols(res.subspace_basis);
  res.is_lie_algebra = true;
  res.is_abelian = true;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      QVec b = g.bracket(res.subspace_basis[i], res.subspace_basis[j]);
      if (!qvec_is_zero(b)) res.is_abelian = false;
      if (!in_column_span(L, b)) res.is_lie_algebra = false;
    }
  return res;
}

LimitingResult classify(const Algebra& g, const QVec& n) {
  ConjugationData cd = jordan_decompose(g, n);  // also gates regularity
  LimitingResult res = leading_subspace(g, orbit_curve(g, n));
  res.epsilon = cd.epsilon;
  int h = g.height_phi;
  res.pi_lower_env = std::pow(cd.epsilon, 6.0 * g.rank * h * h);

  // rational conjugation R with R(sum of signed simple vectors) = n: the
  // Cartan part scales root spaces by the coefficient products q, and the
  // nilpotent part reuses the stored correction coordinates
  Sl2Data nat = natural_triple(g);
  QVec ncheck_p = g.zero();
  for (int s = 0; s < g.rank; ++s) {
    int k = g.simple_pos_index[s];
    ncheck_p[g.neg_basis_index(k)] =
        nat.triple.n_check[g.neg_basis_index(k)] * cd.n_natural[g.pos_basis_index(k)];
  }
  QMat R = g.exp_ad_nilpotent(cd.omega);
  for (int k = 0; k < g.num_pos; ++k) {
    int p = g.pos_basis_index(k), m = g.neg_basis_index(k);
    for (int j = 0; j < g.dim; ++j) {
      R.at(p, j) *= cd.sigma_action.q[k];
      R.at(m, j) /= cd.sigma_action.q[k];
    }
  }
  if (R.apply(cd.n_natural) != n)
    throw invariant_error("classify: conjugation does not recover the element");
  Sl2Triple tri;
  tri.n_hat = n;
  tri.h = R.apply(g.h_natural());
  tri.n_check = R.apply(ncheck_p);
  Sl2Data dec = weight_decompose(g, tri);

  QMat L = QMat::from_cols(res.subspace_basis);
  QMat img = g.ad(tri.n_check);  // image = kernel of the top projection
  res.is_quasi_centralizing = intersection_dim(L, img) == 0;
  if (res.is_quasi_centralizing && res.leading_degree != g.num_pos)
    throw invariant_error("classify: leading degree contradicts classification");

  // weight bookkeeping for the projector and the witness gap
  std::vector<QVec> wcols;
  std::vector<int> wts;
  std::vector<bool> top;
  for (const Irrep& irr : dec.irreps)
    for (int idx = 0; idx < int(irr.vectors.size()); ++idx) {
      wcols.push_back(irr.vectors[idx]);
      wts.push_back(idx - irr.kappa);
      top.push_back(idx == 2 * irr.kappa && irr.kappa >= 1);
    }
  QMat U = QMat::from_cols(wcols);
  QMat Ui = U.inverse();

  // witness: v in the limiting span whose top projection is n
  auto z = QMat::hcat(L, img).solve(n);
  if (z) {
    QVec v = g.zero();
    for (int i = 0; i < L.cols(); ++i)
      v = qvec_add(v, qvec_scale((*z)[i], res.subspace_basis[i]));
    res.witness = v;
    bool regular = g.in_w(v);
    for (int s = 0; s < g.rank && regular; ++s)
      if (v[g.pos_basis_index(g.simple_pos_index[s])] == 0) regular = false;
    if (regular) {
      QVec y = Ui.apply(qvec_sub(v, n));
      res.witness_gap_ok = true;
      for (size_t i = 0; i < wcols.size(); ++i)
        if (wts[i] <= 1 && y[i] != 0) res.witness_gap_ok = false;
      res.is_centralizing =
          res.witness_gap_ok && same_column_span(L, g.ad(v).kernel());
    }
  }
  if (res.is_centralizing && !res.is_quasi_centralizing)
    throw invariant_error("classify: centralizing without the projection test");

  // Pairing diagnostics: principal-angle cosines between the limit and u_n
  // in the string metric -- the weight basis of the triple declared
  // orthogonal, each vector carrying its pushforward norm under the
  // conjugation of the unit-normalized element.  In this metric the weight
  // projection is the orthogonal one, so the cosines sit in [0, 1] and
  // their product vanishes precisely when the rank test fails.  Pulling
  // back by the conjugation splits into a rational map followed by Cartan
  // square-root factors, so the squared norms lie in Q(s) for s = ||n||
  // and everything up to the final cosines is exact.
  QQ s2 = g.norm_sq(n);
  std::optional<QQ> sr = qq_sqrt_exact(s2);
  TildeScale ts = tilde_scale(g);
  QMat Einv = g.exp_ad_nilpotent(cd.omega, QQ(-1));
  QMat Gt = g.gram;  // Gram of the scaled root basis
  for (int k = 0; k < g.num_pos; ++k) {
    int p = g.pos_basis_index(k), m = g.neg_basis_index(k);
    Gt.at(p, p) /= ts.m_sq[k];
    Gt.at(m, m) *= ts.m_sq[k];
  }

  struct Qs {
    QQ a, b;  // a + b s
  };
  auto qs_mul = [&](const Qs& x, const Qs& y) {
    return Qs{x.a * y.a + x.b * y.b * s2, x.a * y.b + x.b * y.a};
  };
  auto qs_d = [&](const Qs& x) { return qd(x.a) + qd(x.b) * std::sqrt(qd(s2)); };
  auto qs_is_zero = [&](const Qs& x) {
    if (sr) return x.a + x.b * *sr == 0;
    return x.a == 0 && x.b == 0;
  };
  auto s_pow = [&](int h) {  // s^h as an element of Q(s)
    QQ e = 1;
    for (int i = 0; i < h / 2; ++i) e *= s2;
    return h % 2 ? Qs{0, e} : Qs{e, 0};
  };
  // coordinates of the pulled-back vector in Q(s)
  auto pull = [&](const QVec& x) {
    std::vector<Qs> v(g.dim, Qs{0, 0});
    for (int i = 0; i < g.rank; ++i) v[i] = Qs{x[i], 0};
    for (int k = 0; k < g.num_pos; ++k) {
      int h = g.pos_roots[k].height;
      Qs sp = s_pow(h);
      QQ qk = cd.sigma_action.q[k];
      int p = g.pos_basis_index(k), m = g.neg_basis_index(k);
      v[p] = Qs{x[p] * sp.a / qk, x[p] * sp.b / qk};
      QQ den = 1;
      for (int i = 0; i < h; ++i) den *= s2;  // 1/s^h = s^h/s2^h
      v[m] = Qs{x[m] * qk * sp.a / den, x[m] * qk * sp.b / den};
    }
    std::vector<Qs> w(g.dim, Qs{0, 0});
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j) {
        if (Einv.at(i, j) == 0) continue;
        Qs t = qs_mul(Qs{Einv.at(i, j), 0}, v[j]);
        w[i] = Qs{w[i].a + t.a, w[i].b + t.b};
      }
    return w;
  };
  auto b_inner = [&](const std::vector<Qs>& u, const std::vector<Qs>& v) {
    Qs s{0, 0};
    for (int i = 0; i < g.rank; ++i)
      for (int j = 0; j < g.rank; ++j) {
        if (g.gram.at(i, j) == 0) continue;
        Qs t = qs_mul(qs_mul(Qs{g.gram.at(i, j), 0}, u[i]), v[j]);
        s = Qs{s.a + t.a, s.b + t.b};
      }
    for (int i = g.rank; i < g.dim; ++i) {
      Qs t = qs_mul(qs_mul(Qs{Gt.at(i, i), 0}, u[i]), v[i]);
      s = Qs{s.a + t.a, s.b + t.b};
    }
    return s;
  };
  std::function<Qs(const std::vector<std::vector<Qs>>&, std::vector<int>)>
      qs_det = [&](const std::vector<std::vector<Qs>>& mat,
                   std::vector<int> cols) -> Qs {
    int row = int(mat.size()) - int(cols.size());
    if (cols.empty()) return Qs{1, 0};
    Qs acc{0, 0};
    for (size_t c = 0; c < cols.size(); ++c) {
      std::vector<int> rest = cols;
      rest.erase(rest.begin() + c);
      Qs t = qs_mul(mat[row][cols[c]], qs_det(mat, rest));
      if (c % 2) t = Qs{-t.a, -t.b};
      acc = Qs{acc.a + t.a, acc.b + t.b};
    }
    return acc;
  };

  // squared pushforward norms of the string basis, then the string metric
  std::vector<Qs> dnorm(g.dim);
  for (size_t i = 0; i < wcols.size(); ++i) {
    std::vector<Qs> p = pull(wcols[i]);
    dnorm[i] = b_inner(p, p);
  }
  auto b_ad = [&](const QVec& cx, const QVec& cy) {
    Qs acc{0, 0};
    for (int i = 0; i < g.dim; ++i) {
      if (cx[i] == 0 || cy[i] == 0) continue;
      Qs t = qs_mul(Qs{cx[i] * cy[i], 0}, dnorm[i]);
      acc = Qs{acc.a + t.a, acc.b + t.b};
    }
    return acc;
  };

  int rr = int(res.subspace_basis.size());
  std::vector<QVec> cw, cz;  // string-basis coordinates
  for (int i = 0; i < rr; ++i) cw.push_back(Ui.apply(res.subspace_basis[i]));
  for (int j = 0; j < rr; ++j) cz.push_back(Ui.apply(dec.u_n_basis[j]));
  std::vector<std::vector<Qs>> Gww(rr, std::vector<Qs>(rr)), Gwz = Gww,
      Gzz = Gww;
  for (int i = 0; i < rr; ++i)
    for (int j = 0; j < rr; ++j) {
      Gww[i][j] = b_ad(cw[i], cw[j]);
      Gwz[i][j] = b_ad(cw[i], cz[j]);
      Gzz[i][j] = b_ad(cz[i], cz[j]);
    }
  std::vector<int> all_cols(rr);
  for (int i = 0; i < rr; ++i) all_cols[i] = i;
  Qs dwz = qs_det(Gwz, all_cols);
  if (qs_is_zero(dwz)) {
    res.pairing = 0;
  } else {
    res.pairing = std::fabs(qs_d(dwz)) /
                  std::sqrt(qs_d(qs_det(Gww, all_cols)) *
                            qs_d(qs_det(Gzz, all_cols)));
  }
  auto inv_sqrt = [&](const std::vector<std::vector<Qs>>& m) {
    Eigen::MatrixXd M(rr, rr);
    for (int i = 0; i < rr; ++i)
      for (int j = 0; j < rr; ++j) M(i, j) = qs_d(m[i][j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    return Eigen::MatrixXd(es.operatorInverseSqrt());
  };
  Eigen::MatrixXd C(rr, rr);
  for (int i = 0; i < rr; ++i)
    for (int j = 0; j < rr; ++j) C(i, j) = qs_d(Gwz[i][j]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(inv_sqrt(Gww) * C * inv_sqrt(Gzz));
  res.pi_upper = svd.singularValues()(0);
  res.pi_lower = qs_is_zero(dwz) ? 0.0 : svd.singularValues()(rr - 1);
  return res;
}

QVec g2_counterexample() {
  const Algebra& g = Algebra::get("g2");
  Sl2Data d = natural_triple(g);
  if (d.irreps[0].kappa <= 3)
    throw invariant_error("g2_counterexample: no high string present");
  // primitive generator of the weight-1 line of the long string
  QVec x = d.irreps[0].vectors[1 + d.irreps[0].kappa];
  mpz_class den = 1, num = 0;
  for (const QQ& c : x) {
    if (c == 0) continue;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
  }
  x = qvec_scale(QQ(den) / num, x);
  for (const QQ& c : x)
    if (c != 0) {
      if (c < 0) x = qvec_scale(QQ(-1), x);
      break;
    }
  QVec nhat = g.zero();
  for (int s = 0; s < g.rank; ++s)
    nhat[g.pos_basis_index(g.simple_pos_index[s])] = 1;
  return g.exp_ad_nilpotent(x).apply(nhat);
}

std::vector<ConvergenceRow> convergence_report(const Algebra& g, const QVec& n,
                                               const std::vector<QQ>& t_grid) {
  GrassmannCurve curve = orbit_curve(g, n);
  LimitingResult lim = leading_subspace(g, curve);
  const WedgeVector& P = curve.coefficients[curve.degree];
  std::vector<ConvergenceRow> rows;
  for (const QQ& t : t_grid) {
    if (t == 0) throw std::invalid_argument("convergence_report: t must be nonzero");
    ConvergenceRow row;
    row.t = t;
    row.distance = fubini_study(g, curve.eval(t), P);
    row.bound = lim.c_phi / std::fabs(qd(t));
    row.within = row.distance <= row.bound * (1 + 1e-9) + 1e-15;
    rows.push_back(row);
  }
  return rows;
}

double expansion_floor(const Algebra& g, const QVec& n, double T) {
  if (!(T > 0)) throw std::invalid_argument("expansion_floor: T must be positive");
  if (!g.in_w(n)) throw std::invalid_argument("expansion_floor: n not in w");
  QMat adn = g.ad(n);
  QMat pw = QMat::identity(g.dim);
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(g.dim, g.dim);
  double coef = 1;
  for (int k = 0;; ++k) {
    if (k > 0) {
      pw = adn * pw;
      coef *= T / k;
      if (pw.is_zero()) break;
      if (k > g.dim) throw std::invalid_argument("expansion_floor: not nilpotent");
    }
    E += coef * to_eigen(pw);
  }
  Eigen::MatrixXd G = to_eigen(g.gram);
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  Eigen::MatrixXd Lt = Eigen::MatrixXd(llt.matrixL()).transpose();
  std::vector<QVec> tau = g.cartan_orthogonal_basis();
  Eigen::MatrixXd A(g.dim, g.rank);
  for (int j = 0; j < g.rank; ++j) {
    Eigen::VectorXd v = to_eigen_vec(tau[j]);
    A.col(j) = v / std::sqrt(v.dot(G * v));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Lt * E * A);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace lieq
