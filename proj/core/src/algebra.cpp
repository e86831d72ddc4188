#include "lieq/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "lieq/g2_table.hpp"

namespace lieq {

namespace {

//---------------------------------------------------------------- raw data

struct RawRoot {
  std::vector<int> coords;  // over the factor's simple roots
  QVec h_values;
  QMat e;  // positive root vector; the negative one is e^T
};

struct RawAlgebra {
  std::string tag;
  int rep_dim = 0;
  std::vector<QMat> cartan;
  std::vector<RawRoot> pos;
};

QMat eij(int n, int i, int j) {
  QMat m(n, n);
  m.at(i, j) = 1;
  return m;
}

RawAlgebra make_sl(int n) {
  RawAlgebra r;
  r.tag = "sl" + std::to_string(n);
  r.rep_dim = n;
  for (int i = 0; i + 1 < n; ++i) {
    QMat h(n, n);
    h.at(i, i) = 1;
    h.at(i + 1, i + 1) = -1;
    r.cartan.push_back(h);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      RawRoot rr;
      rr.coords.assign(n - 1, 0);
      for (int j = a; j < b; ++j) rr.coords[j] = 1;
      rr.e = eij(n, a, b);
      for (int i = 0; i + 1 < n; ++i) {
        auto d = [&](int k) { return k == i ? 1 : (k == i + 1 ? -1 : 0); };
        rr.h_values.push_back(QQ(d(a) - d(b)));
      }
      r.pos.push_back(rr);
    }
  return r;
}

// sp4 for the form [[0,I],[-I,0]]: matrices [[A,B],[C,-A^T]] with B, C
// symmetric. This block convention is closed under transpose.
RawAlgebra make_sp4() {
  RawAlgebra r;
  r.tag = "sp4";
  r.rep_dim = 4;
  auto diag = [](int a, int b, int c, int d) {
    QMat m(4, 4);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    m.at(2, 2) = c;
    m.at(3, 3) = d;
    return m;
  };
  r.cartan = {diag(1, -1, -1, 1), diag(0, 1, 0, -1)};  // coroots of a1, a2

  auto add = [&](std::vector<int> coords, QVec hv, QMat e) {
    RawRoot rr;
    rr.coords = std::move(coords);
    rr.h_values = std::move(hv);
    rr.e = std::move(e);
    r.pos.push_back(std::move(rr));
  };
  // a1 = e1 - e2 (long short order: a1 short? a1 = e1-e2 short, a2 = 2e2 long)
  add({1, 0}, {QQ(2), QQ(-1)}, eij(4, 0, 1) - eij(4, 3, 2));
  add({0, 1}, {QQ(-2), QQ(2)}, eij(4, 1, 3));
  add({1, 1}, {QQ(0), QQ(1)}, eij(4, 0, 3) + eij(4, 1, 2));
  add({2, 1}, {QQ(2), QQ(0)}, eij(4, 0, 2));
  return r;
}

RawAlgebra make_g2() {
  RawAlgebra r;
  r.tag = "g2";
  r.rep_dim = 7;
  r.cartan = detail::g2_cartan();
  for (auto& row : detail::g2_positive_roots()) {
    RawRoot rr;
    rr.coords = row.coords;
    rr.h_values = row.h_values;
    rr.e = row.e;
    r.pos.push_back(std::move(rr));
  }
  return r;
}

RawAlgebra make_simple(const std::string& name) {
  if (name == "sl2") return make_sl(2);
  if (name == "sl3") return make_sl(3);
  if (name == "sl4") return make_sl(4);
  if (name == "sp4") return make_sp4();
  if (name == "g2") return make_g2();
  throw std::invalid_argument("unknown algebra tag: " + name);
}

QMat embed(const QMat& m, int off, int n) {
  QMat out(n, n);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(off + i, off + j) = m.at(i, j);
  return out;
}

std::string lower(std::string s) {
  for (auto& c : s) c = char(std::tolower(unsigned(c)));
  return s;
}

std::vector<std::string> split_x(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == 'x') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string canon_simple(const std::string& name) {
  static const std::map<std::string, std::string> alias = {
      {"sl2", "sl2"}, {"a1", "sl2"}, {"sl3", "sl3"}, {"a2", "sl3"},
      {"sl4", "sl4"}, {"a3", "sl4"}, {"sp4", "sp4"}, {"c2", "sp4"},
      {"g2", "g2"}};
  auto it = alias.find(name);
  if (it == alias.end())
    throw std::invalid_argument("unknown algebra tag: " + name);
  return it->second;
}

}  // namespace

//---------------------------------------------------------------- builder

struct AlgebraBuilder {
  static std::unique_ptr<Algebra> build(const std::string& canon) {
    std::vector<RawAlgebra> factors;
    for (auto& part : split_x(canon)) factors.push_back(make_simple(part));

    auto A = std::unique_ptr<Algebra>(new Algebra());
    A->tag = canon;
    A->num_factors = int(factors.size());
    for (auto& f : factors) {
      A->rep_dim += f.rep_dim;
      A->rank += int(f.cartan.size());
    }

    struct Pending {
      Root root;
      QMat e;
    };
    std::vector<Pending> pend;
    std::vector<QMat> cartans;

    int rep_off = 0, coord_off = 0, fid = 0;
    for (auto& f : factors) {
      int fr = int(f.cartan.size());
      for (auto& h : f.cartan) {
        cartans.push_back(embed(h, rep_off, A->rep_dim));
        A->factor_of_cartan.push_back(fid);
      }
      for (auto& rr : f.pos) {
        Pending p;
        p.root.coords.assign(A->rank, 0);
        for (int j = 0; j < fr; ++j) p.root.coords[coord_off + j] = rr.coords[j];
        p.root.height = 0;
        for (int c : rr.coords) p.root.height += c;
        p.root.factor = fid;
        p.root.h_values.assign(A->rank, QQ(0));
        for (int j = 0; j < fr; ++j) p.root.h_values[coord_off + j] = rr.h_values[j];
        p.e = embed(rr.e, rep_off, A->rep_dim);
        pend.push_back(std::move(p));
      }
      rep_off += f.rep_dim;
      coord_off += fr;
      ++fid;
    }

    std::sort(pend.begin(), pend.end(), [](const Pending& a, const Pending& b) {
      if (a.root.height != b.root.height) return a.root.height < b.root.height;
      return a.root.coords < b.root.coords;
    });

    A->num_pos = int(pend.size());
    A->dim = A->rank + 2 * A->num_pos;
    A->height_phi = pend.empty() ? 0 : pend.back().root.height;

    A->basis = std::move(cartans);
    for (auto& p : pend) A->basis.push_back(p.e);
    for (auto& p : pend) A->basis.push_back(p.e.transpose());
    for (auto& p : pend) A->pos_roots.push_back(std::move(p.root));

    A->simple_pos_index.assign(A->rank, -1);
    for (int k = 0; k < A->num_pos; ++k) {
      const auto& c = A->pos_roots[k].coords;
      if (A->pos_roots[k].height != 1) continue;
      for (int s = 0; s < A->rank; ++s)
        if (c[s] == 1) A->simple_pos_index[s] = k;
    }
    for (int s = 0; s < A->rank; ++s)
      if (A->simple_pos_index[s] < 0)
        throw invariant_error("missing simple root for coordinate slot");

    A->finalize();
    return A;
  }
};

//---------------------------------------------------------------- registry

const Algebra& Algebra::get(const std::string& tag) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<Algebra>> cache;
  std::string canon = canonical_tag(tag);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(canon);
  if (it == cache.end())
    it = cache.emplace(canon, AlgebraBuilder::build(canon)).first;
  return *it->second;
}

std::string Algebra::canonical_tag(const std::string& tag) {
  auto parts = split_x(lower(tag));
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += 'x';
    out += canon_simple(parts[i]);
  }
  return out;
}

const std::vector<std::string>& Algebra::known_tags() {
  static const std::vector<std::string> tags = {"sl2",  "sl3", "sl4",
                                                "sp4", "g2",  "sl2xsl2"};
  return tags;
}

//---------------------------------------------------------------- finalize

void Algebra::finalize() {
  // Gram matrix of tr(X Y^T); root spaces must be orthogonal to each other
  // and to the Cartan (the Cartan block itself need not be diagonal).
  gram = QMat(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      QQ s = 0;
      for (int a = 0; a < rep_dim; ++a)
        for (int b = 0; b < rep_dim; ++b) {
          const QQ& x = basis[i].at(a, b);
          if (x != 0) s += x * basis[j].at(a, b);
        }
      gram.at(i, j) = s;
      gram.at(j, i) = s;
    }
  for (int i = 0; i < dim; ++i) {
    if (gram.at(i, i) <= 0) throw invariant_error("basis vector with nonpositive norm");
    for (int j = i + 1; j < dim; ++j)
      if (j >= rank && gram.at(i, j) != 0)
        throw invariant_error("root spaces not orthogonal in the trace form");
  }

  // flattened-basis solver: rref of [F | I] with F = (vec(B_0) .. vec(B_{dim-1}))
  int n2 = rep_dim * rep_dim;
  QMat F(n2, dim);
  for (int k = 0; k < dim; ++k)
    for (int a = 0; a < rep_dim; ++a)
      for (int b = 0; b < rep_dim; ++b)
        F.at(a * rep_dim + b, k) = basis[k].at(a, b);
  QMat aug = QMat::hcat(F, QMat::identity(n2));
  basis_flat_piv_ = aug.rref();
  basis_flat_rref_ = std::move(aug);
  for (int k = 0; k < dim; ++k)
    if (k >= int(basis_flat_piv_.size()) || basis_flat_piv_[k] != k)
      throw invariant_error("basis is not linearly independent");

  // bracket table, with closure enforced by coords_of_matrix
  btab_.assign(dim, std::vector<QVec>(dim));
  for (int i = 0; i < dim; ++i) btab_[i][i] = QVec(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      QMat c = basis[i] * basis[j] - basis[j] * basis[i];
      btab_[i][j] = coords_of_matrix(c);
      btab_[j][i] = qvec_scale(QQ(-1), btab_[i][j]);
    }

  // construction self-tests: abelian Cartan, eigen-relations, root map rank
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (!qvec_is_zero(btab_[i][j]))
        throw invariant_error("Cartan subalgebra is not abelian");
  for (int k = 0; k < num_pos; ++k)
    for (int i = 0; i < rank; ++i) {
      const QQ& val = pos_roots[k].h_values[i];
      QVec expect_p = zero(), expect_m = zero();
      expect_p[pos_basis_index(k)] = val;
      expect_m[neg_basis_index(k)] = -val;
      if (btab_[i][pos_basis_index(k)] != expect_p ||
          btab_[i][neg_basis_index(k)] != expect_m)
        throw invariant_error("root eigen-relation failed");
    }
  QMat R(num_pos, rank);
  for (int k = 0; k < num_pos; ++k)
    for (int i = 0; i < rank; ++i) R.at(k, i) = pos_roots[k].h_values[i];
  if (R.rank() != rank) throw invariant_error("root evaluation map is degenerate");
}

//---------------------------------------------------------------- operations

QVec Algebra::bracket(const QVec& x, const QVec& y) const {
  if (int(x.size()) != dim || int(y.size()) != dim)
    throw std::invalid_argument("bracket: wrong coefficient length");
  QVec z(dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      QQ c = x[i] * y[j];
      const QVec& b = btab_[i][j];
      for (int k = 0; k < dim; ++k)
        if (b[k] != 0) z[k] += c * b[k];
    }
  }
  return z;
}

QMat Algebra::ad(const QVec& x) const {
  if (int(x.size()) != dim)
    throw std::invalid_argument("ad: wrong coefficient length");
  QMat A(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      const QVec& b = btab_[i][j];
      for (int k = 0; k < dim; ++k)
        if (b[k] != 0) A.at(k, j) += x[i] * b[k];
    }
  }
  return A;
}

QMat Algebra::matrix_of(const QVec& coeffs) const {
  if (int(coeffs.size()) != dim)
    throw std::invalid_argument("matrix_of: wrong coefficient length");
  QMat m(rep_dim, rep_dim);
  for (int k = 0; k < dim; ++k) {
    if (coeffs[k] == 0) continue;
    for (int a = 0; a < rep_dim; ++a)
      for (int b = 0; b < rep_dim; ++b) {
        const QQ& v = basis[k].at(a, b);
        if (v != 0) m.at(a, b) += coeffs[k] * v;
      }
  }
  return m;
}

QVec Algebra::coords_of_matrix(const QMat& m) const {
  if (m.rows() != rep_dim || m.cols() != rep_dim)
    throw std::invalid_argument("coords_of_matrix: wrong matrix shape");
  int n2 = rep_dim * rep_dim;
  QVec x(dim);
  for (int row = 0; row < n2; ++row) {
    QQ s = 0;
    for (int j = 0; j < n2; ++j) {
      const QQ& t = basis_flat_rref_.at(row, dim + j);
      if (t != 0) s += t * m.at(j / rep_dim, j % rep_dim);
    }
    if (row < dim)
      x[row] = std::move(s);
    else if (s != 0)
      throw invariant_error("matrix is outside the algebra span");
  }
  return x;
}

QQ Algebra::inner(const QVec& x, const QVec& y) const {
  if (int(x.size()) != dim || int(y.size()) != dim)
    throw std::invalid_argument("inner: wrong coefficient length");
  QQ s = 0;
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      const QQ& g = gram.at(i, j);
      if (g != 0 && y[j] != 0) s += x[i] * g * y[j];
    }
  }
  return s;
}

QQ Algebra::norm_sq(const QVec& x) const { return inner(x, x); }

double Algebra::norm(const QVec& x) const { return std::sqrt(qd(norm_sq(x))); }

QMat Algebra::exp_ad_nilpotent(const QVec& n, const QQ& t) const {
  QMat A = ad(n);
  QMat result = QMat::identity(dim);
  QMat term = QMat::identity(dim);
  for (int k = 1; k <= dim + 1; ++k) {
    term = (A * term).scaled(t / k);
    if (term.is_zero()) return result;
    if (k == dim + 1)
      throw invariant_error("exp_ad_nilpotent: ad(n) is not nilpotent");
    result = result + term;
  }
  return result;
}

QVec Algebra::h_natural() const {
  QMat M(rank, rank);
  for (int s = 0; s < rank; ++s) {
    const Root& a = pos_roots[simple_pos_index[s]];
    for (int i = 0; i < rank; ++i) M.at(s, i) = a.h_values[i];
  }
  QVec ones(rank, QQ(1));
  auto sol = M.solve(ones);
  if (!sol) throw invariant_error("h_natural: simple root system degenerate");
  QVec h = zero();
  for (int i = 0; i < rank; ++i) h[i] = (*sol)[i];
  return h;
}

QQ Algebra::root_value(const Root& beta, const QVec& h) const {
  if (int(h.size()) < rank)
    throw std::invalid_argument("root_value: wrong coefficient length");
  QQ s = 0;
  for (int i = 0; i < rank; ++i)
    if (beta.h_values[i] != 0) s += beta.h_values[i] * h[i];
  return s;
}

std::map<std::string, QVec> Algebra::root_decompose(const QVec& x) const {
  if (int(x.size()) != dim)
    throw std::invalid_argument("root_decompose: wrong coefficient length");
  std::map<std::string, QVec> out;
  QVec cartan = zero();
  for (int i = 0; i < rank; ++i) cartan[i] = x[i];
  out["cartan"] = std::move(cartan);
  for (int k = 0; k < num_pos; ++k) {
    QVec p = zero(), m = zero();
    p[pos_basis_index(k)] = x[pos_basis_index(k)];
    m[neg_basis_index(k)] = x[neg_basis_index(k)];
    out[root_key(k, false)] = std::move(p);
    out[root_key(k, true)] = std::move(m);
  }
  return out;
}

QVec Algebra::unit(int basis_index) const {
  if (basis_index < 0 || basis_index >= dim)
    throw std::invalid_argument("unit: index out of range");
  QVec v = zero();
  v[basis_index] = 1;
  return v;
}

QVec Algebra::from_pos_root_map(const std::map<std::vector<int>, QQ>& m) const {
  QVec v = zero();
  for (auto& [coords, val] : m) {
    if (int(coords.size()) != rank)
      throw std::invalid_argument("from_pos_root_map: coordinate length != rank");
    int found = -1;
    for (int k = 0; k < num_pos; ++k)
      if (pos_roots[k].coords == coords) {
        found = k;
        break;
      }
    if (found < 0) {
      std::ostringstream os;
      os << "from_pos_root_map: not a positive root:";
      for (int c : coords) os << ' ' << c;
      throw std::invalid_argument(os.str());
    }
    v[pos_basis_index(found)] = val;
  }
  return v;
}

bool Algebra::in_w(const QVec& x) const {
  if (int(x.size()) != dim) return false;
  for (int i = 0; i < rank; ++i)
    if (x[i] != 0) return false;
  for (int k = 0; k < num_pos; ++k)
    if (x[neg_basis_index(k)] != 0) return false;
  return true;
}

bool Algebra::in_a(const QVec& x) const {
  if (int(x.size()) != dim) return false;
  for (int i = rank; i < dim; ++i)
    if (x[i] != 0) return false;
  return true;
}

std::vector<QVec> Algebra::cartan_orthogonal_basis() const {
  std::vector<QVec> out;
  for (int s = 0; s < rank; ++s) {
    QVec v = unit(s);
    for (int t = 0; t < s; ++t) {
      if (factor_of_cartan[t] != factor_of_cartan[s]) continue;
      QQ c = inner(v, out[t]) / inner(out[t], out[t]);
      if (c != 0) v = qvec_sub(v, qvec_scale(c, out[t]));
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::string Algebra::root_key(int pos_index, bool negative) const {
  const auto& c = pos_roots[pos_index].coords;
  std::string s(negative ? "-" : "+");
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s;
}

//---------------------------------------------------------------- self check

int Algebra::self_check() const {
  int checks = 0;
  auto require = [&](bool ok, const char* what) {
    ++checks;
    if (!ok) throw invariant_error(std::string("self_check: ") + what);
  };

  require(dim == rank + 2 * num_pos, "dimension bookkeeping");
  require(int(basis.size()) == dim && int(pos_roots.size()) == num_pos,
          "table sizes");

  // negatives are transposes, heights match coordinate sums, order sorted
  for (int k = 0; k < num_pos; ++k) {
    const Root& r = pos_roots[k];
    require(basis[neg_basis_index(k)] == basis[pos_basis_index(k)].transpose(),
            "negative root vector is the transpose");
    int h = 0;
    for (int c : r.coords) h += c;
    require(h == r.height && h >= 1, "height is the coordinate sum");
    if (k > 0) {
      const Root& q = pos_roots[k - 1];
      require(q.height < r.height ||
                  (q.height == r.height && q.coords < r.coords),
              "positive roots sorted by (height, coords)");
    }
  }
  require(pos_roots.back().height == height_phi, "highest root height");

  // expected highest-root heights for the simple types
  static const std::map<std::string, int> expected_h = {
      {"sl2", 1}, {"sl3", 2}, {"sl4", 3}, {"sp4", 3}, {"g2", 5}};
  if (auto it = expected_h.find(tag); it != expected_h.end())
    require(height_phi == it->second, "highest root height value");

  // Jacobi identity over all basis triples
  auto br = [&](int i, const QVec& v) {
    QVec z(dim);
    for (int m = 0; m < dim; ++m) {
      if (v[m] == 0) continue;
      const QVec& b = btab_[i][m];
      for (int k = 0; k < dim; ++k)
        if (b[k] != 0) z[k] += v[m] * b[k];
    }
    return z;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        QVec s = br(i, btab_[j][k]);
        s = qvec_add(s, br(j, btab_[k][i]));
        s = qvec_add(s, br(k, btab_[i][j]));
        require(qvec_is_zero(s), "Jacobi identity");
      }

  // h_natural evaluates every root at its height
  QVec hn = h_natural();
  for (const Root& r : pos_roots) {
    require(root_value(r, hn) == r.height, "h_natural height evaluation");
  }

  // Cartan orthogonal basis really is orthogonal and spans the Cartan
  auto taus = cartan_orthogonal_basis();
  require(int(taus.size()) == rank, "tau basis size");
  for (int i = 0; i < rank; ++i) {
    require(in_a(taus[i]) && norm_sq(taus[i]) > 0, "tau basis in the Cartan");
    for (int j = i + 1; j < rank; ++j)
      require(inner(taus[i], taus[j]) == 0, "tau basis orthogonality");
  }

  // Ad of a unipotent exponential has determinant one
  QVec n = zero();
  for (int s = 0; s < rank; ++s) n[pos_basis_index(simple_pos_index[s])] = 1;
  QMat E = exp_ad_nilpotent(n);
  require(E.det() == 1, "unipotent Ad determinant");
  // and it respects the bracket on a couple of sample pairs
  QVec a = unit(0), b = unit(pos_basis_index(0));
  require(bracket(E.apply(a), E.apply(b)) == E.apply(bracket(a, b)),
          "Ad is a Lie algebra automorphism (sample)");
  QVec c = unit(neg_basis_index(num_pos - 1));
  require(bracket(E.apply(b), E.apply(c)) == E.apply(bracket(b, c)),
          "Ad is a Lie algebra automorphism (sample 2)");

  return checks;
}

}  // namespace lieq
