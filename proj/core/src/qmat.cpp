#include "lieq/qmat.hpp"

#include <sstream>

namespace lieq {

QQ qq_parse(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  try {
    QQ x(t);
    if (x.get_den() == 0) throw std::invalid_argument("zero denominator");
    x.canonicalize();
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

std::string qq_str(const QQ& x) { return x.get_str(); }

std::optional<QQ> qq_sqrt_exact(const QQ& x) {
  if (sgn(x) < 0) return std::nullopt;
  const mpz_class &n = x.get_num(), &d = x.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return QQ(rn, rd);
  }
  return std::nullopt;
}

QVec qvec_zero(size_t n) { return QVec(n); }

bool qvec_is_zero(const QVec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

QVec qvec_add(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec qvec_sub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec qvec_scale(const QQ& c, const QVec& a) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows) {
  if (rows.empty()) return QMat(0, 0);
  QMat m(int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < m.rows_; ++i) {
    if (rows[i].size() != size_t(m.cols_)) throw invariant_error("ragged rows");
    for (int j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

QMat QMat::from_cols(const std::vector<QVec>& cols) {
  if (cols.empty()) return QMat(0, 0);
  QMat m(int(cols[0].size()), int(cols.size()));
  for (int j = 0; j < m.cols_; ++j) {
    if (cols[j].size() != size_t(m.rows_)) throw invariant_error("ragged cols");
    for (int i = 0; i < m.rows_; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

QVec QMat::row(int i) const {
  QVec r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

QVec QMat::col(int j) const {
  QVec c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

QMat QMat::transpose() const {
  QMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols_ != o.rows_) throw invariant_error("matmul shape mismatch");
  QMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (sgn(at(i, k)) == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

QVec QMat::apply(const QVec& v) const {
  if (v.size() != size_t(cols_)) throw invariant_error("apply shape mismatch");
  QVec r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (sgn(at(i, j)) != 0) r[i] += at(i, j) * v[j];
  return r;
}

QMat QMat::operator+(const QMat& o) const {
  QMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  QMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

QMat QMat::scaled(const QQ& c) const {
  QMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = c * a_[i];
  return r;
}

bool QMat::is_zero() const {
  for (const auto& x : a_)
    if (sgn(x) != 0) return false;
  return true;
}

std::vector<int> QMat::rref() {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int p = -1;
    for (int i = r; i < rows_; ++i)
      if (sgn(at(i, c)) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
    QQ inv = 1 / at(r, c);
    for (int j = c; j < cols_; ++j) at(r, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || sgn(at(i, c)) == 0) continue;
      QQ f = at(i, c);
      for (int j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int QMat::rank() const {
  QMat m = *this;
  return int(m.rref().size());
}

QQ QMat::det() const {
  if (rows_ != cols_) throw invariant_error("det of non-square");
  QMat m = *this;
  QQ d = 1;
  for (int c = 0; c < cols_; ++c) {
    int p = -1;
    for (int i = c; i < rows_; ++i)
      if (sgn(m.at(i, c)) != 0) {
        p = i;
        break;
      }
    if (p < 0) return QQ(0);
    if (p != c) {
      for (int j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    QQ inv = 1 / m.at(c, c);
    for (int i = c + 1; i < rows_; ++i) {
      if (sgn(m.at(i, c)) == 0) continue;
      QQ f = m.at(i, c) * inv;
      for (int j = c; j < cols_; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

QMat QMat::kernel() const {
  QMat m = *this;
  std::vector<int> piv = m.rref();
  std::vector<bool> is_piv(cols_, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<QVec> cols;
  for (int c = 0; c < cols_; ++c) {
    if (is_piv[c]) continue;
    QVec v(cols_);
    v[c] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m.at(int(r), c);
    cols.push_back(std::move(v));
  }
  if (cols.empty()) return QMat(cols_, 0);
  return from_cols(cols);
}

std::optional<QVec> QMat::solve(const QVec& b) const {
  QMat aug(rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  std::vector<int> piv = aug.rref();
  QVec x(cols_);
  for (size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == cols_) return std::nullopt;  // inconsistent
    x[piv[r]] = aug.at(int(r), cols_);
  }
  return x;
}

std::optional<QMat> QMat::solve_multi(const QMat& B) const {
  std::vector<QVec> cols;
  for (int j = 0; j < B.cols(); ++j) {
    auto x = solve(B.col(j));
    if (!x) return std::nullopt;
    cols.push_back(std::move(*x));
  }
  if (cols.empty()) return QMat(cols_, 0);
  return QMat::from_cols(cols);
}

QMat QMat::inverse() const {
  if (rows_ != cols_) throw invariant_error("inverse of non-square");
  QMat aug(rows_, 2 * cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = 1;
  }
  std::vector<int> piv = aug.rref();
  for (size_t r = 0; r < piv.size(); ++r)
    if (piv[r] != int(r)) throw invariant_error("singular matrix inverse");
  if (int(piv.size()) != rows_) throw invariant_error("singular matrix inverse");
  QMat inv(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
  return inv;
}

QMat QMat::hcat(const QMat& A, const QMat& B) {
  if (A.rows() != B.rows()) throw invariant_error("hcat shape mismatch");
  QMat r(A.rows(), A.cols() + B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) r.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols(); ++j) r.at(i, A.cols() + j) = B.at(i, j);
  }
  return r;
}

int intersection_dim(const QMat& A, const QMat& B) {
  if (A.cols() == 0 || B.cols() == 0) return 0;
  int ra = A.rank(), rb = B.rank();
  return ra + rb - QMat::hcat(A, B).rank();
}

bool same_column_span(const QMat& A, const QMat& B) {
  int ra = A.rank(), rb = B.rank();
  return ra == rb && QMat::hcat(A, B).rank() == ra;
}

bool in_column_span(const QMat& A, const QVec& v) {
  return bool(A.solve(v));
}

}  // namespace lieq
