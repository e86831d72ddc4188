#pragma once

#include <optional>
#include <vector>

#include "lieq/rational.hpp"

namespace lieq {

// Dense exact rational matrix. Sizes here are small (dim(g) <= ~20, wedge
// coordinates <= ~500), so everything is plain O(n^3) elimination.
class QMat {
 public:
  QMat() : rows_(0), cols_(0) {}
  QMat(int r, int c) : rows_(r), cols_(c), a_(size_t(r) * c) {}

  static QMat identity(int n);
  static QMat from_rows(const std::vector<QVec>& rows);
  static QMat from_cols(const std::vector<QVec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  QQ& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const QQ& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  QVec row(int i) const;
  QVec col(int j) const;

  QMat transpose() const;
  QMat operator*(const QMat& o) const;
  QVec apply(const QVec& v) const;  // this * v
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat scaled(const QQ& c) const;
  bool operator==(const QMat& o) const = default;
  bool is_zero() const;

  // in-place reduced row echelon form; returns pivot column list
  std::vector<int> rref();

  int rank() const;
  QQ det() const;

  // columns form a basis of {x : A x = 0}
  QMat kernel() const;

  // one solution of A x = b if consistent
  std::optional<QVec> solve(const QVec& b) const;

  // A X = B columnwise; nullopt if any column inconsistent
  std::optional<QMat> solve_multi(const QMat& B) const;

  QMat inverse() const;  // throws invariant_error if singular

  // horizontal concatenation [A | B]
  static QMat hcat(const QMat& A, const QMat& B);

 private:
  int rows_, cols_;
  QVec a_;
};

// dimension of span(columns of A) ∩ span(columns of B)
int intersection_dim(const QMat& A, const QMat& B);

// true if the two column spans coincide
bool same_column_span(const QMat& A, const QMat& B);

// v in column span?
bool in_column_span(const QMat& A, const QVec& v);

}  // namespace lieq
