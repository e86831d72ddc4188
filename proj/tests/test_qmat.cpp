#include "doctest.h"
#include "lieq/qmat.hpp"

using namespace lieq;

namespace {
QMat m3(std::initializer_list<int> vals) {
  QMat m(3, 3);
  int k = 0;
  for (int v : vals) {
    m.at(k / 3, k % 3) = v;
    ++k;
  }
  return m;
}
}  // namespace

TEST_CASE("rational parsing round trip") {
  CHECK(qq_parse("3/4") == QQ(3, 4));
  CHECK(qq_parse("-12") == QQ(-12));
  CHECK(qq_parse(" 6/8 ") == QQ(3, 4));  // canonicalized
  CHECK(qq_str(QQ(-3, 7)) == "-3/7");
  CHECK(qq_str(QQ(5)) == "5");
  CHECK_THROWS_AS(qq_parse("x/2"), std::invalid_argument);
  CHECK_THROWS_AS(qq_parse("1/0"), std::invalid_argument);
}

TEST_CASE("exact square roots") {
  CHECK(qq_sqrt_exact(QQ(9, 16)) == QQ(3, 4));
  CHECK(qq_sqrt_exact(QQ(0)) == QQ(0));
  CHECK(!qq_sqrt_exact(QQ(2)).has_value());
  CHECK(!qq_sqrt_exact(QQ(-1)).has_value());
}

TEST_CASE("determinant, rank, inverse") {
  QMat a = m3({2, 1, 0, 1, 3, 1, 0, 1, 2});
  CHECK(a.det() == QQ(8));
  CHECK(a.rank() == 3);
  QMat inv = a.inverse();
  CHECK(a * inv == QMat::identity(3));

  QMat s = m3({1, 2, 3, 2, 4, 6, 1, 1, 1});
  CHECK(s.det() == QQ(0));
  CHECK(s.rank() == 2);
  CHECK_THROWS_AS(s.inverse(), invariant_error);
}

TEST_CASE("kernel and solve") {
  QMat s = m3({1, 2, 3, 2, 4, 6, 1, 1, 1});
  QMat k = s.kernel();
  CHECK(k.cols() == 1);
  CHECK((s * k).is_zero());

  QVec b = {QQ(6), QQ(12), QQ(3)};
  auto x = s.solve(b);
  REQUIRE(x.has_value());
  CHECK(s.apply(*x) == b);

  QVec bad = {QQ(1), QQ(0), QQ(0)};  // violates row2 = 2*row1
  CHECK(!s.solve(bad).has_value());
}

TEST_CASE("span helpers") {
  QMat a = QMat::from_cols({{QQ(1), QQ(0), QQ(0)}, {QQ(0), QQ(1), QQ(0)}});
  QMat b = QMat::from_cols({{QQ(1), QQ(1), QQ(0)}, {QQ(0), QQ(0), QQ(1)}});
  CHECK(intersection_dim(a, b) == 1);
  CHECK(in_column_span(a, {QQ(2), QQ(-5), QQ(0)}));
  CHECK(!in_column_span(a, {QQ(0), QQ(0), QQ(1)}));
  QMat a2 = QMat::from_cols({{QQ(1), QQ(1), QQ(0)}, {QQ(1), QQ(-1), QQ(0)}});
  CHECK(same_column_span(a, a2));
  CHECK(!same_column_span(a, b));
}
