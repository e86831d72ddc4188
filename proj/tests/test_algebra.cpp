#include <map>

#include "doctest.h"
#include "lieq/algebra.hpp"

using namespace lieq;

TEST_CASE("all known algebras construct and validate") {
  for (const auto& tag : Algebra::known_tags()) {
    CAPTURE(tag);
    const Algebra& g = Algebra::get(tag);
    CHECK(g.self_check() > 0);
    CHECK(g.dim == g.rank + 2 * g.num_pos);
  }
}

TEST_CASE("tag aliases") {
  CHECK(Algebra::canonical_tag("A2") == "sl3");
  CHECK(Algebra::canonical_tag("C2") == "sp4");
  CHECK(Algebra::canonical_tag("a1xA1") == "sl2xsl2");
  CHECK(Algebra::canonical_tag("G2") == "g2");
  CHECK(&Algebra::get("A3") == &Algebra::get("sl4"));
  CHECK_THROWS_AS(Algebra::canonical_tag("e8"), std::invalid_argument);
}

TEST_CASE("positive root order is (height, coords)") {
  const Algebra& sl3 = Algebra::get("sl3");
  REQUIRE(sl3.num_pos == 3);
  CHECK(sl3.pos_roots[0].coords == std::vector<int>{0, 1});
  CHECK(sl3.pos_roots[1].coords == std::vector<int>{1, 0});
  CHECK(sl3.pos_roots[2].coords == std::vector<int>{1, 1});

  const Algebra& sp4 = Algebra::get("sp4");
  REQUIRE(sp4.num_pos == 4);
  CHECK(sp4.pos_roots[2].coords == std::vector<int>{1, 1});
  CHECK(sp4.pos_roots[3].coords == std::vector<int>{2, 1});
  CHECK(sp4.height_phi == 3);

  const Algebra& g2 = Algebra::get("g2");
  REQUIRE(g2.num_pos == 6);
  CHECK(g2.pos_roots[4].coords == std::vector<int>{3, 1});
  CHECK(g2.pos_roots[5].coords == std::vector<int>{3, 2});
  CHECK(g2.height_phi == 5);
  CHECK(g2.dim == 14);

  CHECK(Algebra::get("sl2xsl2").height_phi == 1);
  CHECK(Algebra::get("sl4").height_phi == 3);
}

TEST_CASE("sl3 structure constants") {
  const Algebra& g = Algebra::get("sl3");
  // slots: h1 h2 | E23 E12 E13 | E32 E21 E31
  QVec e12 = g.unit(g.pos_basis_index(1));
  QVec e21 = g.unit(g.neg_basis_index(1));
  QVec e23 = g.unit(g.pos_basis_index(0));
  QVec e13 = g.unit(g.pos_basis_index(2));

  CHECK(g.bracket(e12, e21) == g.unit(0));         // [E12,E21] = h1
  CHECK(g.bracket(e12, e23) == e13);               // [E12,E23] = E13
  CHECK(g.bracket(e23, e12) == qvec_scale(QQ(-1), e13));
  CHECK(qvec_is_zero(g.bracket(e12, e13)));

  // matrix round trip
  QVec x = {QQ(1), QQ(-2), QQ(3), QQ(1, 2), QQ(0), QQ(5), QQ(-7), QQ(1, 3)};
  CHECK(g.coords_of_matrix(g.matrix_of(x)) == x);
  QMat off(3, 3);
  off.at(0, 0) = 1;  // nonzero trace, not in sl3
  CHECK_THROWS_AS(g.coords_of_matrix(off), invariant_error);
}

TEST_CASE("ad matches bracket") {
  const Algebra& g = Algebra::get("sp4");
  QVec x = g.zero(), y = g.zero();
  for (int i = 0; i < g.dim; ++i) {
    x[i] = QQ(2 * i - 7) / 3;
    y[i] = QQ((i * i) % 5 - 2);
  }
  CHECK(g.ad(x).apply(y) == g.bracket(x, y));
  // antisymmetry and Jacobi on these two plus a unit
  CHECK(g.bracket(x, y) == qvec_scale(QQ(-1), g.bracket(y, x)));
  QVec z = g.unit(g.pos_basis_index(3));
  QVec jac = g.bracket(x, g.bracket(y, z));
  jac = qvec_add(jac, g.bracket(y, g.bracket(z, x)));
  jac = qvec_add(jac, g.bracket(z, g.bracket(x, y)));
  CHECK(qvec_is_zero(jac));
}

TEST_CASE("gram matrix values") {
  const Algebra& g2 = Algebra::get("g2");
  // short roots have squared norm 24, long roots 8 in this representation
  std::map<std::vector<int>, QQ> expect = {
      {{1, 0}, QQ(24)}, {{0, 1}, QQ(8)},  {{1, 1}, QQ(24)},
      {{2, 1}, QQ(24)}, {{3, 1}, QQ(8)},  {{3, 2}, QQ(8)}};
  for (int k = 0; k < g2.num_pos; ++k) {
    int i = g2.pos_basis_index(k);
    CHECK(g2.gram.at(i, i) == expect.at(g2.pos_roots[k].coords));
    int j = g2.neg_basis_index(k);
    CHECK(g2.gram.at(j, j) == g2.gram.at(i, i));
  }
  CHECK(g2.gram.at(0, 0) == 4);
  CHECK(g2.gram.at(1, 1) == 4);

  const Algebra& sl3 = Algebra::get("sl3");
  QVec e12 = sl3.unit(sl3.pos_basis_index(1));
  CHECK(sl3.norm_sq(e12) == 1);
  CHECK(sl3.inner(e12, sl3.unit(0)) == 0);
}

TEST_CASE("h_natural") {
  const Algebra& sl3 = Algebra::get("sl3");
  QVec hn = sl3.h_natural();
  CHECK(hn[0] == 1);
  CHECK(hn[1] == 1);  // diag(1,0,-1)
  for (const auto& r : sl3.pos_roots) CHECK(sl3.root_value(r, hn) == r.height);

  QVec hn4 = Algebra::get("sl4").h_natural();  // diag(3/2,1/2,-1/2,-3/2)
  CHECK(hn4[0] == QQ(3, 2));
  CHECK(hn4[1] == QQ(2));
  CHECK(hn4[2] == QQ(3, 2));

  QVec hn2 = Algebra::get("sl2").h_natural();
  CHECK(hn2[0] == QQ(1, 2));
}

TEST_CASE("exponential of a nilpotent") {
  const Algebra& g = Algebra::get("sl3");
  QVec n = qvec_add(g.unit(g.pos_basis_index(0)), g.unit(g.pos_basis_index(1)));
  QVec tau = g.h_natural();  // diag(1,0,-1)
  QMat E = g.exp_ad_nilpotent(n);
  // [tau, E12] = E12 and [tau, E23] = E23; the E13 corrections cancel
  QVec expect = tau;
  expect[g.pos_basis_index(0)] = -1;
  expect[g.pos_basis_index(1)] = -1;
  CHECK(E.apply(tau) == expect);
  CHECK(E.det() == 1);

  CHECK_THROWS_AS(g.exp_ad_nilpotent(g.unit(0)), invariant_error);
}

TEST_CASE("root decomposition and w membership") {
  const Algebra& g = Algebra::get("sp4");
  std::map<std::vector<int>, QQ> m = {{{1, 0}, QQ(3)}, {{2, 1}, QQ(-1, 2)}};
  QVec v = g.from_pos_root_map(m);
  CHECK(g.in_w(v));
  CHECK(!g.in_a(v));
  auto dec = g.root_decompose(v);
  CHECK(qvec_is_zero(dec.at("cartan")));
  CHECK(dec.at("+1,0")[g.pos_basis_index(1)] == 3);
  CHECK(dec.at("+2,1")[g.pos_basis_index(3)] == QQ(-1, 2));
  CHECK(qvec_is_zero(dec.at("-1,0")));
  CHECK_THROWS_AS(g.from_pos_root_map({{{1, 2}, QQ(1)}}), std::invalid_argument);

  CHECK(g.in_a(g.h_natural()));
  CHECK(!g.in_w(g.h_natural()));
}

TEST_CASE("orthogonal Cartan basis") {
  for (const char* tag : {"sl3", "sl4", "sp4", "g2", "sl2xsl2"}) {
    CAPTURE(tag);
    const Algebra& g = Algebra::get(tag);
    auto taus = g.cartan_orthogonal_basis();
    REQUIRE(int(taus.size()) == g.rank);
    for (int i = 0; i < g.rank; ++i) {
      CHECK(g.in_a(taus[i]));
      CHECK(g.norm_sq(taus[i]) > 0);
      for (int j = 0; j < i; ++j) CHECK(g.inner(taus[i], taus[j]) == 0);
    }
  }
  // sl3: second vector is h2 + h1/2
  auto taus = Algebra::get("sl3").cartan_orthogonal_basis();
  CHECK(taus[1][0] == QQ(1, 2));
  CHECK(taus[1][1] == 1);
}
