#include <cmath>
#include <random>

#include "doctest.h"
#include "lieq/limit.hpp"

using namespace lieq;

namespace {

QVec sl3_elem(const QQ& x, const QQ& y, const QQ& z) {
  return Algebra::get("sl3").from_pos_root_map(
      {{{1, 0}, x}, {{0, 1}, y}, {{1, 1}, z}});
}

bool span_eq(const std::vector<QVec>& a, const std::vector<QVec>& b) {
  return same_column_span(QMat::from_cols(a), QMat::from_cols(b));
}

QVec random_vec(const Algebra& g, std::mt19937_64& rng) {
  QVec v = g.zero();
  for (int i = 0; i < g.dim; ++i) v[i] = QQ(int(rng() % 11) - 5);
  return v;
}

}  // namespace

//---------------------------------------------------------------- wedges

TEST_CASE("wedge masks enumerate subsets in lex order") {
  const auto& m53 = wedge_masks(5, 2);
  REQUIRE(m53.size() == 10);
  // (0,1),(0,2),(0,3),(0,4),(1,2),(1,3),(1,4),(2,3),(2,4),(3,4)
  std::vector<uint32_t> expect = {3, 5, 9, 17, 6, 10, 18, 12, 20, 24};
  CHECK(m53 == expect);
  for (size_t i = 0; i < m53.size(); ++i)
    CHECK(wedge_index(5, 2, m53[i]) == int(i));
  CHECK(wedge_masks(6, 3).size() == 20);
  CHECK(wedge_masks(15, 3).size() == 455);
  CHECK(wedge_masks(15, 4).size() == 1365);
  CHECK(wedge_index(6, 3, 0b111u) == 0);
  CHECK_THROWS_AS(wedge_index(6, 3, 0b11u), std::invalid_argument);
  // grade-1 masks line up with the plain basis order
  const auto& m1 = wedge_masks(7, 1);
  for (int i = 0; i < 7; ++i) CHECK(m1[i] == (1u << i));
}

TEST_CASE("frame coordinates round trip and diagonalize the form") {
  std::mt19937_64 rng(7);
  for (const auto& tag : Algebra::known_tags()) {
    CAPTURE(tag);
    const Algebra& g = Algebra::get(tag);
    WedgeFrame F(g);
    for (int i = 0; i < int(F.tau.size()); ++i) {
      CHECK(g.norm_sq(F.tau[i]) == F.weight[i]);
      for (int j = i + 1; j < int(F.tau.size()); ++j)
        CHECK(g.inner(F.tau[i], F.tau[j]) == 0);
    }
    for (int t = 0; t < 5; ++t) {
      QVec x = random_vec(g, rng);
      CHECK(F.to_std(F.to_frame(x)) == x);
      // the form is the weighted dot product in frame coordinates
      QVec y = random_vec(g, rng);
      QVec fx = F.to_frame(x), fy = F.to_frame(y);
      QQ s = 0;
      for (int i = 0; i < g.dim; ++i) s += fx[i] * fy[i] * F.weight[i];
      CHECK(s == g.inner(x, y));
    }
  }
}

TEST_CASE("wedge inner products equal Gram determinants") {
  std::mt19937_64 rng(11);
  for (const std::string tag : {"sl3", "sp4", "g2"}) {
    CAPTURE(tag);
    const Algebra& g = Algebra::get(tag);
    for (int r : {2, 3}) {
      for (int rep = 0; rep < 4; ++rep) {
        std::vector<QVec> v, w;
        for (int i = 0; i < r; ++i) {
          v.push_back(random_vec(g, rng));
          w.push_back(random_vec(g, rng));
        }
        QMat gram(r, r);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) gram.at(i, j) = g.inner(v[i], w[j]);
        CHECK(wedge_inner(g, wedge_of(g, v), wedge_of(g, w)) == gram.det());
      }
    }
  }
}

TEST_CASE("projective distance basics") {
  const Algebra& g = Algebra::get("sl3");
  std::mt19937_64 rng(3);
  std::vector<QVec> v = {random_vec(g, rng), random_vec(g, rng)};
  WedgeVector P = wedge_of(g, v);
  CHECK(fubini_study(g, P, P) == doctest::Approx(0.0));
  WedgeVector Pm{P.grade, qvec_scale(QQ(-3), P.coords)};
  CHECK(fubini_study(g, P, Pm) == doctest::Approx(0.0));
  // orthogonal lines sit at distance sqrt(2)
  WedgeVector A = wedge_of(g, {g.unit(g.pos_basis_index(0))});
  WedgeVector B = wedge_of(g, {g.unit(g.pos_basis_index(1))});
  CHECK(fubini_study(g, A, B) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(wedge_inner(g, P, A), std::invalid_argument);
}

//---------------------------------------------------------------- curves

TEST_CASE("the sl2 orbit curve is h - 2t E12") {
  const Algebra& g = Algebra::get("sl2");
  QVec n = g.zero();
  n[g.pos_basis_index(0)] = 1;
  GrassmannCurve c = orbit_curve(g, n);
  REQUIRE(c.grade == 1);
  REQUIRE(c.degree == 1);
  CHECK(c.coefficients[0].coords == QVec{QQ(1), QQ(0), QQ(0)});
  CHECK(c.coefficients[1].coords == QVec{QQ(0), QQ(-2), QQ(0)});
  LimitingResult lim = leading_subspace(g, c);
  CHECK(span_eq(lim.subspace_basis, {g.unit(g.pos_basis_index(0))}));
  CHECK(lim.is_abelian);
}

TEST_CASE("curves start at the wedge of the Cartan and stay pure") {
  const Algebra& g = Algebra::get("sl3");
  QVec n = sl3_elem(2, -1, 3);
  GrassmannCurve c = orbit_curve(g, n);
  WedgeVector at0 = c.eval(0);
  CHECK(at0.coords == wedge_of(g, g.cartan_orthogonal_basis()).coords);
  for (const QQ& t : std::vector<QQ>{QQ(1), QQ(-2), QQ(7) / 3}) {
    CAPTURE(qq_str(t));
    WedgeVector X = c.eval(t);
    GrassmannCurve point{X.grade, {X}, 0};
    LimitingResult lim = leading_subspace(g, point);  // purity check inside
    // the recovered plane is exp(ad(tn)) applied to the Cartan
    QMat E = g.exp_ad_nilpotent(n, t);
    std::vector<QVec> moved;
    for (const QVec& tau : g.cartan_orthogonal_basis())
      moved.push_back(E.apply(tau));
    CHECK(span_eq(lim.subspace_basis, moved));
  }
}

TEST_CASE("impure leading coefficients are rejected") {
  const Algebra& g = Algebra::get("sl4");
  QVec coords = qvec_zero(wedge_masks(g.dim, 2).size());
  coords[wedge_index(g.dim, 2, 0b11u)] = 1;
  coords[wedge_index(g.dim, 2, 0b1100u)] = 1;  // e01 + e23 is not a wedge
  GrassmannCurve fake{2, {WedgeVector{2, coords}}, 0};
  CHECK_THROWS_AS(leading_subspace(g, fake), invariant_error);
}

TEST_CASE("sl3 integer samples land on the stated plane") {
  const Algebra& g = Algebra::get("sl3");
  struct Row {
    int x, y, z;
  };
  for (Row s : {Row{1, 1, 5}, Row{2, -3, 1}, Row{1, 1, 0}}) {
    CAPTURE(s.x);
    CAPTURE(s.y);
    CAPTURE(s.z);
    QVec n = sl3_elem(s.x, s.y, s.z);
    GrassmannCurve c = orbit_curve(g, n);
    CHECK(c.degree == 3);
    LimitingResult lim = leading_subspace(g, c);
    CHECK(lim.leading_degree == 3);
    QVec u = sl3_elem(s.x, s.y, 0);
    QVec e13 = sl3_elem(0, 0, 1);
    CHECK(span_eq(lim.subspace_basis, {u, e13}));
    CHECK(lim.is_lie_algebra);
    CHECK(lim.is_abelian);
    CHECK(lim.c_phi >= 4.0);
  }
}

TEST_CASE("the sl3 direction curve degenerates to the stated line") {
  const Algebra& g = Algebra::get("sl3");
  QVec tau = g.zero();  // diag(-1, 0, 1) = -(h1 + h2)
  tau[0] = -1;
  tau[1] = -1;
  for (auto [x, y, z] : {std::tuple<int, int, int>{1, 1, 5}, {2, -3, 1}}) {
    QVec n = sl3_elem(x, y, z);
    GrassmannCurve c = orbit_curve(g, n, {tau});
    REQUIRE(c.degree == 1);
    CHECK(c.coefficients[0].coords == WedgeFrame(g).to_frame(tau));
    LimitingResult lim = leading_subspace(g, c);
    REQUIRE(lim.subspace_basis.size() == 1);
    CHECK(span_eq(lim.subspace_basis, {sl3_elem(x, y, 2 * z)}));
  }
}

//---------------------------------------------------------------- classify

TEST_CASE("low-height classifications are centralizing") {
  std::mt19937_64 rng(7);
  for (const std::string tag : {"sl2", "sl3", "sl4", "sp4", "sl2xsl2"}) {
    CAPTURE(tag);
    const Algebra& g = Algebra::get(tag);
    int samples = g.dim > 10 ? 3 : 5;
    for (int s = 0; s < samples; ++s) {
      QVec n = sample_regular_nilpotent(g, rng);
      LimitingResult res = classify(g, n);
      CHECK(res.is_quasi_centralizing);
      CHECK(res.is_centralizing);
      CHECK(res.witness_gap_ok);
      CHECK(res.leading_degree == g.num_pos);
      CHECK(res.is_lie_algebra);
      CHECK(res.is_abelian);
      CHECK(res.epsilon > 0);
      REQUIRE(res.witness.has_value());
      // the witness is a regular element whose centralizer is the limit
      CHECK(span_eq(res.subspace_basis,
                    [&] {
                      QMat k = g.ad(*res.witness).kernel();
                      std::vector<QVec> cols;
                      for (int c = 0; c < k.cols(); ++c) cols.push_back(k.col(c));
                      return cols;
                    }()));
      CHECK(res.pairing > 1e-10);
      CHECK(res.pairing <= 1.0 + 1e-9);
      CHECK(res.pi_upper <= 1.0 + 1e-9);
      CHECK(res.pi_lower > 0);
      CHECK(res.pi_upper >= res.pi_lower_env);
    }
  }
}

TEST_CASE("rank-one and rank-two limits match the centralizer") {
  std::mt19937_64 rng(19);
  for (const std::string tag : {"sl2", "sl3"}) {
    CAPTURE(tag);
    const Algebra& g = Algebra::get(tag);
    for (int s = 0; s < 5; ++s) {
      QVec n = sample_regular_nilpotent(g, rng);
      LimitingResult res = classify(g, n);
      QMat k = g.ad(n).kernel();
      std::vector<QVec> cols;
      for (int c = 0; c < k.cols(); ++c) cols.push_back(k.col(c));
      CHECK(span_eq(res.subspace_basis, cols));
      if (tag == "sl3") CHECK(*res.witness == n);  // the element certifies itself
    }
  }
}

TEST_CASE("the g2 element fails the projection test") {
  const Algebra& g = Algebra::get("g2");
  QVec n = g2_counterexample();
  // regular, with unit simple components and support strictly above height 1
  for (int s = 0; s < g.rank; ++s)
    CHECK(n[g.pos_basis_index(g.simple_pos_index[s])] == 1);
  CHECK(epsilon_regularity(g, n) > 0);
  Sl2Data d = natural_triple(g);
  REQUIRE(d.irreps[0].kappa == 5);
  CHECK(d.irreps[0].vectors.size() == 11);
  // exact component of n at weight 2 of the long string is nonzero
  std::vector<QVec> wcols;
  std::vector<bool> is_target;
  for (const Irrep& irr : d.irreps)
    for (int idx = 0; idx < int(irr.vectors.size()); ++idx) {
      wcols.push_back(irr.vectors[idx]);
      is_target.push_back(irr.kappa == 5 && idx == 2 + 5);
    }
  QVec y = QMat::from_cols(wcols).inverse().apply(n);
  bool seen = false;
  for (size_t i = 0; i < wcols.size(); ++i)
    if (is_target[i] && y[i] != 0) seen = true;
  CHECK(seen);

  LimitingResult res = classify(g, n);
  CHECK(!res.is_quasi_centralizing);
  CHECK(!res.is_centralizing);
  CHECK(res.pairing == 0.0);  // exact: the cross-Gram determinant vanishes
  CHECK(res.pi_lower == 0.0);
  CHECK(res.pi_upper <= 1.0 + 1e-9);
}

TEST_CASE("the pairing diagnostic agrees with the rank test") {
  std::mt19937_64 rng(23);
  const Algebra& a2 = Algebra::get("sl3");
  for (int s = 0; s < 5; ++s) {
    LimitingResult res = classify(a2, sample_regular_nilpotent(a2, rng));
    CHECK((res.pairing > 1e-8) == res.is_quasi_centralizing);
  }
  LimitingResult bad = classify(Algebra::get("g2"), g2_counterexample());
  CHECK((bad.pairing != 0.0) == bad.is_quasi_centralizing);
}

//---------------------------------------------------------------- limits

TEST_CASE("convergence rows respect the stated envelope") {
  const Algebra& g = Algebra::get("sl3");
  std::mt19937_64 rng(29);
  for (int s = 0; s < 4; ++s) {
    QVec n = sample_regular_nilpotent(g, rng);
    auto rows = convergence_report(g, n, {QQ(10), QQ(100), QQ(1000), QQ(10000)});
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
      CAPTURE(qq_str(row.t));
      CHECK(row.within);
      CHECK(row.bound == doctest::Approx(rows[0].bound * 10 / qd(row.t)));
    }
    for (size_t i = 1; i < rows.size(); ++i)
      CHECK(rows[i].distance <= rows[i - 1].distance + 1e-12);
  }
  CHECK_THROWS_AS(convergence_report(g, sl3_elem(1, 1, 1), {QQ(0)}),
                  std::invalid_argument);
}

TEST_CASE("expansion floors scale linearly and start at one") {
  const Algebra& g = Algebra::get("sl3");
  QVec n = sl3_elem(1, 2, -1);
  CHECK(expansion_floor(g, n, 1e-8) == doctest::Approx(1.0).epsilon(1e-6));
  double f1 = expansion_floor(g, n, 64);
  double f2 = expansion_floor(g, n, 128);
  CHECK(f2 / f1 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(f1 > 1.0);
  CHECK_THROWS_AS(expansion_floor(g, n, 0.0), std::invalid_argument);
}

TEST_CASE("curve construction validates its inputs") {
  const Algebra& g = Algebra::get("sl3");
  QVec h = g.unit(0);
  CHECK_THROWS_AS(orbit_curve(g, h), std::invalid_argument);  // not in w
  // h1 and h2 are not orthogonal
  CHECK_THROWS_AS(orbit_curve(g, sl3_elem(1, 1, 0), {g.unit(0), g.unit(1)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(orbit_curve(g, sl3_elem(1, 1, 0), {g.zero()}),
                  std::invalid_argument);
  // irregular elements are caught by the classification gate
  CHECK_THROWS_AS(classify(g, sl3_elem(1, 0, 2)), invariant_error);
}
