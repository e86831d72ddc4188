#include <benchmark/benchmark.h>

#include "lieq/counting.hpp"
#include "lieq/goodfn.hpp"
#include "lieq/limit.hpp"
#include "lieq/psi.hpp"

using namespace lieq;

static void BM_bracket(benchmark::State& state) {
  const Algebra& g = Algebra::get("g2");
  QVec x = g.zero(), y = g.zero();
  for (int i = 0; i < g.dim; ++i) {
    x[i] = QQ(i - 5, 3);
    y[i] = QQ(7 - i, 2);
  }
  for (auto _ : state) benchmark::DoNotOptimize(g.bracket(x, y));
}
BENCHMARK(BM_bracket);

static void BM_exp_ad(benchmark::State& state) {
  const Algebra& g = Algebra::get("sl4");
  QVec n = g.zero();
  for (int s = 0; s < g.rank; ++s)
    n[g.pos_basis_index(g.simple_pos_index[s])] = s + 1;
  for (auto _ : state) benchmark::DoNotOptimize(g.exp_ad_nilpotent(n));
}
BENCHMARK(BM_exp_ad);

static void BM_jordan(benchmark::State& state) {
  const Algebra& g = Algebra::get("sl4");
  std::mt19937_64 rng(7);
  QVec n = sample_regular_nilpotent(g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(jordan_decompose(g, n));
}
BENCHMARK(BM_jordan);

static void BM_orbit_curve(benchmark::State& state) {
  const Algebra& g = Algebra::get("sp4");
  std::mt19937_64 rng(7);
  QVec n = sample_regular_nilpotent(g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_curve(g, n));
}
BENCHMARK(BM_orbit_curve);

static void BM_classify(benchmark::State& state) {
  const Algebra& g = Algebra::get(state.range(0) == 0 ? "sl3" : "g2");
  QVec n = state.range(0) == 0 ? [&] {
    std::mt19937_64 rng(7);
    return sample_regular_nilpotent(g, rng);
  }()
                               : g2_counterexample();
  for (auto _ : state) benchmark::DoNotOptimize(classify(g, n));
}
BENCHMARK(BM_classify)->Arg(0)->Arg(1);

static void BM_enumerate_count(benchmark::State& state) {
  CubicPoly p{-1, -2, 1};
  double T = double(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_count(p, T, 1));
}
BENCHMARK(BM_enumerate_count)->Arg(5)->Arg(8);

static void BM_psi_round_trip(benchmark::State& state) {
  const Algebra& g = Algebra::get("sl3");
  QVec v0 = g.zero();
  v0[0] = 3;
  v0[1] = 4;
  QVec nu = g.zero();
  for (int k = 0; k < g.num_pos; ++k)
    nu[g.pos_basis_index(k)] = QQ(k + 1, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(psi_inverse(g, psi_map(g, nu, v0), v0));
}
BENCHMARK(BM_psi_round_trip);

static void BM_jacobian(benchmark::State& state) {
  const Algebra& g = Algebra::get("sp4");
  QVec v0 = g.zero();
  v0[0] = 1;
  v0[1] = 10;
  QVec nu = g.zero();
  for (int k = 0; k < g.num_pos; ++k)
    nu[g.pos_basis_index(k)] = QQ(k + 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_check(g, nu, v0));
}
BENCHMARK(BM_jacobian);

static void BM_certificate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certificate(4, 0.25));
}
BENCHMARK(BM_certificate);

static void BM_good_check(benchmark::State& state) {
  std::mt19937_64 rng(7);
  ExpPolynomial f = sample_exp_polynomial(1, 1, 1, rng);
  GoodCertificate cert = certificate(1, 1);
  Ball ball{{0.5}, 0.25};
  for (auto _ : state)
    benchmark::DoNotOptimize(empirical_good_check(f, ball, 1e-2, cert));
}
BENCHMARK(BM_good_check);

BENCHMARK_MAIN();
