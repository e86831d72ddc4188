#include "lieq/counting.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lieq/rational.hpp"

namespace lieq {

namespace {

// largest a >= 0 with a^2 < rem, or -1 when no integer qualifies
long long max_abs(double rem) {
  if (rem <= 0) return -1;
  long long a = (long long)std::floor(std::sqrt(rem));
  while (a >= 0 && double(a) * double(a) >= rem) --a;
  while (double(a + 1) * double(a + 1) < rem) ++a;
  return a;
}

bool char_poly_matches(const Mat3& m, const CubicPoly& p) {
  return char_poly(m) == p;
}

// row-solve tail for one fixed (m11, m12) head; T2 is the squared radius
long long count_tail(const CubicPoly& p, double T2, long long m11,
                     long long m12) {
  long long hits = 0;
  double h2 = double(m11 * m11 + m12 * m12);
  long long b22 = max_abs(T2 - h2);
  for (long long m22 = -b22; m22 <= b22; ++m22) {
    long long m33 = -p.a2 - m11 - m22;  // trace is settled here
    double rs3 = h2 + double(m22 * m22) + double(m33 * m33);
    long long b21 = max_abs(T2 - rs3);
    for (long long m21 = -b21; m21 <= b21; ++m21) {
      double rs4 = rs3 + double(m21 * m21);
      long long b13 = max_abs(T2 - rs4);
      for (long long m13 = -b13; m13 <= b13; ++m13) {
        double rs5 = rs4 + double(m13 * m13);
        long long b23 = max_abs(T2 - rs5);
        for (long long m23 = -b23; m23 <= b23; ++m23) {
          double rem = T2 - rs5 - double(m23 * m23);  // row-3 budget
          if (rem <= 0) continue;
          // minor sum and determinant are affine in (m31, m32)
          long long c31 = m12 * m23 - m13 * m22;
          long long c32 = m13 * m21 - m11 * m23;
          long long c33 = m11 * m22 - m12 * m21;
          long long r1 =
              p.a1 - c33 - (m11 + m22) * m33;
          long long r2 = -p.a0 - m33 * c33;
          long long det = -m13 * c32 + m23 * c31;
          auto accept = [&](long long m31, long long m32) {
            if (double(m31 * m31 + m32 * m32) >= rem) return;
            Mat3 m{{{m11, m12, m13}, {m21, m22, m23}, {m31, m32, m33}}};
            if (!char_poly_matches(m, p))
              throw invariant_error("enumerate_count: row solve disagrees");
            ++hits;
          };
          if (det != 0) {
            long long n31 = r1 * c32 + m23 * r2;
            long long n32 = -m13 * r2 - r1 * c31;
            // conservative norm pre-filter (exact, rounded up) saves the
            // divisions on hopeless leaves
            __int128 cap = (__int128)(det) * det * (long long)std::ceil(rem);
            if ((__int128)n31 * n31 >= cap) continue;
            if ((__int128)n32 * n32 >= cap) continue;
            if (n31 % det || n32 % det) continue;
            accept(n31 / det, n32 / det);
            continue;
          }
          // degenerate system: walk m31, then settle m32
          long long b31 = max_abs(rem);
          for (long long m31 = -b31; m31 <= b31; ++m31) {
            long long e1 = r1 + m13 * m31;  // -m23 m32 = e1
            long long e2 = r2 - c31 * m31;  // c32 m32 = e2
            if (m23 != 0) {
              if (e1 % m23) continue;
              long long m32 = -e1 / m23;
              if (c32 * m32 == e2) accept(m31, m32);
            } else if (c32 != 0) {
              if (e1 != 0 || e2 % c32) continue;
              accept(m31, e2 / c32);
            } else if (e1 == 0 && e2 == 0) {
              // fully free pair; only reachable off the irreducible locus,
              // kept for the oracle paths
              long long b32 = max_abs(rem - double(m31 * m31));
              for (long long m32 = -b32; m32 <= b32; ++m32)
                accept(m31, m32);
            }
          }
        }
      }
    }
  }
  return hits;
}

}  // namespace

long long CubicPoly::discriminant() const {
  long long a = a2, b = a1, c = a0;
  return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b -
         27 * c * c;
}

bool CubicPoly::irreducible_over_q() const {
  // a monic cubic is reducible over Q exactly when it has an integer root,
  // and any such root divides the constant term
  if (a0 == 0) return false;
  long long bound = std::llabs(a0);
  for (long long d = 1; d * d <= bound; ++d) {
    if (bound % d) continue;
    for (long long r : {d, -d, bound / d, -bound / d}) {
      if (((r + a2) * r + a1) * r + a0 == 0) return false;
    }
  }
  return true;
}

bool CubicPoly::split_over_r() const { return discriminant() > 0; }

Mat3 companion(const CubicPoly& p) {
  return Mat3{{{0, 0, -p.a0}, {1, 0, -p.a1}, {0, 1, -p.a2}}};
}

CubicPoly char_poly(const Mat3& m) {
  long long tr = m[0][0] + m[1][1] + m[2][2];
  long long m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] -
                 m[0][2] * m[2][0] + m[1][1] * m[2][2] - m[1][2] * m[2][1];
  long long det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                  m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                  m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return CubicPoly{-tr, m2, -det};
}

long long frob_sq(const Mat3& m) {
  long long s = 0;
  for (const auto& row : m)
    for (long long e : row) s += e * e;
  return s;
}

long long brute_force_count(const CubicPoly& p, double T, bool allow_large) {
  if (T <= 0) throw std::invalid_argument("brute_force_count: bad radius");
  if (T > 6 && !allow_large)
    throw std::invalid_argument(
        "brute_force_count: radius above the cost guard (pass allow_large)");
  double T2 = T * T;
  long long hits = 0;
  Mat3 m{};
  // entries in row-major order with running norm pruning
  auto walk = [&](auto&& self, int pos, double rs) -> void {
    if (pos == 9) {
      if (char_poly_matches(m, p)) ++hits;
      return;
    }
    long long b = max_abs(T2 - rs);
    for (long long v = -b; v <= b; ++v) {
      m[pos / 3][pos % 3] = v;
      self(self, pos + 1, rs + double(v * v));
    }
    m[pos / 3][pos % 3] = 0;
  };
  walk(walk, 0, 0.0);
  return hits;
}

long long enumerate_count(const CubicPoly& p, double T, int threads) {
  if (T <= 0) throw std::invalid_argument("enumerate_count: bad radius");
  if (!p.irreducible_over_q())
    throw std::invalid_argument(
        "enumerate_count: polynomial must be irreducible over Q");
  if (threads < 1) threads = 1;
  double T2 = T * T;
  std::vector<std::pair<long long, long long>> heads;
  long long b11 = max_abs(T2);
  for (long long m11 = -b11; m11 <= b11; ++m11) {
    long long b12 = max_abs(T2 - double(m11 * m11));
    for (long long m12 = -b12; m12 <= b12; ++m12) heads.emplace_back(m11, m12);
  }
  if (threads == 1 || heads.size() < 2) {
    long long total = 0;
    for (auto [m11, m12] : heads) total += count_tail(p, T2, m11, m12);
    return total;
  }
  std::vector<long long> partial(threads, 0);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      long long c = 0;
      for (size_t i = w; i < heads.size(); i += size_t(threads))
        c += count_tail(p, T2, heads[i].first, heads[i].second);
      partial[w] = c;
    });
  for (std::thread& t : pool) t.join();
  long long total = 0;
  for (long long c : partial) total += c;  // commutative; order-free
  return total;
}

//---------------------------------------------------------------- constants

FieldInvariants reference_invariants() {
  FieldInvariants inv;
  inv.disc = 49;
  inv.h = 1;
  inv.reg = 0.5254546821225724;
  inv.provenance =
      "externally derived: maximal real subfield of the 7th cyclotomic "
      "field (disc 49, monogenic, class number 1); regulator from the "
      "cyclotomic units 2cos(2pi/7), 2cos(4pi/7), cross-checked against "
      "the analytic class number formula";
  return inv;
}

double zeta(double s) {
  if (s <= 1) throw std::invalid_argument("zeta: need s > 1");
  const int N = 100;
  double sum = 0;
  for (int j = 1; j < N; ++j) sum += std::pow(j, -s);
  double t = std::pow(N, -s);
  sum += N * t / (s - 1) + t / 2 + s * t / N / 12 -
         s * (s + 1) * (s + 2) * t / (N * N * N) / 720.0;
  return sum;
}

namespace {

void check_invariants(const FieldInvariants& inv) {
  if (inv.disc <= 0 || inv.h <= 0 || inv.reg <= 0)
    throw std::invalid_argument("field invariants must be positive");
  if (inv.provenance.empty())
    throw std::invalid_argument("field invariants need a provenance note");
}

}  // namespace

double cp_value(int n, const FieldInvariants& inv) {
  if (n < 2) throw std::invalid_argument("cp_value: need n >= 2");
  check_invariants(inv);
  const double pi = 3.14159265358979323846;
  double denom_prod = 1;
  for (int k = 2; k <= n; ++k)
    denom_prod *= std::pow(pi, -k / 2.0) * std::tgamma(k / 2.0) * zeta(k);
  double beta = std::pow(pi, n / 2.0) / std::tgamma(n / 2.0 + 1);
  return std::pow(2.0, n - 1) * double(inv.h) * inv.reg * beta /
         (std::sqrt(inv.disc) * denom_prod);
}

double cp_n3(const FieldInvariants& inv) {
  check_invariants(inv);
  const double pi = 3.14159265358979323846;
  return 64 * pi * double(inv.h) * inv.reg / (std::sqrt(inv.disc) * zeta(3));
}

//---------------------------------------------------------------- series

FitResult fit_leading(const std::vector<CountRow>& rows) {
  std::vector<std::pair<double, double>> pts;
  for (const CountRow& r : rows)
    if (r.N > 0) pts.emplace_back(std::log(r.T), std::log(double(r.N)));
  if (pts.size() < 4)
    throw std::invalid_argument("fit_leading: need at least four counts");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = double(pts.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double icept = (sy - slope * sx) / n;
  double ss = 0;
  for (auto [x, y] : pts) {
    double e = y - slope * x - icept;
    ss += e * e;
  }
  return FitResult{slope, std::exp(icept), std::sqrt(ss / n)};
}

CountResult count_series(const CubicPoly& p, const std::vector<double>& radii,
                         int threads, const FieldInvariants& inv) {
  if (!p.split_over_r())
    throw std::invalid_argument("count_series: polynomial must split over R");
  CountResult res;
  for (double T : radii) {
    if (!res.rows.empty() && T <= res.rows.back().T)
      throw std::invalid_argument("count_series: radii must increase");
    auto t0 = std::chrono::steady_clock::now();
    long long n = enumerate_count(p, T, threads);
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    if (!res.rows.empty() && n < res.rows.back().N)
      throw invariant_error("count_series: counts must be nondecreasing");
    res.rows.push_back(CountRow{T, n, dt.count()});
  }
  res.fit = fit_leading(res.rows);
  res.cp_reference = cp_n3(inv);
  return res;
}

}  // namespace lieq
