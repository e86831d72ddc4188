#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lieq {

// monic integer cubic p(x) = x^3 + a2 x^2 + a1 x + a0
struct CubicPoly {
  long long a2 = 0, a1 = 0, a0 = 0;

  long long discriminant() const;
  bool irreducible_over_q() const;  // rational-root test; exact for cubics
  bool split_over_r() const;        // three real roots: discriminant > 0
  bool operator==(const CubicPoly&) const = default;
};

using Mat3 = std::array<std::array<long long, 3>, 3>;

Mat3 companion(const CubicPoly& p);
CubicPoly char_poly(const Mat3& m);
long long frob_sq(const Mat3& m);

// integer matrices with char poly p inside the open Frobenius ball of
// radius T.  brute_force runs the 9-entry box as an independent oracle and
// is cost-guarded; enumerate walks rows 1-2 and solves row 3 from the
// trace/minor/determinant system, falling back to partial enumeration when
// the 2x2 system degenerates.
long long brute_force_count(const CubicPoly& p, double T,
                            bool allow_large = false);
long long enumerate_count(const CubicPoly& p, double T, int threads = 1);

//---------------------------------------------------------------- constants

// externally computed number-field data; provenance is mandatory since no
// ring-of-integers machinery lives here
struct FieldInvariants {
  double disc = 0;
  long long h = 0;
  double reg = 0;
  std::string provenance;
};

// shipped invariants for p = x^3 - x^2 - 2x + 1 (discriminant 49)
FieldInvariants reference_invariants();

double zeta(double s);  // Euler-Maclaurin, s > 1

// leading coefficient of the ball count: the general closed form and its
// n = 3 simplification; both per the unit-ball normalization
double cp_value(int n, const FieldInvariants& inv);
double cp_n3(const FieldInvariants& inv);

//---------------------------------------------------------------- series

struct CountRow {
  double T = 0;
  long long N = 0;
  double seconds = 0;
};

struct FitResult {
  double slope = 0, constant = 0, residual = 0;
};

// least squares on (log T, log N) over rows with N > 0; needs >= 4 rows
FitResult fit_leading(const std::vector<CountRow>& rows);

struct CountResult {
  std::vector<CountRow> rows;
  FitResult fit;
  double cp_reference = 0;
};

CountResult count_series(const CubicPoly& p, const std::vector<double>& radii,
                         int threads, const FieldInvariants& inv);

}  // namespace lieq
