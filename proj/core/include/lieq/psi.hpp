#pragma once

#include "lieq/algebra.hpp"

namespace lieq {

// Conjugation displacement map on w = sum of the positive root spaces:
//
//   psi(nu) = Ad(exp(-nu)) v0 - v0 = exp(ad(-nu)) v0 - v0,
//
// a polynomial bijection of w whenever v0 is a regular Cartan element
// (beta(v0) != 0 for every positive root beta; the height recursion below
// divides by each of these values). All of psi_map / psi_inverse /
// jacobian_check are exact over Q.

QVec psi_map(const Algebra& g, const QVec& nu, const QVec& v0);

// Inverse by height recursion: the height-h component of psi(nu) equals
// beta(v0) nu_beta plus terms involving strictly lower heights only, so the
// unknowns are solved one height at a time. The result is verified by a
// final exact psi_map round trip.
QVec psi_inverse(const Algebra& g, const QVec& w, const QVec& v0);

// Derivative of psi at nu, restricted to w, in the basis order (which is
// already ascending in height). The linear part nu |-> [v0, nu] is diagonal
// with entries beta(v0); dividing it out identifies the target copy of w
// with the source, and what remains is unit upper triangular because the
// nonlinear terms at height h only involve heights < h.
struct JacobianReport {
  QMat derivative;      // num_pos x num_pos, exact
  QMat unipotent;       // derivative relative to the diagonal linear part
  QQ det_derivative;    // = prod over positive roots of beta(v0), all nu
  QQ det_unipotent;     // exactly 1
  bool unit_upper_triangular = false;
};

JacobianReport jacobian_check(const Algebra& g, const QVec& nu,
                              const QVec& v0);

// Volume of the shifted region C_T = {nu in w : ||nu + v0|| < T} estimated
// on a deterministic midpoint grid (samples points per axis over the
// bounding box of the outer ball), together with the ball volumes at radii
// T -/+ ||v0|| that must sandwich it. Norm and measure come from the trace
// form; v0 must lie in the Cartan and T must exceed ||v0||.
struct SandwichReport {
  double t = 0;
  double v0_norm = 0;
  int dim_w = 0;
  double estimate = 0;    // grid estimate of mu(C_T)
  double lower = 0;       // vol B_{T - ||v0||}
  double upper = 0;       // vol B_{T + ||v0||}
  double grid_slack = 0;  // relative tolerance granted to the estimate
  bool holds = false;     // lower <= estimate <= upper, up to grid slack
};

SandwichReport star_ball_sandwich(const Algebra& g, const QVec& v0, double T,
                                  int samples);

}  // namespace lieq
