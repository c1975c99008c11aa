#pragma once

// Circle-action reduction: the nine algebraic invariants with their
// syzygies and Poisson table, the 4-coordinate local section chart with
// the reduced Hamiltonians, and the Delzant polygons of the reduced
// spaces K^{-1}(k)/S^1.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "tcm/phase.hpp"

namespace tcm {

// ---------------------------------------------------------------- invariants

/// (K, u3, v3, X1, Y1, X2, Y2, X3, Y3) with
/// X1+iY1 = v zbar, X2+iY2 = z ubar, X3+iY3 = u vbar.
struct InvariantPoint {
  double k, u3, v3, X1, Y1, X2, Y2, X3, Y3;
};

enum class Inv { K = 0, U3, V3, X1, Y1, X2, Y2, X3, Y3 };

InvariantPoint invariants_of(const PhasePoint& x);

/// Residuals of the nine syzygies; all vanish on the image of invariants_of.
std::array<double, 9> syzygies(const InvariantPoint& X);

/// Poisson bracket {a, b} evaluated at X, from the reduced structure table.
double poisson_table_bracket(Inv a, Inv b, const InvariantPoint& X);
double poisson_table_bracket(const std::string& a, const std::string& b,
                             const InvariantPoint& X);

double invariant_component(const InvariantPoint& X, Inv a);

// ------------------------------------------------------------- section chart

/// Local section coordinates (theta_u, u3, theta_v, v3) at momentum level k.
/// Valid when |u3| < 1, |v3| < 1, k - u3 - v3 > 0.
struct ReducedPoint {
  double theta_u, u3, theta_v, v3, k;
};

/// Lift through the section: z = i sqrt(2(k-u3-v3)) (q positive, p = 0).
template <class Scalar>
PhaseVecT<Scalar> section_lift(Scalar theta_u, Scalar u3, Scalar theta_v,
                               Scalar v3, Scalar k) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  PhaseVecT<Scalar> x;
  const Scalar au = sqrt(1 - u3 * u3), av = sqrt(1 - v3 * v3);
  x[iU1] = au * cos(theta_u);
  x[iU2] = au * sin(theta_u);
  x[iU3] = u3;
  x[iV1] = av * cos(theta_v);
  x[iV2] = av * sin(theta_v);
  x[iV3] = v3;
  x[iQ] = sqrt(2 * (k - u3 - v3));
  x[iP] = Scalar(0);
  return x;
}

/// Reduced Hamiltonians on the section; equal H1, H2 at the lift.
template <class Scalar>
Scalar reduced_H(int which, Scalar theta_u, Scalar u3, Scalar theta_v,
                 Scalar v3, Scalar k, const SystemParamsT<Scalar>& pr) {
  using std::cos;
  using std::sqrt;
  const Scalar au = sqrt(1 - u3 * u3), av = sqrt(1 - v3 * v3);
  const Scalar s = sqrt(k - u3 - v3);
  const Scalar c = 2 * pr.g * pr.g / (pr.delta2 - pr.delta1);
  const Scalar x3t = au * av * cos(theta_u - theta_v) + u3 * v3;
  if (which == 1)
    return (pr.delta1 - pr.omega) * u3 + 2 * pr.g * au * s * cos(theta_u) -
           c * x3t;
  return (pr.delta2 - pr.omega) * v3 + 2 * pr.g * av * s * cos(theta_v) +
         c * x3t;
}

/// (H1^, H2^) at a reduced point. Throws DomainError outside the section
/// domain.
std::pair<double, double> reduced_hamiltonians(const ReducedPoint& R,
                                               const SystemParams& params);

/// Gradient and Hessian of H1^ or H2^ in (theta_u, u3, theta_v, v3),
/// k fixed. Closed-form; the stability classification depends on the
/// Hessian being accurate to machine precision at degenerate points.
Eigen::Vector4d reduced_H_gradient(int which, const ReducedPoint& R,
                                   const SystemParams& params);
Eigen::Matrix4d reduced_H_hessian(int which, const ReducedPoint& R,
                                  const SystemParams& params);

/// Linearized Hamiltonian field J * Hess of c1*H1^ + c2*H2^ at R.
Eigen::Matrix4d reduced_linearization(double c1, double c2,
                                      const ReducedPoint& R,
                                      const SystemParams& params);

// ----------------------------------------------------------------- polytopes

struct DelzantPolygon {
  std::vector<Eigen::Vector2d> vertices;  // extreme points, affine in k
};

/// Vertices of the Delzant polygon of K^{-1}(k)/S^1. Throws
/// SingularReducedSpace for k in {-2, 0, 2} and OutOfRange for k < -2.
DelzantPolygon delzant_polygon(double k);

}  // namespace tcm
