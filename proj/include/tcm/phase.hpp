#pragma once

// Phase space of the two-spin model: S^2 x S^2 x R^2 embedded in R^8.
//
// State layout: (u1, u2, u3, v1, v2, v3, q, p). The complex shorthands
// u = u1 + i u2, v = v1 + i v2, z = p + i q are expanded to real form
// here, once; every other module consumes these definitions.

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "tcm/params.hpp"

namespace tcm {

template <class Scalar>
using PhaseVecT = Eigen::Matrix<Scalar, 8, 1>;
template <class Scalar>
using Value3T = Eigen::Matrix<Scalar, 3, 1>;

using PhasePoint = PhaseVecT<double>;
using TangentVector = PhaseVecT<double>;
using IntegralValue = Value3T<double>;  // (h1, h2, k)

enum PhaseIndex { iU1 = 0, iU2, iU3, iV1, iV2, iV3, iQ, iP };

inline constexpr double kSphereTol = 1e-9;

enum class Integral { H1, H2, K };

template <class Scalar>
Scalar eval_K(const PhaseVecT<Scalar>& x, const SystemParamsT<Scalar>&) {
  return x[iU3] + x[iV3] + (x[iP] * x[iP] + x[iQ] * x[iQ]) / 2;
}

template <class Scalar>
Scalar eval_H1(const PhaseVecT<Scalar>& x, const SystemParamsT<Scalar>& pr) {
  using std::sqrt;
  const Scalar c2 = pr.g * pr.g / (pr.delta2 - pr.delta1);
  const Scalar coupling = x[iU1] * x[iV1] + x[iU2] * x[iV2] + x[iU3] * x[iV3];
  return (pr.delta1 - pr.omega) * x[iU3] +
         sqrt(Scalar(2)) * pr.g * (x[iQ] * x[iU1] - x[iP] * x[iU2]) -
         2 * c2 * coupling;
}

template <class Scalar>
Scalar eval_H2(const PhaseVecT<Scalar>& x, const SystemParamsT<Scalar>& pr) {
  using std::sqrt;
  const Scalar c2 = pr.g * pr.g / (pr.delta2 - pr.delta1);
  const Scalar coupling = x[iU1] * x[iV1] + x[iU2] * x[iV2] + x[iU3] * x[iV3];
  return (pr.delta2 - pr.omega) * x[iV3] +
         sqrt(Scalar(2)) * pr.g * (x[iQ] * x[iV1] - x[iP] * x[iV2]) +
         2 * c2 * coupling;
}

/// F = (H1, H2, K).
template <class Scalar>
Value3T<Scalar> eval_integrals(const PhaseVecT<Scalar>& x,
                               const SystemParamsT<Scalar>& pr) {
  return {eval_H1(x, pr), eval_H2(x, pr), eval_K(x, pr)};
}

/// Physical Hamiltonian H = H1 + H2 + omega*K.
template <class Scalar>
Scalar eval_H(const PhaseVecT<Scalar>& x, const SystemParamsT<Scalar>& pr) {
  return eval_H1(x, pr) + eval_H2(x, pr) + pr.omega * eval_K(x, pr);
}

template <class Scalar>
PhaseVecT<Scalar> field_K(const PhaseVecT<Scalar>& x,
                          const SystemParamsT<Scalar>&) {
  PhaseVecT<Scalar> d;
  d[iU1] = -x[iU2];
  d[iU2] = x[iU1];
  d[iU3] = 0;
  d[iV1] = -x[iV2];
  d[iV2] = x[iV1];
  d[iV3] = 0;
  d[iQ] = x[iP];
  d[iP] = -x[iQ];
  return d;
}

template <class Scalar>
PhaseVecT<Scalar> field_H1(const PhaseVecT<Scalar>& x,
                           const SystemParamsT<Scalar>& pr) {
  using std::sqrt;
  const Scalar c2 = pr.g * pr.g / (pr.delta2 - pr.delta1);
  const Scalar s2g = sqrt(Scalar(2)) * pr.g;
  const Scalar d1m = pr.delta1 - pr.omega;
  // w = u3*v - v3*u,  Y3 = Im(u*conj(v))
  const Scalar w1 = x[iU3] * x[iV1] - x[iV3] * x[iU1];
  const Scalar w2 = x[iU3] * x[iV2] - x[iV3] * x[iU2];
  const Scalar Y3 = x[iU2] * x[iV1] - x[iU1] * x[iV2];
  PhaseVecT<Scalar> d;
  d[iU1] = -d1m * x[iU2] - s2g * x[iU3] * x[iP] - 2 * c2 * w2;
  d[iU2] = d1m * x[iU1] - s2g * x[iU3] * x[iQ] + 2 * c2 * w1;
  d[iU3] = s2g * (x[iU1] * x[iP] + x[iU2] * x[iQ]) - 2 * c2 * Y3;
  d[iV1] = 2 * c2 * w2;
  d[iV2] = -2 * c2 * w1;
  d[iV3] = 2 * c2 * Y3;
  d[iQ] = -s2g * x[iU2];
  d[iP] = -s2g * x[iU1];
  return d;
}

template <class Scalar>
PhaseVecT<Scalar> field_H2(const PhaseVecT<Scalar>& x,
                           const SystemParamsT<Scalar>& pr) {
  using std::sqrt;
  const Scalar c2 = pr.g * pr.g / (pr.delta2 - pr.delta1);
  const Scalar s2g = sqrt(Scalar(2)) * pr.g;
  const Scalar d2m = pr.delta2 - pr.omega;
  const Scalar w1 = x[iU3] * x[iV1] - x[iV3] * x[iU1];
  const Scalar w2 = x[iU3] * x[iV2] - x[iV3] * x[iU2];
  const Scalar Y3 = x[iU2] * x[iV1] - x[iU1] * x[iV2];
  PhaseVecT<Scalar> d;
  d[iU1] = 2 * c2 * w2;
  d[iU2] = -2 * c2 * w1;
  d[iU3] = 2 * c2 * Y3;
  d[iV1] = -d2m * x[iV2] - s2g * x[iV3] * x[iP] - 2 * c2 * w2;
  d[iV2] = d2m * x[iV1] - s2g * x[iV3] * x[iQ] + 2 * c2 * w1;
  d[iV3] = s2g * (x[iV1] * x[iP] + x[iV2] * x[iQ]) - 2 * c2 * Y3;
  d[iQ] = -s2g * x[iV2];
  d[iP] = -s2g * x[iV1];
  return d;
}

template <class Scalar>
PhaseVecT<Scalar> vector_field(Integral which, const PhaseVecT<Scalar>& x,
                               const SystemParamsT<Scalar>& pr) {
  switch (which) {
    case Integral::H1: return field_H1(x, pr);
    case Integral::H2: return field_H2(x, pr);
    default: return field_K(x, pr);
  }
}

/// a1*X_H1 + a2*X_H2 + a3*X_K.
template <class Scalar>
PhaseVecT<Scalar> combined_field(const Value3T<Scalar>& a,
                                 const PhaseVecT<Scalar>& x,
                                 const SystemParamsT<Scalar>& pr) {
  PhaseVecT<Scalar> d = PhaseVecT<Scalar>::Zero();
  if (a[0] != Scalar(0)) d += a[0] * field_H1(x, pr);
  if (a[1] != Scalar(0)) d += a[1] * field_H2(x, pr);
  if (a[2] != Scalar(0)) d += a[2] * field_K(x, pr);
  return d;
}

/// Analytic gradients, used by the Newton solvers.
template <class Scalar>
PhaseVecT<Scalar> grad_H1(const PhaseVecT<Scalar>& x,
                          const SystemParamsT<Scalar>& pr) {
  using std::sqrt;
  const Scalar c2 = pr.g * pr.g / (pr.delta2 - pr.delta1);
  const Scalar s2g = sqrt(Scalar(2)) * pr.g;
  PhaseVecT<Scalar> gr;
  gr[iU1] = s2g * x[iQ] - 2 * c2 * x[iV1];
  gr[iU2] = -s2g * x[iP] - 2 * c2 * x[iV2];
  gr[iU3] = (pr.delta1 - pr.omega) - 2 * c2 * x[iV3];
  gr[iV1] = -2 * c2 * x[iU1];
  gr[iV2] = -2 * c2 * x[iU2];
  gr[iV3] = -2 * c2 * x[iU3];
  gr[iQ] = s2g * x[iU1];
  gr[iP] = -s2g * x[iU2];
  return gr;
}

template <class Scalar>
PhaseVecT<Scalar> grad_H2(const PhaseVecT<Scalar>& x,
                          const SystemParamsT<Scalar>& pr) {
  using std::sqrt;
  const Scalar c2 = pr.g * pr.g / (pr.delta2 - pr.delta1);
  const Scalar s2g = sqrt(Scalar(2)) * pr.g;
  PhaseVecT<Scalar> gr;
  gr[iU1] = 2 * c2 * x[iV1];
  gr[iU2] = 2 * c2 * x[iV2];
  gr[iU3] = 2 * c2 * x[iV3];
  gr[iV1] = s2g * x[iQ] + 2 * c2 * x[iU1];
  gr[iV2] = -s2g * x[iP] + 2 * c2 * x[iU2];
  gr[iV3] = (pr.delta2 - pr.omega) + 2 * c2 * x[iU3];
  gr[iQ] = s2g * x[iV1];
  gr[iP] = -s2g * x[iV2];
  return gr;
}

template <class Scalar>
PhaseVecT<Scalar> grad_K(const PhaseVecT<Scalar>& x,
                         const SystemParamsT<Scalar>&) {
  PhaseVecT<Scalar> gr = PhaseVecT<Scalar>::Zero();
  gr[iU3] = 1;
  gr[iV3] = 1;
  gr[iQ] = x[iQ];
  gr[iP] = x[iP];
  return gr;
}

/// Rotates (u1,u2), (v1,v2), (p,q) by angle t; the circle action generated
/// by K. Preserves u3, v3 and all three integrals.
template <class Scalar>
PhaseVecT<Scalar> s1_action(Scalar t, const PhaseVecT<Scalar>& x) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(t), s = sin(t);
  PhaseVecT<Scalar> y;
  y[iU1] = c * x[iU1] - s * x[iU2];
  y[iU2] = s * x[iU1] + c * x[iU2];
  y[iU3] = x[iU3];
  y[iV1] = c * x[iV1] - s * x[iV2];
  y[iV2] = s * x[iV1] + c * x[iV2];
  y[iV3] = x[iV3];
  // z = p + i q -> e^{it} z
  y[iP] = c * x[iP] - s * x[iQ];
  y[iQ] = s * x[iP] + c * x[iQ];
  return y;
}

template <class Scalar>
void project_spheres(PhaseVecT<Scalar>& x) {
  x.template segment<3>(iU1).normalize();
  x.template segment<3>(iV1).normalize();
}

/// Max deviation of |u|^2, |v|^2 from 1.
template <class Scalar>
Scalar sphere_residual(const PhaseVecT<Scalar>& x) {
  using std::abs;
  using std::max;
  const Scalar ru = abs(x.template segment<3>(iU1).squaredNorm() - Scalar(1));
  const Scalar rv = abs(x.template segment<3>(iV1).squaredNorm() - Scalar(1));
  return max(ru, rv);
}

template <class Scalar>
bool is_valid_point(const PhaseVecT<Scalar>& x, Scalar tol = Scalar(kSphereTol)) {
  return sphere_residual(x) <= tol;
}

/// Tangency of a variation at x: u . du and v . dv.
template <class Scalar>
Scalar tangency_residual(const PhaseVecT<Scalar>& x, const PhaseVecT<Scalar>& d) {
  using std::abs;
  using std::max;
  const Scalar tu = x.template segment<3>(iU1).dot(d.template segment<3>(iU1));
  const Scalar tv = x.template segment<3>(iV1).dot(d.template segment<3>(iV1));
  return max(abs(tu), abs(tv));
}

/// Uniform point on S^2 x S^2 with Gaussian (q,p); for tests and seeding.
inline PhasePoint random_phase_point(std::mt19937_64& rng, double qp_scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  PhasePoint x;
  for (int i = 0; i < 8; ++i) x[i] = gauss(rng);
  project_spheres(x);
  x[iQ] *= qp_scale;
  x[iP] *= qp_scale;
  return x;
}

}  // namespace tcm
