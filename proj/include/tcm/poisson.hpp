#pragma once

// Finite-difference Poisson bracket on the ambient space, driven by the
// so(3) + so(3) + sp(2,R) structure matrix. Test oracle; not used by the
// production solvers.

#include <Eigen/Dense>
#include <functional>

#include "tcm/phase.hpp"

namespace tcm {

using ScalarField = std::function<double(const PhasePoint&, const SystemParams&)>;

/// Structure matrix Pi(x): {x_i, x_j}. Spin blocks eps_ijk u_k / eps_ijk v_k,
/// oscillator block {q,p} = 1.
inline Eigen::Matrix<double, 8, 8> poisson_structure(const PhasePoint& x) {
  Eigen::Matrix<double, 8, 8> Pi = Eigen::Matrix<double, 8, 8>::Zero();
  auto spin_block = [&](int base) {
    const double a1 = x[base], a2 = x[base + 1], a3 = x[base + 2];
    Pi(base + 0, base + 1) = a3;
    Pi(base + 1, base + 0) = -a3;
    Pi(base + 1, base + 2) = a1;
    Pi(base + 2, base + 1) = -a1;
    Pi(base + 2, base + 0) = a2;
    Pi(base + 0, base + 2) = -a2;
  };
  spin_block(iU1);
  spin_block(iV1);
  Pi(iQ, iP) = 1.0;
  Pi(iP, iQ) = -1.0;
  return Pi;
}

/// Central-difference gradient, step 1e-6 * max(1, |coordinate|).
inline PhasePoint grad_fd(const ScalarField& f, const PhasePoint& x,
                          const SystemParams& pr, double h0 = 1e-6) {
  PhasePoint g;
  for (int i = 0; i < 8; ++i) {
    const double h = h0 * std::max(1.0, std::abs(x[i]));
    PhasePoint xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp, pr) - f(xm, pr)) / (2 * h);
  }
  return g;
}

/// {f, g}(x) = grad f . Pi . grad g with finite-difference gradients.
inline double poisson_bracket_fd(const ScalarField& f, const ScalarField& g,
                                 const PhasePoint& x, const SystemParams& pr) {
  return grad_fd(f, x, pr).dot(poisson_structure(x) * grad_fd(g, x, pr));
}

inline ScalarField integral_field(Integral which) {
  switch (which) {
    case Integral::H1:
      return [](const PhasePoint& x, const SystemParams& p) { return eval_H1(x, p); };
    case Integral::H2:
      return [](const PhasePoint& x, const SystemParams& p) { return eval_H2(x, p); };
    default:
      return [](const PhasePoint& x, const SystemParams& p) { return eval_K(x, p); };
  }
}

}  // namespace tcm
