#include "tcm/fiber.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "tcm/errors.hpp"

namespace tcm {
namespace {

IntegralValue residual_of(const PhasePoint& x, const IntegralValue& target,
                          const SystemParams& pr) {
  return eval_integrals(x, pr) - target;
}

bool newton_once(PhasePoint& x, const IntegralValue& target,
                 const SystemParams& pr, const FiberSolveOptions& opts) {
  for (int it = 0; it < opts.max_iterations; ++it) {
    const IntegralValue r = residual_of(x, target, pr);
    const double n0 = r.norm();
    if (n0 < opts.tolerance) return true;

    // minimum-norm step for the 3 integral equations, constrained to the
    // sphere tangent space
    Eigen::Matrix<double, 5, 8> A;
    A.row(0) = grad_H1(x, pr).transpose();
    A.row(1) = grad_H2(x, pr).transpose();
    A.row(2) = grad_K(x, pr).transpose();
    A.row(3).setZero();
    A.row(4).setZero();
    A.row(3).segment<3>(iU1) = x.segment<3>(iU1).transpose();
    A.row(4).segment<3>(iV1) = x.segment<3>(iV1).transpose();
    Eigen::Matrix<double, 5, 1> rhs;
    rhs << -r[0], -r[1], -r[2], 0.0, 0.0;

    const Eigen::Matrix<double, 8, 1> step =
        A.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(rhs);
    if (!step.allFinite()) return false;

    double lambda = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls) {
      PhasePoint xn = x + lambda * step;
      project_spheres(xn);
      if (residual_of(xn, target, pr).norm() < n0) {
        x = xn;
        improved = true;
        break;
      }
      lambda /= 2;
    }
    if (!improved) return false;
  }
  return residual_of(x, target, pr).norm() < opts.tolerance;
}

}  // namespace

FiberPoint solve_fiber_point(const IntegralValue& target,
                             const PhasePoint& seed_point,
                             const SystemParams& params,
                             const FiberSolveOptions& opts) {
  PhasePoint x = seed_point;
  project_spheres(x);
  if (!newton_once(x, target, params, opts))
    throw NoConvergence("solve_fiber_point: Newton did not converge from the given seed");
  return {x, target, residual_of(x, target, params).norm()};
}

FiberPoint solve_fiber_point(const IntegralValue& target,
                             const SystemParams& params,
                             const FiberSolveOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  for (int attempt = 0; attempt < opts.retries; ++attempt) {
    PhasePoint x = random_phase_point(rng, 1.0 + std::sqrt(std::abs(target[2])));
    if (newton_once(x, target, params, opts))
      return {x, target, residual_of(x, target, params).norm()};
  }
  throw NoConvergence("solve_fiber_point: retry budget exhausted (value may lie outside the image)");
}

}  // namespace tcm
