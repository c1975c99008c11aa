#pragma once

// Newton solution of F(P) = (h1, h2, k) on the constraint manifold.

#include <cstdint>

#include "tcm/phase.hpp"

namespace tcm {

struct FiberPoint {
  PhasePoint point;
  IntegralValue target;
  double residual;
};

struct FiberSolveOptions {
  double tolerance = 1e-11;
  int max_iterations = 60;
  int retries = 40;        // random reseeds when the first basin misses
  std::uint64_t seed = 12345;
};

/// Damped Newton from `seed_point`; throws NoConvergence.
FiberPoint solve_fiber_point(const IntegralValue& target,
                             const PhasePoint& seed_point,
                             const SystemParams& params,
                             const FiberSolveOptions& opts = {});

/// Retry wrapper drawing random seeds from `opts.seed`.
FiberPoint solve_fiber_point(const IntegralValue& target,
                             const SystemParams& params,
                             const FiberSolveOptions& opts = {});

}  // namespace tcm
