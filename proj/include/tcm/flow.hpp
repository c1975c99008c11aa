#pragma once

// Hamiltonian flows of a1*X_H1 + a2*X_H2 + a3*X_K.
//
// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) with per-step
// renormalization of both spin vectors. The three flows commute on
// regular fibers, so composing them in the fixed order (H1, H2, K)
// is the canonical map used by the period-lattice solver.

#include "tcm/phase.hpp"

namespace tcm {

struct FlowSpec {
  IntegralValue coeffs = IntegralValue::Zero();  // (a1, a2, a3)
  double duration = 0.0;
  double tolerance = 1e-12;      // absolute and relative
  long max_steps = 4'000'000;
};

/// Time-`spec.duration` image of x0 under the combined field.
/// Throws StepLimitExceeded if the step controller cannot finish.
PhasePoint flow(const FlowSpec& spec, const PhasePoint& x0,
                const SystemParams& params);

/// phi_H1^{T1} then phi_H2^{T2} then phi_K^{T3}.
PhasePoint flow_compose(const IntegralValue& T, const PhasePoint& x0,
                        const SystemParams& params, double tolerance = 1e-12);

}  // namespace tcm
