#include "tcm/flow.hpp"

#include <algorithm>
#include <cmath>

#include "tcm/errors.hpp"

namespace tcm {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order weights (include the FSAL stage).
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

}  // namespace

PhasePoint flow(const FlowSpec& spec, const PhasePoint& x0,
                const SystemParams& params) {
  const double T = spec.duration;
  if (T == 0.0) return x0;
  if (spec.tolerance <= 0 || spec.max_steps <= 0)
    throw DomainError("flow: tolerance and max_steps must be positive");

  const double dir = T > 0 ? 1.0 : -1.0;
  const double tol = spec.tolerance;
  const double hmax = std::max(std::abs(T) / 10.0, 1e-6);

  PhasePoint y = x0;
  auto rhs = [&](const PhasePoint& x) { return combined_field(spec.coeffs, x, params); };

  double t = 0.0;
  PhasePoint k1 = rhs(y);
  double scale0 = std::max(1.0, k1.cwiseAbs().maxCoeff());
  double h = dir * std::min(hmax, 0.1 * std::pow(tol, 0.2) / scale0);

  for (long step = 0; step < spec.max_steps; ++step) {
    if (dir * (t + h - T) > 0) h = T - t;
    const PhasePoint k2 = rhs(y + h * (a21 * k1));
    const PhasePoint k3 = rhs(y + h * (a31 * k1 + a32 * k2));
    const PhasePoint k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const PhasePoint k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const PhasePoint k6 =
        rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    PhasePoint y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const PhasePoint k7 = rhs(y5);
    const PhasePoint y4 =
        y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double sc = tol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      const double q = (y5[i] - y4[i]) / sc;
      err += q * q;
    }
    err = std::sqrt(err / 8.0);

    if (err <= 1.0) {
      t += h;
      project_spheres(y5);
      y = y5;
      if (dir * (T - t) <= 0.0 ||
          std::abs(T - t) < 1e-15 * std::max(1.0, std::abs(T)))
        return y;
      k1 = rhs(y);  // projection invalidates FSAL reuse of k7
    }
    const double fac =
        std::clamp(0.9 * std::pow(err > 0 ? err : 1e-16, -0.2), 0.2, 5.0);
    h *= fac;
    if (std::abs(h) > hmax) h = dir * hmax;
    if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(T)))
      throw StepLimitExceeded("flow: step size underflow");
  }
  throw StepLimitExceeded("flow: max_steps exceeded");
}

PhasePoint flow_compose(const IntegralValue& T, const PhasePoint& x0,
                        const SystemParams& params, double tolerance) {
  PhasePoint y = x0;
  for (int j = 0; j < 3; ++j) {
    if (T[j] == 0.0) continue;
    FlowSpec s;
    s.coeffs = IntegralValue::Zero();
    s.coeffs[j] = 1.0;
    s.duration = T[j];
    s.tolerance = tolerance;
    y = flow(s, y, params);
  }
  return y;
}

}  // namespace tcm
