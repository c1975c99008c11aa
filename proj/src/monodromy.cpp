#include "tcm/monodromy.hpp"

#include <algorithm>
#include <cmath>

#include "tcm/critical.hpp"
#include "tcm/errors.hpp"
#include "tcm/flow.hpp"

namespace tcm {
namespace {

double wrap_pi(double a) {
  a = std::fmod(a + M_PI, 2 * M_PI);
  if (a < 0) a += 2 * M_PI;
  return a - M_PI;
}

}  // namespace

Eigen::Vector3d fiber_angles(const PhasePoint& x) {
  return {std::atan2(x[iU2], x[iU1]), std::atan2(x[iV2], x[iV1]),
          std::atan2(x[iQ], x[iP])};
}

std::pair<IntegralValue, double> solve_period_vector(
    const IntegralValue& guess, const FiberPoint& fp, const SystemParams& params,
    const PeriodSolveOptions& opts) {
  const Eigen::Vector3d a0 = fiber_angles(fp.point);
  IntegralValue T = guess;
  double best_res = 1e300;
  IntegralValue best_T = T;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const PhasePoint m = flow_compose(T, fp.point, params, opts.flow_tolerance);
    const Eigen::Vector3d am = fiber_angles(m);
    Eigen::Vector3d r;
    for (int i = 0; i < 3; ++i) r[i] = wrap_pi(am[i] - a0[i]);
    const double rn = r.cwiseAbs().maxCoeff();
    if (rn < best_res) {
      best_res = rn;
      best_T = T;
    }
    if (rn < opts.angle_tolerance) break;

    // flows commute, so d m / d T_j is the j-th field at the endpoint
    const double ru2 = m[iU1] * m[iU1] + m[iU2] * m[iU2];
    const double rv2 = m[iV1] * m[iV1] + m[iV2] * m[iV2];
    const double rz2 = m[iP] * m[iP] + m[iQ] * m[iQ];
    Eigen::Matrix<double, 3, 8> G = Eigen::Matrix<double, 3, 8>::Zero();
    G(0, iU1) = -m[iU2] / ru2;
    G(0, iU2) = m[iU1] / ru2;
    G(1, iV1) = -m[iV2] / rv2;
    G(1, iV2) = m[iV1] / rv2;
    G(2, iQ) = m[iP] / rz2;
    G(2, iP) = -m[iQ] / rz2;
    Eigen::Matrix3d J;
    J.col(0) = G * field_H1(m, params);
    J.col(1) = G * field_H2(m, params);
    J.col(2) = G * field_K(m, params);
    const Eigen::Vector3d dT = J.fullPivLu().solve(-r);
    if (!dT.allFinite())
      throw NoConvergence("solve_period_vector: singular angle Jacobian");
    T += dT;
  }
  if (best_res >= opts.angle_tolerance) {
    // accept a slightly noisier angle residual only if the closure is solid
    if (best_res > 50 * opts.angle_tolerance)
      throw NoConvergence("solve_period_vector: angle residual did not converge");
  }
  T = best_T;
  const double closure =
      (flow_compose(T, fp.point, params, opts.flow_tolerance) - fp.point).norm();
  if (closure > opts.closure_tolerance)
    throw NoConvergence("solve_period_vector: closure check failed");
  return {T, closure};
}

PeriodBasis solve_period_basis(const FiberPoint& fp, const IntegralValue& guess2,
                               const IntegralValue& guess3,
                               const SystemParams& params,
                               const PeriodSolveOptions& opts) {
  PeriodBasis B;
  B.T2 = solve_period_vector(guess2, fp, params, opts).first;
  B.T3 = solve_period_vector(guess3, fp, params, opts).first;
  if (std::abs(B.matrix().determinant()) < 1e-6)
    throw DegenerateBasis("solve_period_basis: solved vectors do not span a lattice basis");
  return B;
}

std::vector<IntegralValue> find_period_guesses(const FiberPoint& fp,
                                               const SystemParams& params,
                                               double t_range, int grid) {
  // Return map on the fiber: flow H1 by t1, H2 by t2, then pick the circle
  // time t3 that re-aligns phi. Near-returns of (theta_u, theta_v) flag
  // period candidates (t1, t2, t3).
  const Eigen::Vector3d a0 = fiber_angles(fp.point);
  const double dt = 2 * t_range / grid;
  PeriodSolveOptions popts;

  std::vector<IntegralValue> found;
  auto consider = [&](const IntegralValue& guess) {
    IntegralValue T;
    try {
      T = solve_period_vector(guess, fp, params, popts).first;
    } catch (const NoConvergence&) {
      return;
    }
    if (T.head<2>().norm() < 1e-6) return;  // multiple of the circle period
    for (const IntegralValue& S : found)
      if ((S - T).norm() < 1e-6) return;
    found.push_back(T);
  };

  PhasePoint row = flow_compose({-t_range, -t_range, 0.0}, fp.point, params,
                                popts.flow_tolerance);
  for (int i = 0; i <= grid; ++i) {
    PhasePoint y = row;
    for (int j = 0; j <= grid; ++j) {
      const double t1 = -t_range + i * dt, t2 = -t_range + j * dt;
      const Eigen::Vector3d a = fiber_angles(y);
      const double t3 = -wrap_pi(a[2] - a0[2]);
      const double ru = wrap_pi(a[0] + t3 - a0[0]);
      const double rv = wrap_pi(a[1] + t3 - a0[1]);
      if (std::hypot(ru, rv) < 0.12 && (std::abs(t1) > 0.3 || std::abs(t2) > 0.3))
        consider({t1, t2, t3});
      if (j < grid)
        y = flow({{0, 1, 0}, dt, popts.flow_tolerance, 400000}, y, params);
    }
    if (i < grid)
      row = flow({{1, 0, 0}, dt, popts.flow_tolerance, 400000}, row, params);
  }
  std::sort(found.begin(), found.end(),
            [](const IntegralValue& a, const IntegralValue& b) {
              return a.norm() < b.norm();
            });
  return found;
}

IntegralValue default_base_value() { return {2.0, 1.0, 1.8}; }
IntegralValue default_basis_guess_T2() { return {1.83862, 2.07173, -1.44104}; }
IntegralValue default_basis_guess_T3() { return {-2.02757, -0.785264, 1.15808}; }

IntegralValue builtin_loop_center(BuiltinLoop which, const SystemParams& params) {
  // ff_1, ff_2 lie on the slice k = 1.8 (families l1, l2); ff_3, ff_4 on
  // k = 0.3 (families l3, l4)
  const double k = (which == BuiltinLoop::Gamma1 || which == BuiltinLoop::Gamma2)
                       ? 1.8
                       : 0.3;
  const Rank1Family fam = which == BuiltinLoop::Gamma1   ? Rank1Family::L1
                          : which == BuiltinLoop::Gamma2 ? Rank1Family::L2
                          : which == BuiltinLoop::Gamma3 ? Rank1Family::L3
                                                         : Rank1Family::L4;
  for (const Rank1SlicePoint& p : rank1_points_at_k(k, params))
    if (p.family == fam) return p.value;
  throw NoConvergence("builtin_loop_center: thread does not cross the slice");
}

LoopSpec builtin_loop(BuiltinLoop which, const SystemParams& params,
                      double radius, const IntegralValue& base) {
  const IntegralValue ff = builtin_loop_center(which, params);
  LoopSpec loop;
  loop.base = base;
  const IntegralValue start = ff + IntegralValue{radius, 0.0, 0.0};
  const int nl = loop.steps_per_segment;
  const int nc = 2 * loop.steps_per_segment;
  for (int i = 0; i <= nl; ++i)
    loop.waypoints.push_back(base + (start - base) * (double(i) / nl));
  for (int i = 1; i <= nc; ++i) {
    const double s = 2 * M_PI * double(i) / nc;
    loop.waypoints.push_back(
        ff + IntegralValue{radius * std::cos(s), radius * std::sin(s), 0.0});
  }
  for (int i = 1; i <= nl; ++i)
    loop.waypoints.push_back(start + (base - start) * (double(i) / nl));
  return loop;
}

namespace {

struct ContState {
  FiberPoint fp;
  IntegralValue T2, T3;
};

void continuation_step(ContState& st, const IntegralValue& from,
                       const IntegralValue& to, const SystemParams& params,
                       const ContinuationOptions& opts, int depth) {
  if (depth > opts.max_bisection_depth)
    throw StepCollapse("continue_basis: bisection depth exhausted");
  bool ok = true;
  ContState trial = st;
  try {
    trial.fp = solve_fiber_point(to, st.fp.point, params, opts.fiber);
    trial.T2 = solve_period_vector(st.T2, trial.fp, params, opts.period).first;
    trial.T3 = solve_period_vector(st.T3, trial.fp, params, opts.period).first;
    ok = (trial.T2 - st.T2).norm() <= opts.jump_fraction * st.T2.norm() &&
         (trial.T3 - st.T3).norm() <= opts.jump_fraction * st.T3.norm();
  } catch (const Error&) {
    ok = false;
  }
  if (ok) {
    st = trial;
    return;
  }
  const IntegralValue mid = (from + to) / 2;
  continuation_step(st, from, mid, params, opts, depth + 1);
  continuation_step(st, mid, to, params, opts, depth + 1);
}

}  // namespace

PeriodBasis continue_basis(const PeriodBasis& basis, const FiberPoint& anchor,
                           const LoopSpec& loop, const SystemParams& params,
                           const ContinuationOptions& opts) {
  if (loop.waypoints.size() < 2)
    throw DomainError("continue_basis: loop needs at least two waypoints");
  if ((loop.waypoints.front() - loop.base).norm() > 1e-12 ||
      (loop.waypoints.back() - loop.base).norm() > 1e-12)
    throw DomainError("continue_basis: loop must start and end at the base value");

  ContState st{anchor, basis.T2, basis.T3};
  for (size_t i = 0; i + 1 < loop.waypoints.size(); ++i)
    continuation_step(st, loop.waypoints[i], loop.waypoints[i + 1], params,
                      opts, 0);
  // return to the original anchor point before reading off the basis
  st.fp = solve_fiber_point(loop.base, st.fp.point, params, opts.fiber);
  PeriodBasis out;
  out.T2 = solve_period_vector(st.T2, st.fp, params, opts.period).first;
  out.T3 = solve_period_vector(st.T3, st.fp, params, opts.period).first;
  return out;
}

MonodromyMatrix monodromy_matrix(const PeriodBasis& before,
                                 const PeriodBasis& after) {
  const Eigen::Matrix3d M = after.matrix() * before.matrix().inverse();
  Eigen::Matrix3i R;
  double resid = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      R(i, j) = static_cast<int>(std::lround(M(i, j)));
      resid = std::max(resid, std::abs(M(i, j) - R(i, j)));
    }
  if (resid >= 1e-3)
    throw RoundingAmbiguous("monodromy_matrix: pre-rounding residual too large");
  const int det = R.cast<long>().determinant();
  if (det != 1)
    throw NotUnimodular("monodromy_matrix: rounded determinant is not 1");
  return {R, resid};
}

Eigen::Matrix3i integer_inverse(const Eigen::Matrix3i& A) {
  const long det = A.cast<long>().determinant();
  if (det != 1 && det != -1)
    throw NotUnimodular("integer_inverse: |det| != 1");
  Eigen::Matrix3i adj;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r1 = (i + 1) % 3, r2 = (i + 2) % 3;
      const int c1 = (j + 1) % 3, c2 = (j + 2) % 3;
      adj(j, i) = A(r1, c1) * A(r2, c2) - A(r1, c2) * A(r2, c1);
    }
  return static_cast<int>(det) * adj;
}

MonodromyMatrix change_basis(const MonodromyMatrix& M, const Eigen::Matrix3i& A) {
  return {A * M.m * integer_inverse(A), M.residual};
}

Eigen::Matrix3i standard_basis_change() {
  Eigen::Matrix3i A;
  A << 1, 0, 0, 1, -1, -1, 0, 1, 0;
  return A;
}

Eigen::Matrix2i reduced_monodromy(const MonodromyMatrix& M) {
  if (M.m(0, 0) != 1 || M.m(0, 1) != 0 || M.m(0, 2) != 0)
    throw NotReducible("reduced_monodromy: matrix does not fix the circle period");
  Eigen::Matrix2i B;
  B << M.m(1, 1), M.m(1, 2), M.m(2, 1), M.m(2, 2);
  return B;
}

}  // namespace tcm
