#pragma once

// Period lattices on regular fibers and their parallel transport along
// loops of regular values.
//
// A period vector T = (T1, T2, T3) closes the composed flow
// phi_H1^{T1} . phi_H2^{T2} . phi_K^{T3} on the fiber. The circle action
// makes (0, 0, 2pi) a period everywhere; two more vectors are solved by
// Newton on the angular return conditions and continued along loops.
// The transported basis against the original one gives the monodromy
// matrix, rounded to SL(3,Z).

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "tcm/fiber.hpp"
#include "tcm/phase.hpp"

namespace tcm {

struct PeriodBasis {
  IntegralValue T1{0.0, 0.0, 2 * M_PI};
  IntegralValue T2 = IntegralValue::Zero();
  IntegralValue T3 = IntegralValue::Zero();

  /// Rows are the period vectors.
  Eigen::Matrix3d matrix() const {
    Eigen::Matrix3d B;
    B.row(0) = T1.transpose();
    B.row(1) = T2.transpose();
    B.row(2) = T3.transpose();
    return B;
  }
};

struct PeriodSolveOptions {
  double flow_tolerance = 1e-12;
  double angle_tolerance = 1e-9;   // residual of the three return angles
  double closure_tolerance = 1e-6; // |flow_compose(T, P) - P|
  int max_iterations = 30;
};

/// (theta_u, theta_v, phi) of a point; undefined at the poles and z = 0.
Eigen::Vector3d fiber_angles(const PhasePoint& x);

/// Newton solve of the return conditions from an initial guess.
/// Returns the period vector and the verified closure error.
std::pair<IntegralValue, double> solve_period_vector(
    const IntegralValue& guess, const FiberPoint& fp, const SystemParams& params,
    const PeriodSolveOptions& opts = {});

/// Basis from caller guesses; T1 is fixed. Throws DegenerateBasis when the
/// solved vectors do not span (|det| below 1e-6).
PeriodBasis solve_period_basis(const FiberPoint& fp, const IntegralValue& guess2,
                               const IntegralValue& guess3,
                               const SystemParams& params,
                               const PeriodSolveOptions& opts = {});

/// Coarse recurrence search for first-basis guesses when none are known:
/// scans the (t1, t2) return map on the fiber and polishes near-returns.
/// Returns at least two independent short period vectors.
std::vector<IntegralValue> find_period_guesses(const FiberPoint& fp,
                                               const SystemParams& params,
                                               double t_range = 8.0,
                                               int grid = 96);

/// Bundled basis guesses for the default base value r0 = (2, 1, 1.8); the
/// standard basis all reports are expressed in.
IntegralValue default_basis_guess_T2();
IntegralValue default_basis_guess_T3();
IntegralValue default_base_value();

// -------------------------------------------------------------------- loops

struct LoopSpec {
  IntegralValue base;
  std::vector<IntegralValue> waypoints;  // closed: first = last = base
  int steps_per_segment = 24;            // sampling of straight segments
};

enum class BuiltinLoop { Gamma1, Gamma2, Gamma3, Gamma4 };

/// Loop around the focus-focus value ff_j at the slice of gamma_j:
/// straight line from base to ff + (L, 0, 0), full circle of radius L,
/// straight line back. Centers are located from the rank-1 threads.
LoopSpec builtin_loop(BuiltinLoop which, const SystemParams& params,
                      double radius = 0.5,
                      const IntegralValue& base = default_base_value());

/// Focus-focus center the loop winds around.
IntegralValue builtin_loop_center(BuiltinLoop which, const SystemParams& params);

struct ContinuationOptions {
  PeriodSolveOptions period;
  FiberSolveOptions fiber;
  double jump_fraction = 0.2;  // reject a step when |dT| > fraction * |T|
  int max_bisection_depth = 20;
};

/// Parallel transport of the basis around the loop; returns the basis at
/// the base point. Throws StepCollapse when bisection bottoms out.
PeriodBasis continue_basis(const PeriodBasis& basis, const FiberPoint& anchor,
                           const LoopSpec& loop, const SystemParams& params,
                           const ContinuationOptions& opts = {});

// ----------------------------------------------------------------- matrices

struct MonodromyMatrix {
  Eigen::Matrix3i m;
  double residual;  // max entry distance of the pre-rounding matrix
};

/// M = B(after) B(before)^{-1}, rounded. Throws RoundingAmbiguous when the
/// residual reaches 1e-3 and NotUnimodular when det != 1.
MonodromyMatrix monodromy_matrix(const PeriodBasis& before,
                                 const PeriodBasis& after);

/// A M A^{-1} over the integers; |det A| must be 1.
MonodromyMatrix change_basis(const MonodromyMatrix& M, const Eigen::Matrix3i& A);

/// Conjugation used for reporting alongside the raw matrix.
Eigen::Matrix3i standard_basis_change();

/// Lower-right 2x2 block; requires the first row to be (1, 0, 0).
Eigen::Matrix2i reduced_monodromy(const MonodromyMatrix& M);

Eigen::Matrix3i integer_inverse(const Eigen::Matrix3i& A);

}  // namespace tcm
