#pragma once

// The cusp unfolding y^2 + x^3 + kappa x = epsilon: discriminant threads,
// labeled root tracking in the (epsilon, kappa) base, vanishing-cycle
// monodromy, and the diffeomorphism psi that carries integral values of
// the reduced system onto the unfolding base.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "tcm/phase.hpp"

namespace tcm {

using Cplx = std::complex<double>;

/// Base point of the unfolding family.
struct UnfoldingValue {
  Cplx epsilon;
  double kappa;
};

/// Discriminant threads at fixed kappa: eps^2 = -(4/27) kappa^3.
/// kappa > 0: imaginary pair (lambda1 = -i r, lambda2 = +i r);
/// kappa < 0: real pair (lambda3 = +r, lambda4 = -r); kappa = 0: {0}.
std::vector<Cplx> discriminant_points(double kappa);
double discriminant_residual(const UnfoldingValue& v);

/// Labeled roots of x^3 + kappa x - epsilon.
struct RootTriple {
  std::array<Cplx, 3> roots;  // labels 0, 1, 2
};

/// Roots at the standard base point (epsilon, kappa) = (1, 0):
/// x_j = e^{2 pi i j / 3}.
RootTriple base_roots();

/// Solve the cubic and match against previous labels (nearest bijection).
RootTriple roots_at(const UnfoldingValue& v);

struct TrackOptions {
  double guard = 1e-4;        // minimal allowed root separation
  double max_motion = 0.45;   // per-step movement, fraction of min separation
  int max_subdivision = 28;
};

/// Continuous label transport along a polyline in (epsilon, kappa),
/// subdividing adaptively. Throws NearDiscriminant when separation
/// underflows the guard.
RootTriple track_roots(const std::vector<UnfoldingValue>& path,
                       const RootTriple& start, const TrackOptions& opts = {});

/// Homology class in the basis {alpha1, alpha0}.
struct CycleClass {
  Eigen::Vector2i c;
};

/// Intersection number in the {alpha1, alpha0} basis.
int cycle_intersection(const CycleClass& a, const CycleClass& b);

/// Cycle attached to a colliding label pair {j-1, j} (indices mod 3).
CycleClass cycle_of_pair(int label_a, int label_b);

/// The four built-in loops, one around each discriminant thread,
/// following the standard constructions; `which` is 1..4.
std::vector<UnfoldingValue> builtin_unfolding_loop(int which,
                                                   double stand_off = 0.15);

struct PLResult {
  Eigen::Matrix2i matrix;         // rows: images of alpha1, alpha0
  CycleClass vanishing;           // cycle of the colliding pair
  std::array<int, 3> permutation; // label permutation around the full loop
};

/// Picard-Lefschetz monodromy around thread `which` in {1, 2, 3, 4}.
PLResult pl_monodromy(int which);

// ------------------------------------------------------------------- psi

/// Central critical value (h1*, h2*, k*) of the default parameters.
IntegralValue central_critical_value();

/// Central point of the section chart: (theta_u*, u3*, theta_v*, v3*, k*).
std::array<double, 5> central_reduced_point();

/// The cubic polynomial eta(t) used inside psi.
double psi_eta(double t);

/// psi(h1, h2, k) -> (eps1, eps2, kappa); psi(central value) = 0.
Eigen::Vector3d psi_map(const IntegralValue& v);

/// kappa scale: k - k* = kappa_scale() * kappa.
double kappa_scale();

enum class FiberKind { Regular, Pinched, Central };

/// Local fiber type near the central value by root multiplicity of the
/// unfolding cubic at psi(value).
FiberKind singular_fiber_probe(const IntegralValue& value, double tol = 1e-6);

const char* to_string(FiberKind k);

}  // namespace tcm
