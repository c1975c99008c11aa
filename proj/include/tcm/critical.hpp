#pragma once

// Singularity enumeration and classification: rank-0 fixed points with
// eigenvalue type, the eight rank-1 families of the resonant default
// parameters plus the general rank-1 parameterization, rank-2 boundary
// curves on momentum slices, and bifurcation-diagram assembly.

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "tcm/phase.hpp"
#include "tcm/reduction.hpp"

namespace tcm {

// ------------------------------------------------------------------ rank 0

enum class Rank0Type { EEE, EEH, EHH, HHH, EFF, HFF };

struct Rank0Point {
  int sigma_u, sigma_v;
  IntegralValue critical_value;
  Rank0Type type;
  std::array<std::complex<double>, 6> eigenvalues;  // of DX_H1 in the local chart
};

std::string to_string(Rank0Type t);

/// All four fixed points with their critical values and linearization type.
/// Throws DegenerateLinearization when the eigenvalues are not six distinct
/// nonzero values.
std::vector<Rank0Point> rank0_classify(const SystemParams& params);

// ------------------------------------------------------------------ rank 1

enum class Rank1Family { L1, L2, L3, L4, L5, L6, L7, L8, HH, CSTAR };
enum class Rank1Type { FFR, EER, Degenerate };

std::string to_string(Rank1Family f);
std::string to_string(Rank1Type t);
Rank1Family rank1_family_from_string(const std::string& s);

struct Rank1Sample {
  Rank1Family family;
  double a, b;
  PhasePoint point;             // representative with z real >= 0
  IntegralValue critical_value; // (h1^c, h2^c, k^c)
  ReducedPoint reduced;         // section-chart position
};

/// b interval (open) of a family; HH and CSTAR are points.
std::pair<double, double> rank1_interval(Rank1Family f);

/// b_max: the real root of 16 b^3 - 8 b^2 + b - 64 (Newton-polished),
/// cross-checked against its closed radical form.
double rank1_b_max();

/// Critical value (h1^c, h2^c, k^c) for branch value (a, b) of the
/// resonant default parameters.
IntegralValue rank1_critical_value(double a, double b);

/// Sample of a rank-1 family at branch parameter b (ignored for HH, CSTAR).
/// Defaults to the resonant parameter set; throws OutOfRange or
/// ConstraintViolation.
Rank1Sample rank1_sample(Rank1Family family, double b = 0.0,
                         const SystemParams& params = SystemParams::stc());

/// Eigenvalue type of a rank-1 sample from the linearized reduced fields
/// of H1^ + H2^ and H1^ - H2^ at the sample.
Rank1Type rank1_classify(const Rank1Sample& sample,
                         const SystemParams& params = SystemParams::stc());

/// General-parameter rank-1 point from multipliers (x, y) with
/// X_H1 = x X_K, X_H2 = y X_K. Returns nullopt when the phase-space
/// constraints exclude the pair; throws RelationViolated when (x, y)
/// does not satisfy the defining relation.
std::optional<Rank1Sample> rank1_general(double x, double y,
                                         const SystemParams& params);

/// Residual of the (x, y) relation for general parameters.
double rank1_relation_residual(double x, double y, const SystemParams& params);

// ------------------------------------------------------------------ rank 2

struct Rank2Sample {
  double k, x, y, C;
  double h1, h2;
};

/// Rank-2 critical values on the slice K = k: sweeps the x parameter,
/// keeps values where the boundary cubic has exactly two roots in [-1,1].
std::vector<Rank2Sample> rank2_slice(double k, const SystemParams& params,
                                     int n_samples = 2048);

/// Boundary cubic P(x, y; u3) coefficients (ascending in u3).
std::array<double, 4> rank2_cubic(double x, double y, double C, double K,
                                  double g);

// ------------------------------------------------------- diagram assembly

struct Rank1SlicePoint {
  Rank1Family family;
  double b;
  IntegralValue value;
  Rank1Type type;
};

struct BifurcationSlice {
  double k;
  std::vector<Rank2Sample> rank2;
  std::vector<Rank1SlicePoint> rank1;
  std::vector<Rank0Point> rank0;  // present only when k matches a fixed point
};

struct ThreadPolyline {
  Rank1Family family;
  std::vector<double> b;
  std::vector<IntegralValue> values;
};

struct BifurcationDiagram {
  std::vector<BifurcationSlice> slices;
  std::vector<ThreadPolyline> threads;  // all eight families in 3D
};

/// Rank-1 points with k^c = k, found by scanning each family's branch.
std::vector<Rank1SlicePoint> rank1_points_at_k(double k,
                                               const SystemParams& params);

BifurcationDiagram bifurcation_diagram(const std::vector<double>& k_values,
                                       const SystemParams& params,
                                       int n_samples = 2048,
                                       int thread_samples = 256);

}  // namespace tcm
