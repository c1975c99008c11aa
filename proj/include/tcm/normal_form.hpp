#pragma once

// Numerical verification of the cusp normal form at the central
// singularity: Taylor coefficients of the transformed reduced energies
// H+ and H- (after composing with psi) in the variables
// (xi_u, xi_v, chi_u, chi_v, t = k - k*), against their closed forms,
// and the linear change of coordinates onto y^2 + x^3 + kappa x.

#include <string>
#include <vector>

#include "tcm/params.hpp"

namespace tcm {

struct NormalFormCheck {
  std::string name;
  double got;
  double expected;
  double tolerance;  // |got - expected| <= tolerance (absolute or relative, see scale)
  bool pass;
};

struct NormalFormReport {
  std::vector<NormalFormCheck> checks;
  // fitted linear-change constants
  double a11, a21, b11, b12, scale;
  bool all_pass;
};

/// Richardson-extrapolated finite-difference Taylor extraction (base step
/// 1e-2, four levels) of H+ and H- at the central point; returns a check
/// per printed coefficient, the fitted constants, and consistency
/// residuals of the cubic normal-form conditions.
NormalFormReport verify_normal_form(const SystemParams& params = SystemParams::stc());

}  // namespace tcm
