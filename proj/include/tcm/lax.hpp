#pragma once

// Spectral pair L(lambda), M(lambda) and the degree-6 spectral polynomial
// whose coefficients are constants of motion. The sign convention is
// mu^2 = -det L(lambda), fixed by tr L = 0 and checked against the
// eigenvalues of L.

#include <Eigen/Dense>
#include <complex>

#include "tcm/phase.hpp"
#include "tcm/polyroots.hpp"

namespace tcm {

using Matrix2c = Eigen::Matrix2cd;

/// Degree-6 polynomial, coefficients ascending; leading coefficient 4/g^4.
struct SpectralPolynomial {
  std::array<double, 7> coeffs;
  Poly poly() const { return Poly(coeffs.begin(), coeffs.end()); }
  double eval(double lam) const;
  std::complex<double> eval(std::complex<double> lam) const;
};

std::pair<Matrix2c, Matrix2c> lax_matrices(std::complex<double> lambda,
                                           const PhasePoint& x,
                                           const SystemParams& params);

/// Closed-form coefficients from the integral values (h1, h2, k).
SpectralPolynomial spectral_poly(const IntegralValue& value,
                                 const SystemParams& params);

/// Coefficients from a phase point, cross-checked against -det L(lambda)
/// at seven sample values of lambda (throws NoConvergence on mismatch
/// beyond `audit_tol`; set audit_tol <= 0 to skip).
SpectralPolynomial spectral_poly(const PhasePoint& x, const SystemParams& params,
                                 double audit_tol = 1e-9);

/// mu^2 at lambda from the eigenvalues of L (oracle path).
std::complex<double> mu_squared(std::complex<double> lambda, const PhasePoint& x,
                                const SystemParams& params);

struct TripleRootReport {
  double a0, a1;          // fitted quadratic factor lambda^2 + a1 lambda + a0
  double residual;        // max coefficient distance from (4/g^4)(...)^3
  std::vector<int> multiplicities;  // clustered root multiplicities of Q6
};

/// Fits (a0, a1) from the two leading nontrivial coefficients and reports
/// the distance of Q6 from a perfect cube.
TripleRootReport triple_root_check(const IntegralValue& value,
                                   const SystemParams& params = SystemParams::stc());

/// max over entries of |dL/dt - [M, L]| along the physical-Hamiltonian
/// trajectory through x at times {t_j}, with 4th-order finite-difference
/// time derivatives.
double lax_equation_residual(const PhasePoint& x, const SystemParams& params,
                             double duration = 5.0, int samples = 11,
                             std::complex<double> lambda = {0.37, 0.11});

}  // namespace tcm
