#include "tcm/lax.hpp"

#include <cmath>

#include "tcm/errors.hpp"
#include "tcm/flow.hpp"

namespace tcm {
namespace {

using Cd = std::complex<double>;

}  // namespace

double SpectralPolynomial::eval(double lam) const {
  double acc = 0.0;
  for (int i = 6; i >= 0; --i) acc = acc * lam + coeffs[i];
  return acc;
}

Cd SpectralPolynomial::eval(Cd lam) const {
  Cd acc = 0.0;
  for (int i = 6; i >= 0; --i) acc = acc * lam + coeffs[i];
  return acc;
}

std::pair<Matrix2c, Matrix2c> lax_matrices(Cd lambda, const PhasePoint& x,
                                           const SystemParams& pr) {
  const Cd I(0, 1);
  const Cd z(x[iP], x[iQ]);
  const Cd zb = std::conj(z);
  const Cd u = Cd(x[iU1], x[iU2]), ub = std::conj(u);
  const Cd v = Cd(x[iV1], x[iV2]), vb = std::conj(v);
  const Cd l1 = lambda - pr.delta1 / 2.0, l2 = lambda - pr.delta2 / 2.0;
  const double s2g = std::sqrt(2.0) * pr.g;

  // sigma_z, zbar sigma_+ - z sigma_-, and the spin dot products
  Matrix2c L;
  const Cd osc = (2.0 * lambda - pr.omega);
  L(0, 0) = osc * l1 * l2 / (pr.g * pr.g) + l2 * x[iU3] + l1 * x[iV3];
  L(1, 1) = -osc * l1 * l2 / (pr.g * pr.g) - l2 * x[iU3] - l1 * x[iV3];
  L(0, 1) = I * s2g * zb * l1 * l2 / (pr.g * pr.g) + l2 * ub + l1 * vb;
  L(1, 0) = -I * s2g * z * l1 * l2 / (pr.g * pr.g) + l2 * u + l1 * v;

  Matrix2c M;
  M(0, 0) = -I * lambda;
  M(1, 1) = I * lambda;
  M(0, 1) = pr.g / std::sqrt(2.0) * zb;
  M(1, 0) = -pr.g / std::sqrt(2.0) * z;
  return {L, M};
}

SpectralPolynomial spectral_poly(const IntegralValue& value,
                                 const SystemParams& pr) {
  const double g2 = pr.g * pr.g, g4 = g2 * g2;
  const double h1 = value[0], h2 = value[1], k = value[2];
  // (lambda - delta1/2) and (lambda - delta2/2) as coefficient arrays
  const Poly A{-pr.delta1 / 2, 1.0}, B{-pr.delta2 / 2, 1.0};
  const Poly A2 = poly_mul(A, A), B2 = poly_mul(B, B);
  const Poly osc{pr.omega * pr.omega / g4 + 4 * k / g2, -4 * pr.omega / g4,
                 4 / g4};
  Poly q = poly_mul(osc, poly_mul(A2, B2));
  Poly mid{2 * (h1 * B[0] + h2 * A[0]) / g2, 2 * (h1 + h2) / g2};
  Poly t2 = poly_mul(poly_mul(A, B), mid);
  for (size_t i = 0; i < t2.size(); ++i) q[i] += t2[i];
  for (size_t i = 0; i < A2.size(); ++i) q[i] += A2[i] + B2[i];

  SpectralPolynomial out{};
  for (int i = 0; i < 7; ++i) out.coeffs[i] = q[i];
  return out;
}

Cd mu_squared(Cd lambda, const PhasePoint& x, const SystemParams& pr) {
  const auto [L, M] = lax_matrices(lambda, x, pr);
  (void)M;
  return -L.determinant();  // tr L = 0
}

SpectralPolynomial spectral_poly(const PhasePoint& x, const SystemParams& pr,
                                 double audit_tol) {
  const SpectralPolynomial q = spectral_poly(eval_integrals(x, pr), pr);
  if (audit_tol > 0) {
    for (int i = 0; i < 7; ++i) {
      const double lam = -1.5 + 0.5 * i;
      const Cd mu2 = mu_squared(Cd(lam, 0.0), x, pr);
      const double scale = std::max(1.0, std::abs(q.eval(lam)));
      if (std::abs(mu2 - q.eval(lam)) > audit_tol * scale)
        throw NoConvergence("spectral_poly: eigenvalue audit failed");
    }
  }
  return q;
}

TripleRootReport triple_root_check(const IntegralValue& value,
                                   const SystemParams& pr) {
  const SpectralPolynomial q = spectral_poly(value, pr);
  const double lead = 4.0 / std::pow(pr.g, 4);
  const double a1 = q.coeffs[5] / (3 * lead);
  const double a0 = q.coeffs[4] / (3 * lead) - a1 * a1;
  // (lambda^2 + a1 lambda + a0)^3, ascending
  const Poly cube = poly_mul(poly_mul(Poly{a0, a1, 1.0}, Poly{a0, a1, 1.0}),
                             Poly{a0, a1, 1.0});
  double resid = 0.0;
  for (int i = 0; i < 7; ++i)
    resid = std::max(resid, std::abs(q.coeffs[i] - lead * cube[i]));
  return {a0, a1, resid, root_multiplicities(q.poly())};
}

double lax_equation_residual(const PhasePoint& x, const SystemParams& pr,
                             double duration, int samples, Cd lambda) {
  const double dlt = 1e-3;
  const IntegralValue hcoef{1.0, 1.0, pr.omega};  // flow of the Hamiltonian
  auto advance = [&](const PhasePoint& y, double t) {
    if (t == 0.0) return y;
    return flow({hcoef, t, 1e-12, 4000000}, y, pr);
  };
  double worst = 0.0;
  PhasePoint y = x;
  for (int s = 0; s < samples; ++s) {
    const double t = duration * double(s) / std::max(1, samples - 1);
    y = advance(x, t);
    const auto Lat = [&](double off) {
      return lax_matrices(lambda, advance(y, off), pr).first;
    };
    const Matrix2c Ld =
        (-Lat(2 * dlt) + 8.0 * Lat(dlt) - 8.0 * Lat(-dlt) + Lat(-2 * dlt)) /
        (12 * dlt);
    const auto [L, M] = lax_matrices(lambda, y, pr);
    const Matrix2c res = Ld - (M * L - L * M);
    worst = std::max(worst, res.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace tcm
