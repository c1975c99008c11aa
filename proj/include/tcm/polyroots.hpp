#pragma once

// Small dense-polynomial utilities: companion-matrix roots with Newton
// polish, Sturm-chain root counting on an interval, and a tolerant
// Euclidean gcd for multiplicity detection.
//
// Coefficients are stored ascending: p(x) = c[0] + c[1] x + ... + c[n] x^n.

#include <complex>
#include <vector>

namespace tcm {

using Poly = std::vector<double>;

std::complex<double> poly_eval(const Poly& c, std::complex<double> x);
double poly_eval(const Poly& c, double x);
Poly poly_derivative(const Poly& c);
Poly poly_mul(const Poly& a, const Poly& b);

/// All complex roots via the companion matrix, each polished by a few
/// Newton steps. Leading zero coefficients are trimmed first.
std::vector<std::complex<double>> poly_roots(const Poly& c);

/// Number of distinct real roots in [lo, hi] by a Sturm chain.
/// `eps` truncates near-zero remainders relative to the input scale.
int sturm_count_interval(const Poly& c, double lo, double hi, double eps = 1e-12);

/// Degree of gcd(p, p') computed with coefficient tolerance `eps`
/// (relative to the leading scale). deg 0 means p is square-free.
int gcd_degree_with_derivative(const Poly& p, double eps = 1e-9);

/// Multiplicity profile of p: sorted multiplicities of its distinct roots,
/// estimated by clustering companion roots at tolerance `tol`.
std::vector<int> root_multiplicities(const Poly& p, double tol = 1e-5);

}  // namespace tcm
