#include "tcm/polyroots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace tcm {
namespace {

Poly trimmed(const Poly& c, double rel = 0.0) {
  Poly t = c;
  double scale = 0.0;
  for (double x : t) scale = std::max(scale, std::abs(x));
  while (t.size() > 1 && std::abs(t.back()) <= rel * scale) t.pop_back();
  return t;
}

// Signed remainder sequence for the Sturm chain.
Poly poly_mod(const Poly& a, const Poly& b, double eps_abs) {
  Poly r = a;
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(r.size()) - 1 >= db) {
    const int dr = static_cast<int>(r.size()) - 1;
    const double q = r.back() / b.back();
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= q * b[i];
    r.pop_back();
    while (r.size() > 1 && std::abs(r.back()) <= eps_abs) r.pop_back();
    if (r.size() == 1 && std::abs(r[0]) <= eps_abs) r[0] = 0.0;
  }
  return r;
}

}  // namespace

std::complex<double> poly_eval(const Poly& c, std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double poly_eval(const Poly& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly poly_derivative(const Poly& c) {
  if (c.size() <= 1) return {0.0};
  Poly d(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<std::complex<double>> poly_roots(const Poly& cin) {
  const Poly c = trimmed(cin, 1e-300);
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> roots(n);
  const Poly dc = poly_derivative(c);
  for (int i = 0; i < n; ++i) {
    std::complex<double> r = es.eigenvalues()[i];
    for (int it = 0; it < 8; ++it) {  // Newton polish; stalls safely at multiple roots
      const std::complex<double> f = poly_eval(c, r);
      const std::complex<double> df = poly_eval(dc, r);
      if (std::abs(df) < 1e-300) break;
      const std::complex<double> dr = f / df;
      r -= dr;
      if (std::abs(dr) < 1e-14 * std::max(1.0, std::abs(r))) break;
    }
    roots[i] = r;
  }
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

int sturm_count_interval(const Poly& cin, double lo, double hi, double eps) {
  Poly p = trimmed(cin, 1e-14);
  if (p.size() <= 1) return 0;
  double scale = 0.0;
  for (double x : p) scale = std::max(scale, std::abs(x));
  const double eps_abs = eps * scale;

  std::vector<Poly> chain{p, poly_derivative(p)};
  while (chain.back().size() > 1 ||
         (chain.back().size() == 1 && chain.back()[0] != 0.0)) {
    if (chain.back().size() == 1) break;
    Poly r = poly_mod(chain[chain.size() - 2], chain.back(), eps_abs);
    for (double& x : r) x = -x;
    if (r.size() == 1 && r[0] == 0.0) break;
    chain.push_back(r);
  }
  auto signs_at = [&](double x) {
    int changes = 0, prev = 0;
    for (const Poly& q : chain) {
      const double v = poly_eval(q, x);
      const int s = v > eps_abs ? 1 : (v < -eps_abs ? -1 : 0);
      if (s != 0) {
        if (prev != 0 && s != prev) ++changes;
        prev = s;
      }
    }
    return changes;
  };
  // Sturm counts roots in (lo, hi]; nudge the ends so closed-interval
  // endpoints are included.
  const double span = std::max(1.0, hi - lo);
  return signs_at(lo - 1e-12 * span) - signs_at(hi + 1e-12 * span);
}

int gcd_degree_with_derivative(const Poly& pin, double eps) {
  Poly a = trimmed(pin, 1e-14);
  if (a.size() <= 1) return 0;
  Poly b = poly_derivative(a);
  auto norm = [](Poly& q) {
    double m = 0.0;
    for (double x : q) m = std::max(m, std::abs(x));
    if (m > 0)
      for (double& x : q) x /= m;
  };
  norm(a);
  norm(b);
  while (true) {
    Poly r = poly_mod(a, b, eps);
    double m = 0.0;
    for (double x : r) m = std::max(m, std::abs(x));
    if (m <= eps) return static_cast<int>(b.size()) - 1;
    norm(r);
    a = b;
    b = r;
    if (b.size() == 1) return 0;
  }
}

std::vector<int> root_multiplicities(const Poly& p, double tol) {
  auto roots = poly_roots(p);
  std::vector<int> used(roots.size(), 0);
  std::vector<int> mult;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    int m = 1;
    used[i] = 1;
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[i] - roots[j]) < tol) {
        used[j] = 1;
        ++m;
      }
    }
    mult.push_back(m);
  }
  std::sort(mult.begin(), mult.end());
  return mult;
}

}  // namespace tcm
