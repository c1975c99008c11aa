#include "tcm/normal_form.hpp"

#include <array>
#include <cmath>
#include <functional>

#include "tcm/reduction.hpp"

namespace tcm {
namespace {

using LD = long double;
using F5 = std::function<LD(const std::array<LD, 5>&)>;

struct Central {
  LD two13, two23, u3s, ks, D, h1s;
  SystemParamsT<LD> pr;
};

Central central() {
  Central c;
  c.two13 = powl(2.0L, 1.0L / 3.0L);
  c.two23 = c.two13 * c.two13;
  c.u3s = 1.0L / (2.0L * c.two13);
  c.ks = (12.0L * c.two23 - 1.0L) / 16.0L;
  c.D = 4.0L * c.two23 - 1.0L;
  c.h1s = 2.0L - 3.0L / c.two23;
  c.pr = SystemParamsT<LD>::stc();
  return c;
}

LD eta_ld(const Central& c, LD t) {
  return c.h1s - c.two23 * t + (4.0L * c.two23 / c.D) * t * t -
         (32.0L * c.two23 / (c.D * c.D)) * t * t * t;
}

// Richardson extrapolation of an even-order-h^2 stencil, 4 levels.
LD richardson(const std::function<LD(LD)>& stencil, LD h0) {
  std::array<LD, 4> R;
  for (int j = 0; j < 4; ++j) R[j] = stencil(h0 / powl(2.0L, j));
  for (int m = 1; m < 4; ++m) {
    const LD w = powl(4.0L, m);
    for (int j = 3; j >= m; --j) R[j] = (w * R[j] - R[j - 1]) / (w - 1.0L);
  }
  return R[3];
}

LD d1(const F5& f, int i, LD h0) {
  return richardson(
      [&](LD h) {
        std::array<LD, 5> p{}, m{};
        p[i] = h;
        m[i] = -h;
        return (f(p) - f(m)) / (2 * h);
      },
      h0);
}

LD d2(const F5& f, int i, int j, LD h0) {
  if (i == j)
    return richardson(
        [&](LD h) {
          std::array<LD, 5> p{}, m{}, z{};
          p[i] = h;
          m[i] = -h;
          return (f(p) - 2 * f(z) + f(m)) / (h * h);
        },
        h0);
  return richardson(
      [&](LD h) {
        std::array<LD, 5> pp{}, pm{}, mp{}, mm{};
        pp[i] = h; pp[j] = h;
        pm[i] = h; pm[j] = -h;
        mp[i] = -h; mp[j] = h;
        mm[i] = -h; mm[j] = -h;
        return (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
      },
      h0);
}

LD d3_pure(const F5& f, int i, LD h0) {
  return richardson(
      [&](LD h) {
        std::array<LD, 5> p2{}, p1{}, m1{}, m2{};
        p2[i] = 2 * h;
        p1[i] = h;
        m1[i] = -h;
        m2[i] = -2 * h;
        return (-f(m2) + 2 * f(m1) - 2 * f(p1) + f(p2)) / (2 * h * h * h);
      },
      h0);
}

// d^3 f / d_i^2 d_j, i != j
LD d3_iij(const F5& f, int i, int j, LD h0) {
  return richardson(
      [&](LD h) {
        auto second_i = [&](LD joff) {
          std::array<LD, 5> p{}, z{}, m{};
          p[i] = h; p[j] = joff;
          z[j] = joff;
          m[i] = -h; m[j] = joff;
          return (f(p) - 2 * f(z) + f(m)) / (h * h);
        };
        return (second_i(h) - second_i(-h)) / (2 * h);
      },
      h0);
}

}  // namespace

NormalFormReport verify_normal_form(const SystemParams&) {
  const Central c = central();

  // variables w = (xi_u, xi_v, chi_u, chi_v, t)
  auto Hred_at = [&](int which, const std::array<LD, 5>& w) {
    return reduced_H<LD>(which, LD(M_PI) + w[0], c.u3s + w[2], w[1],
                         c.u3s + w[3], c.ks + w[4], c.pr);
  };
  const F5 Hp = [&](const std::array<LD, 5>& w) {
    return Hred_at(1, w) + Hred_at(2, w);
  };
  const F5 Hm = [&](const std::array<LD, 5>& w) {
    return (Hred_at(2, w) - Hred_at(1, w) + 2.0L * eta_ld(c, w[4])) /
           sqrtl(c.D);
  };

  const LD h0 = 1e-2L;
  NormalFormReport rep{};
  auto add = [&](const std::string& name, double got, double expected,
                 double tol, bool relative) {
    const double err = relative
                           ? std::abs(got - expected) /
                                 std::max(1e-300, std::abs(expected))
                           : std::abs(got - expected);
    rep.checks.push_back({name, got, expected, tol, err <= tol});
  };

  const double D = static_cast<double>(c.D);
  const double two13 = static_cast<double>(c.two13);
  const char* wname[5] = {"xi_u", "xi_v", "chi_u", "chi_v", "t"};

  // order 1: all ten first partials vanish
  for (int i = 0; i < 5; ++i) {
    add(std::string("H+ d/d") + wname[i], static_cast<double>(d1(Hp, i, h0)),
        0.0, 1e-8, false);
    add(std::string("H- d/d") + wname[i], static_cast<double>(d1(Hm, i, h0)),
        0.0, 1e-8, false);
  }

  // order 2, printed structure
  const double E2 = D / (8 * two13);
  const double G = std::sqrt(D) / (8 * two13 * two13);
  add("H+ xi_u^2", static_cast<double>(d2(Hp, 0, 0, h0)) / 2, E2, 1e-6, true);
  add("H+ xi_v^2", static_cast<double>(d2(Hp, 1, 1, h0)) / 2, -E2, 1e-6, true);
  add("H+ t chi_u", static_cast<double>(d2(Hp, 2, 4, h0)), 4 / D, 1e-6, true);
  add("H+ t chi_v", static_cast<double>(d2(Hp, 3, 4, h0)), -4 / D, 1e-6, true);
  add("H- xi_u^2", static_cast<double>(d2(Hm, 0, 0, h0)) / 2, G * (4 - two13),
      1e-6, true);
  add("H- xi_v^2", static_cast<double>(d2(Hm, 1, 1, h0)) / 2, G * (4 - two13),
      1e-6, true);
  add("H- xi_u xi_v", static_cast<double>(d2(Hm, 0, 1, h0)), -8 * G, 1e-6, true);
  add("H- t chi_u", static_cast<double>(d2(Hm, 2, 4, h0)), 4 / std::sqrt(D),
      1e-6, true);
  add("H- t chi_v", static_cast<double>(d2(Hm, 3, 4, h0)), 4 / std::sqrt(D),
      1e-6, true);
  // no chi quadratics at t = 0, no xi cross term in H+, no t^2
  for (const auto& [fn, f] : {std::pair<const char*, const F5&>{"H+", Hp},
                              {"H-", Hm}}) {
    add(std::string(fn) + " chi_u^2 (0)",
        static_cast<double>(d2(f, 2, 2, h0)) / 2, 0.0, 1e-8, false);
    add(std::string(fn) + " chi_v^2 (0)",
        static_cast<double>(d2(f, 3, 3, h0)) / 2, 0.0, 1e-8, false);
    add(std::string(fn) + " chi_u chi_v (0)",
        static_cast<double>(d2(f, 2, 3, h0)), 0.0, 1e-8, false);
    add(std::string(fn) + " t^2 (0)", static_cast<double>(d2(f, 4, 4, h0)) / 2,
        0.0, 1e-8, false);
  }
  add("H+ xi_u xi_v (0)", static_cast<double>(d2(Hp, 0, 1, h0)), 0.0, 1e-8,
      false);

  // order 3, the printed chi cubics
  const double D2 = D * D, D32 = std::pow(D, 1.5);
  const double w_plus = 8 * (6 - two13) / D2;     // |chi^3| coefficient of H+
  const double v_plus = 48 / D2;                  // mixed
  const double w_minus = 8 * (2 - two13) / D32;
  const double v_minus = 48 / D32;
  const double c30p = static_cast<double>(d3_pure(Hp, 2, h0)) / 6;
  const double c03p = static_cast<double>(d3_pure(Hp, 3, h0)) / 6;
  const double c21p = static_cast<double>(d3_iij(Hp, 2, 3, h0)) / 2;
  const double c12p = static_cast<double>(d3_iij(Hp, 3, 2, h0)) / 2;
  add("H+ chi_u^3", c30p, -w_plus, 1e-6, true);
  add("H+ chi_v^3", c03p, w_plus, 1e-6, true);
  add("H+ chi_u^2 chi_v", c21p, -v_plus, 1e-6, true);
  add("H+ chi_u chi_v^2", c12p, v_plus, 1e-6, true);
  const double c30m = static_cast<double>(d3_pure(Hm, 2, h0)) / 6;
  const double c03m = static_cast<double>(d3_pure(Hm, 3, h0)) / 6;
  const double c21m = static_cast<double>(d3_iij(Hm, 2, 3, h0)) / 2;
  const double c12m = static_cast<double>(d3_iij(Hm, 3, 2, h0)) / 2;
  add("H- chi_u^3", c30m, -w_minus, 1e-6, true);
  add("H- chi_v^3", c03m, -w_minus, 1e-6, true);
  add("H- chi_u^2 chi_v", c21m, -v_minus, 1e-6, true);
  add("H- chi_u chi_v^2", c12m, -v_minus, 1e-6, true);

  // linear change of coordinates fitted from the extracted coefficients:
  //   (xi_u, xi_v) = (a11 y1 + a12 y2, a21 y1 + a22 y2), a22 = -a11,
  //   a12 = -a21; (chi_u, chi_v) = (b11 x1 + b12 x2, b21 x1 + b22 x2),
  //   b21 = -b11, b22 = b12; k - k* = scale * kappa
  const double cp = static_cast<double>(d2(Hp, 0, 0, h0)) / 2;
  const double alpha = static_cast<double>(d2(Hm, 0, 0, h0)) / 2;
  const double beta = static_cast<double>(d2(Hm, 0, 1, h0));
  const double rho =
      (-beta - std::sqrt(beta * beta - 4 * alpha * alpha)) / (2 * alpha);
  rep.a11 = std::sqrt(1.0 / (cp * (1 - rho * rho)));
  rep.a21 = rho * rep.a11;
  // y1^2 and y1 y2 conditions of the quadratic form in y
  add("fit y1^2 residual",
      alpha * (rep.a11 * rep.a11 + rep.a21 * rep.a21) + beta * rep.a11 * rep.a21,
      0.0, 1e-8, false);
  add("fit y1 y2 = 2",
      -4 * alpha * rep.a11 * rep.a21 -
          beta * (rep.a11 * rep.a11 + rep.a21 * rep.a21),
      2.0, 1e-5, true);

  // cubic conditions in x determine b11, b12; the H- cubic and the kappa
  // terms must then come out consistent
  // x1^3 coefficient of the composed H+ cubic is
  // (c30 - c03 - c21 + c12) b11^3 and must equal 1
  const double a3coef = c30p - c03p - c21p + c12p;
  rep.b11 = std::cbrt(1.0 / a3coef);
  // x1 x2^2 coefficient is (3 c30 - 3 c03 + c21 - c12) b11 b12^2 = -3
  const double ab2coef = 3 * (c30p - c03p) + (c21p - c12p);
  rep.b12 = std::sqrt(-3.0 / (ab2coef * rep.b11));
  const double q_p = static_cast<double>(d2(Hp, 2, 4, h0));
  const double q_m = static_cast<double>(d2(Hm, 2, 4, h0));
  rep.scale = 1.0 / (2 * q_p * rep.b11);
  add("fit kappa x2 = 1", q_m * rep.scale * 2 * rep.b12, 1.0, 1e-5, true);
  // H- cubic consistency: x1^2 x2 -> 3 and x2^3 -> -1
  const double A2B = 3 * c30m + 3 * c03m - c21m - c12m;
  const double B3 = c30m + c03m + c21m + c12m;
  add("fit x1^2 x2 = 3", A2B * rep.b11 * rep.b11 * rep.b12, 3.0, 2e-5, true);
  add("fit x2^3 = -1", B3 * rep.b12 * rep.b12 * rep.b12, -1.0, 2e-5, true);

  // printed approximate values of the fitted constants (5 significant digits)
  add("a11 ~ 1.49505", rep.a11, 1.49505, 1e-5, true);
  add("a21 ~ 0.592494", rep.a21, 0.592494, 1e-5, true);
  add("b11 ~ 1.1239", rep.b11, 1.1239, 1e-4, true);
  add("b12 ~ 0.485921", rep.b12, 0.485921, 1e-5, true);
  add("scale ~ 0.594984", rep.scale, 0.594984, 1e-5, true);
  add("scale closed form", rep.scale,
      std::cbrt(D) / std::pow(2.0, 14.0 / 9.0), 1e-8, true);

  rep.all_pass = true;
  for (const auto& ch : rep.checks) rep.all_pass = rep.all_pass && ch.pass;
  return rep;
}

}  // namespace tcm
