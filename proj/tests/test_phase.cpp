#include <doctest.h>

#include "tcm/phase.hpp"
#include "tcm/poisson.hpp"

using namespace tcm;

namespace {
const SystemParams stc = SystemParams::stc();

PhasePoint fixed_point(int su, int sv) {
  PhasePoint x = PhasePoint::Zero();
  x[iU3] = su;
  x[iV3] = sv;
  return x;
}
}  // namespace

TEST_CASE("integral values at the four fixed points") {
  const IntegralValue f1 = eval_integrals(fixed_point(-1, -1), stc);
  CHECK(f1[0] == -1.5);
  CHECK(f1[1] == 1.5);
  CHECK(f1[2] == -2.0);
  const IntegralValue f2 = eval_integrals(fixed_point(1, 1), stc);
  CHECK(f2[0] == -2.5);
  CHECK(f2[1] == 2.5);
  CHECK(f2[2] == 2.0);
  const IntegralValue f3 = eval_integrals(fixed_point(-1, 1), stc);
  CHECK(f3[0] == 2.5);
  CHECK(f3[1] == -1.5);
  CHECK(f3[2] == 0.0);
  const IntegralValue f4 = eval_integrals(fixed_point(1, -1), stc);
  CHECK(f4[0] == 1.5);
  CHECK(f4[1] == -2.5);
  CHECK(f4[2] == 0.0);
}

TEST_CASE("general parameters: u = v = z = 0 leaves only the u3 v3 coupling") {
  const SystemParams pr{0.37, 1.21, 0.8, 1.3};
  const double c = pr.g * pr.g / (pr.delta2 - pr.delta1);
  for (int su : {-1, 1})
    for (int sv : {-1, 1}) {
      const IntegralValue f = eval_integrals(fixed_point(su, sv), pr);
      CHECK(f[0] == doctest::Approx((pr.delta1 - pr.omega) * su - 2 * c * su * sv).epsilon(1e-15));
      CHECK(f[1] == doctest::Approx((pr.delta2 - pr.omega) * sv + 2 * c * su * sv).epsilon(1e-15));
      CHECK(f[2] == su + sv);
    }
}

TEST_CASE("H = H1 + H2 + omega K identically") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const PhasePoint x = random_phase_point(rng);
    const IntegralValue f = eval_integrals(x, stc);
    CHECK(eval_H(x, stc) == doctest::Approx(f[0] + f[1] + f[2]).epsilon(1e-15));
  }
}

TEST_CASE("vector fields are tangent and match the structure-matrix form") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const PhasePoint x = random_phase_point(rng);
    for (Integral which : {Integral::H1, Integral::H2, Integral::K}) {
      const TangentVector d = vector_field(which, x, stc);
      CHECK(tangency_residual(x, d) < 1e-12);
      PhasePoint pig = poisson_structure(x) * grad_fd(integral_field(which), x, stc);
      CHECK((d - pig).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("circle field: z component is i z, fixed points are fixed") {
  std::mt19937_64 rng(3);
  const PhasePoint x = random_phase_point(rng);
  const TangentVector d = field_K(x, stc);
  CHECK(d[iP] == -x[iQ]);
  CHECK(d[iQ] == x[iP]);
  for (int su : {-1, 1})
    for (int sv : {-1, 1})
      CHECK(field_K(fixed_point(su, sv), stc).norm() == 0.0);
}

TEST_CASE("directional derivative of H2 along X_H1 vanishes") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const PhasePoint x = random_phase_point(rng);
    const TangentVector d = field_H1(x, stc);
    // 4th-order directional stencil
    const double h = 1e-4 / std::max(1.0, d.norm());
    const PhasePoint p1 = x + h * d, p2 = x + 2 * h * d;
    const PhasePoint m1 = x - h * d, m2 = x - 2 * h * d;
    const double dd = (-eval_H2(p2, stc) + 8 * eval_H2(p1, stc) -
                       8 * eval_H2(m1, stc) + eval_H2(m2, stc)) /
                      (12 * h);
    CHECK(std::abs(dd) < 1e-10);
  }
}

TEST_CASE("circle action: identity, periodicity, invariance") {
  std::mt19937_64 rng(13);
  const PhasePoint x = random_phase_point(rng);
  CHECK((s1_action(0.0, x) - x).norm() == 0.0);
  CHECK((s1_action(2 * M_PI, x) - x).norm() < 1e-14);

  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  for (int i = 0; i < 100; ++i) {
    const PhasePoint y = random_phase_point(rng);
    const double t = ang(rng);
    const PhasePoint z = s1_action(t, y);
    CHECK(z[iU3] == y[iU3]);
    CHECK(z[iV3] == y[iV3]);
    CHECK((eval_integrals(z, stc) - eval_integrals(y, stc)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("finite-difference brackets of the integrals vanish") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 25; ++i) {
    const PhasePoint x = random_phase_point(rng);
    const auto h1 = integral_field(Integral::H1);
    const auto h2 = integral_field(Integral::H2);
    const auto kk = integral_field(Integral::K);
    CHECK(std::abs(poisson_bracket_fd(h1, h2, x, stc)) < 1e-8);
    CHECK(std::abs(poisson_bracket_fd(h1, kk, x, stc)) < 1e-8);
    CHECK(std::abs(poisson_bracket_fd(h2, kk, x, stc)) < 1e-8);
  }
}

TEST_CASE("bracket oracle reproduces the spin algebra on the equator") {
  // f = u3, g = u1: {u3, u1} = u2
  const ScalarField fu3 = [](const PhasePoint& x, const SystemParams&) {
    return x[iU3];
  };
  const ScalarField fu1 = [](const PhasePoint& x, const SystemParams&) {
    return x[iU1];
  };
  PhasePoint x = PhasePoint::Zero();
  x[iU1] = std::sqrt(0.5);
  x[iU2] = std::sqrt(0.5);
  x[iV3] = 1.0;
  CHECK(poisson_bracket_fd(fu3, fu1, x, stc) ==
        doctest::Approx(x[iU2]).epsilon(1e-9));
}

TEST_CASE("nondefault parameters keep the involution property") {
  const SystemParams pr{0.4, 1.5, 1.0, 1.0};  // not resonant
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    const PhasePoint x = random_phase_point(rng);
    CHECK(std::abs(poisson_bracket_fd(integral_field(Integral::H1),
                                      integral_field(Integral::H2), x, pr)) < 1e-8);
  }
}
