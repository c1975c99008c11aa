#include <doctest.h>

#include "tcm/errors.hpp"
#include "tcm/flow.hpp"

using namespace tcm;

namespace {
const SystemParams stc = SystemParams::stc();
}

TEST_CASE("full circle period returns the point") {
  std::mt19937_64 rng(1);
  const PhasePoint x = random_phase_point(rng);
  const PhasePoint y = flow({{0, 0, 2 * M_PI}, 1.0, 1e-12, 4000000}, x, stc);
  CHECK((y - x).norm() < 1e-9);
}

TEST_CASE("circle flow agrees with the closed-form rotation") {
  std::mt19937_64 rng(2);
  for (double t : {0.3, 1.7, -2.5}) {
    const PhasePoint x = random_phase_point(rng);
    const PhasePoint y = flow({{0, 0, 1}, t, 1e-12, 4000000}, x, stc);
    CHECK((y - s1_action(t, x)).norm() < 1e-10);
  }
}

TEST_CASE("conservation along the H1 flow") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) {
    const PhasePoint x = random_phase_point(rng);
    const PhasePoint y = flow({{1, 0, 0}, 10.0, 1e-12, 4000000}, x, stc);
    const IntegralValue drift =
        (eval_integrals(y, stc) - eval_integrals(x, stc)).cwiseAbs();
    CHECK(drift.maxCoeff() < 1e-9);
    CHECK(sphere_residual(y) < 1e-11);
  }
}

TEST_CASE("published period vector closes a fiber orbit") {
  // on the fiber of (2, 1, 1.8): T2 ~ (1.83862, 2.07173, -1.44104)
  PhasePoint x;
  x << 0.07175932, -0.77490514, 0.62799094, 0.32944405, -0.52058512,
      -0.7876914, 0.16438703, 1.972911;
  project_spheres(x);
  const IntegralValue T2{1.83862, 2.07173, -1.44104};
  const PhasePoint y = flow_compose(T2, x, stc);
  CHECK((y - x).norm() < 1e-4);  // published digits limit the closure
}

TEST_CASE("compose with zero and with the circle period") {
  std::mt19937_64 rng(4);
  const PhasePoint x = random_phase_point(rng);
  CHECK((flow_compose({0, 0, 0}, x, stc) - x).norm() == 0.0);
  CHECK((flow_compose({0, 0, 2 * M_PI}, x, stc) - x).norm() < 1e-9);
}

TEST_CASE("composition order commutes on regular points") {
  std::mt19937_64 rng(5);
  const PhasePoint x = random_phase_point(rng);
  const IntegralValue Ta{0.8, -0.4, 0.9}, Tb{-0.3, 0.6, 0.2};
  const PhasePoint y1 = flow_compose(Tb, flow_compose(Ta, x, stc), stc);
  const PhasePoint y2 = flow_compose(Ta + Tb, x, stc);
  CHECK((y1 - y2).norm() < 2e-9);
}

TEST_CASE("flow rejects bad specs and impossible step budgets") {
  std::mt19937_64 rng(6);
  const PhasePoint x = random_phase_point(rng);
  CHECK_THROWS_AS(flow({{1, 0, 0}, 1.0, -1.0, 1000}, x, stc), DomainError);
  CHECK_THROWS_AS(flow({{1, 0, 0}, 50.0, 1e-12, 10}, x, stc), StepLimitExceeded);
}

TEST_CASE("backward flow undoes forward flow") {
  std::mt19937_64 rng(7);
  const PhasePoint x = random_phase_point(rng);
  const FlowSpec fwd{{1, 1, 1}, 3.0, 1e-12, 4000000};
  const FlowSpec bwd{{1, 1, 1}, -3.0, 1e-12, 4000000};
  CHECK((flow(bwd, flow(fwd, x, stc), stc) - x).norm() < 1e-9);
}
