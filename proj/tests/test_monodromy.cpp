#include <doctest.h>

#include "tcm/errors.hpp"
#include "tcm/flow.hpp"
#include "tcm/monodromy.hpp"

using namespace tcm;

namespace {
const SystemParams stc = SystemParams::stc();

Eigen::Matrix3i mat3(std::initializer_list<int> v) {
  Eigen::Matrix3i m;
  int i = 0;
  for (int x : v) {
    m(i / 3, i % 3) = x;
    ++i;
  }
  return m;
}
}  // namespace

TEST_CASE("fiber solve returns the known fixed point on a singular fiber") {
  PhasePoint seed = PhasePoint::Zero();
  seed[iU3] = -1;
  seed[iV3] = -1;
  const FiberPoint fp = solve_fiber_point({-1.5, 1.5, -2.0}, seed, stc);
  CHECK(fp.residual < 1e-11);
  CHECK((fp.point - seed).norm() < 1e-9);
}

TEST_CASE("fiber solve round trip at the default base value") {
  const FiberPoint fp = solve_fiber_point(default_base_value(), stc);
  CHECK(fp.residual < 1e-10);
  CHECK((eval_integrals(fp.point, stc) - default_base_value()).norm() < 1e-10);
  CHECK(is_valid_point(fp.point));
}

TEST_CASE("empty fiber: no convergence") {
  FiberSolveOptions opts;
  opts.retries = 6;
  CHECK_THROWS_AS(solve_fiber_point({100.0, 100.0, 0.0}, stc, opts), NoConvergence);
}

TEST_CASE("period basis at the base value matches the published vectors") {
  const FiberPoint fp = solve_fiber_point(default_base_value(), stc);
  const PeriodBasis B = solve_period_basis(fp, default_basis_guess_T2(),
                                           default_basis_guess_T3(), stc);
  CHECK((B.T2 - IntegralValue{1.83862, 2.07173, -1.44104}).cwiseAbs().maxCoeff() <
        1e-4);
  CHECK((B.T3 - IntegralValue{-2.02757, -0.785264, 1.15808}).cwiseAbs().maxCoeff() <
        1e-4);
  // closure of the vectors and of an integer combination
  CHECK((flow_compose(B.T2, fp.point, stc) - fp.point).norm() < 1e-6);
  CHECK((flow_compose(B.T3, fp.point, stc) - fp.point).norm() < 1e-6);
  CHECK((flow_compose(B.T2 + B.T3, fp.point, stc) - fp.point).norm() < 2e-6);
}

TEST_CASE("coarse search finds a lattice-equivalent basis") {
  const FiberPoint fp = solve_fiber_point(default_base_value(), stc);
  const auto cands = find_period_guesses(fp, stc, 6.0, 64);
  REQUIRE(cands.size() >= 2);
  const PeriodBasis found = solve_period_basis(fp, cands[0], cands[1], stc);
  const PeriodBasis ref = solve_period_basis(fp, default_basis_guess_T2(),
                                             default_basis_guess_T3(), stc);
  // change of basis between the two must be unimodular integer
  const Eigen::Matrix3d U = found.matrix() * ref.matrix().inverse();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(U(i, j) - std::lround(U(i, j))) < 1e-6);
  CHECK(std::abs(std::abs(U.determinant()) - 1.0) < 1e-6);
}

TEST_CASE("constant loop transports the basis identically") {
  const FiberPoint fp = solve_fiber_point(default_base_value(), stc);
  const PeriodBasis B = solve_period_basis(fp, default_basis_guess_T2(),
                                           default_basis_guess_T3(), stc);
  LoopSpec loop;
  loop.base = default_base_value();
  loop.waypoints.assign(4, default_base_value());
  const PeriodBasis after = continue_basis(B, fp, loop, stc);
  CHECK((after.T2 - B.T2).norm() < 1e-10);
  CHECK((after.T3 - B.T3).norm() < 1e-10);
  const MonodromyMatrix M = monodromy_matrix(B, after);
  CHECK(M.m == Eigen::Matrix3i::Identity());
  CHECK(M.residual < 1e-9);
}

TEST_CASE("first loop reproduces the published transport and matrix") {
  const FiberPoint fp = solve_fiber_point(default_base_value(), stc);
  const PeriodBasis B = solve_period_basis(fp, default_basis_guess_T2(),
                                           default_basis_guess_T3(), stc);
  const LoopSpec loop = builtin_loop(BuiltinLoop::Gamma1, stc);
  const IntegralValue center = builtin_loop_center(BuiltinLoop::Gamma1, stc);
  CHECK(center[2] == doctest::Approx(1.8).epsilon(1e-12));
  CHECK(center[0] == doctest::Approx(-0.578466).epsilon(1e-4));

  const PeriodBasis after = continue_basis(B, fp, loop, stc);
  CHECK((after.T2 - B.T2).norm() < 1e-5);
  CHECK((after.T3 - IntegralValue{-3.86619, -2.85699, 2.59913}).cwiseAbs()
            .maxCoeff() < 1e-4);

  const MonodromyMatrix M = monodromy_matrix(B, after);
  CHECK(M.residual < 1e-4);
  CHECK(M.m == mat3({1, 0, 0, 0, 1, 0, 0, -1, 1}));
  const MonodromyMatrix conj = change_basis(M, standard_basis_change());
  CHECK(conj.m == mat3({1, 0, 0, 0, 1, 1, 0, 0, 1}));
  CHECK(reduced_monodromy(conj) == Eigen::Matrix2i{{1, 1}, {0, 1}});
}

TEST_CASE("matrix utilities") {
  PeriodBasis B;
  B.T2 = {1.3, 0.2, -0.4};
  B.T3 = {0.1, -0.8, 0.9};
  const MonodromyMatrix I = monodromy_matrix(B, B);
  CHECK(I.m == Eigen::Matrix3i::Identity());
  CHECK(I.residual == 0.0);

  // published conjugation: raw loop matrices -> the reporting basis
  const MonodromyMatrix raw{mat3({1, 0, 0, 0, 1, 0, 0, -1, 1}), 0.0};
  CHECK(change_basis(raw, Eigen::Matrix3i::Identity()).m == raw.m);
  CHECK(change_basis(raw, standard_basis_change()).m ==
        mat3({1, 0, 0, 0, 1, 1, 0, 0, 1}));
  const MonodromyMatrix raw3{mat3({1, 0, 0, -1, 1, 1, 0, 0, 1}), 0.0};
  CHECK(change_basis(raw3, standard_basis_change()).m ==
        mat3({1, 0, 0, 0, 2, 1, 0, -1, 0}));
  const MonodromyMatrix raw2{mat3({1, 0, 0, -1, 2, 1, 1, -1, 0}), 0.0};
  CHECK(change_basis(raw2, standard_basis_change()).m ==
        mat3({1, 0, 0, 0, 1, 0, 0, -1, 1}));

  // group relation in the reporting basis
  const Eigen::Matrix3i M1 = mat3({1, 0, 0, 0, 1, 1, 0, 0, 1});
  const Eigen::Matrix3i M2 = mat3({1, 0, 0, 0, 1, 0, 0, -1, 1});
  const Eigen::Matrix3i M3 = mat3({1, 0, 0, 0, 2, 1, 0, -1, 0});
  const Eigen::Matrix3i M4 = M2;
  CHECK(Eigen::Matrix3i(M2 * M1) == Eigen::Matrix3i(M3 * M4));
  CHECK(Eigen::Matrix3i(M2 * M1) == mat3({1, 0, 0, 0, 1, 1, 0, -1, 0}));

  // reduced blocks
  CHECK(reduced_monodromy({M3, 0.0}) == Eigen::Matrix2i{{2, 1}, {-1, 0}});
  CHECK(reduced_monodromy({M1, 0.0}) == Eigen::Matrix2i{{1, 1}, {0, 1}});
  const Eigen::Matrix2i M0 = reduced_monodromy({Eigen::Matrix3i(M2 * M1), 0.0});
  CHECK(M0 == Eigen::Matrix2i{{1, 1}, {-1, 0}});
  // char poly t^2 - t + 1: eigenvalues -e^{+-2 pi i/3}
  CHECK(M0.trace() == 1);
  CHECK(M0.determinant() == 1);

  CHECK_THROWS_AS(reduced_monodromy({raw2.m, 0.0}), NotReducible);
  Eigen::Matrix3i bad = Eigen::Matrix3i::Identity();
  bad(0, 0) = 2;
  CHECK_THROWS_AS(change_basis(raw, bad), NotUnimodular);
  CHECK(integer_inverse(standard_basis_change()) * standard_basis_change() ==
        Eigen::Matrix3i::Identity());
}

TEST_CASE("rounding guards") {
  PeriodBasis B;
  B.T2 = {1.0, 0.0, 0.0};
  B.T3 = {0.0, 1.0, 0.0};
  PeriodBasis A = B;
  A.T2 = {1.3, 0.0, 0.0};  // far from any integer combination
  CHECK_THROWS_AS(monodromy_matrix(B, A), RoundingAmbiguous);
}
