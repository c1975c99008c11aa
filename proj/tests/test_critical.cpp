#include <doctest.h>

#include <algorithm>

#include "tcm/critical.hpp"
#include "tcm/errors.hpp"
#include "tcm/polyroots.hpp"

using namespace tcm;

namespace {
const SystemParams stc = SystemParams::stc();
constexpr double two23 = 1.5874010519681994;

bool has_eigenvalue(const Rank0Point& p, std::complex<double> target, double tol) {
  return std::any_of(p.eigenvalues.begin(), p.eigenvalues.end(),
                     [&](auto l) { return std::abs(l - target) < tol; });
}

const Rank0Point& find_rank0(const std::vector<Rank0Point>& v, int su, int sv) {
  for (const auto& p : v)
    if (p.sigma_u == su && p.sigma_v == sv) return p;
  REQUIRE(false);
  return v[0];
}
}  // namespace

TEST_CASE("rank-0 classification reproduces the exact spectra") {
  const auto pts = rank0_classify(stc);
  REQUIRE(pts.size() == 4);

  const auto& mm = find_rank0(pts, -1, -1);
  CHECK(mm.type == Rank0Type::EEE);
  CHECK(mm.critical_value == IntegralValue{-1.5, 1.5, -2.0});
  const double s17 = std::sqrt(17.0);
  for (double w : {4.0, (s17 + 1) / 4, (s17 - 1) / 4}) {
    CHECK(has_eigenvalue(mm, {0, w}, 1e-12));
    CHECK(has_eigenvalue(mm, {0, -w}, 1e-12));
  }

  const auto& pp = find_rank0(pts, 1, 1);
  CHECK(pp.type == Rank0Type::EFF);
  CHECK(pp.critical_value == IntegralValue{-2.5, 2.5, 2.0});
  const double s15 = std::sqrt(15.0);
  CHECK(has_eigenvalue(pp, {0, 4}, 1e-12));
  CHECK(has_eigenvalue(pp, {0, -4}, 1e-12));
  for (double re : {s15 / 4, -s15 / 4})
    for (double im : {0.25, -0.25}) CHECK(has_eigenvalue(pp, {re, im}, 1e-12));

  // approximate quadruples, three significant digits
  const auto& pm = find_rank0(pts, 1, -1);
  CHECK(pm.type == Rank0Type::EFF);
  CHECK(pm.critical_value == IntegralValue{1.5, -2.5, 0.0});
  CHECK(has_eigenvalue(pm, {0, 1.095}, 5e-3));
  CHECK(has_eigenvalue(pm, {1.89, 0.298}, 5e-3));
  CHECK(has_eigenvalue(pm, {-1.89, -0.298}, 5e-3));

  const auto& mp = find_rank0(pts, -1, 1);
  CHECK(mp.type == Rank0Type::EFF);
  CHECK(mp.critical_value == IntegralValue{2.5, -1.5, 0.0});
  CHECK(has_eigenvalue(mp, {0, 2.42}, 5e-3));
  CHECK(has_eigenvalue(mp, {0.854, 0.961}, 2e-3));
}

TEST_CASE("b_max is a root of the cubic and of the radical form") {
  const double bm = rank1_b_max();
  CHECK(std::abs(((16 * bm - 8) * bm + 1) * bm - 64) < 1e-12);
  const double radical =
      (2.0 + std::cbrt(3455.0 - 48 * std::sqrt(5181.0)) +
       std::cbrt(3455.0 + 48 * std::sqrt(5181.0))) / 12.0;
  CHECK(bm == doctest::Approx(radical).epsilon(1e-9));
  CHECK(bm == doctest::Approx(1.7583).epsilon(1e-4));
}

TEST_CASE("family samples satisfy the defining proportionalities") {
  struct Probe { Rank1Family f; double b; };
  for (const Probe pr : {Probe{Rank1Family::L1, 1.0}, {Rank1Family::L2, 2.4},
                         {Rank1Family::L3, 1.7}, {Rank1Family::L4, 1.62},
                         {Rank1Family::L5, 0.11}, {Rank1Family::L6, -1.7},
                         {Rank1Family::L7, 0.2}, {Rank1Family::L8, 0.07}}) {
    const Rank1Sample s = rank1_sample(pr.f, pr.b);
    CHECK(is_valid_point(s.point));
    // critical value against a direct evaluation on the representative
    CHECK((eval_integrals(s.point, stc) - s.critical_value).cwiseAbs().maxCoeff() <
          1e-10);
    // X_H1 = x X_K, X_H2 = y X_K
    const double x = s.a - s.b, y = s.a + s.b;
    const TangentVector xk = field_K(s.point, stc);
    CHECK((field_H1(s.point, stc) - x * xk).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((field_H2(s.point, stc) - y * xk).cwiseAbs().maxCoeff() < 1e-9);
    // representative phase: z real and nonnegative
    CHECK(s.point[iQ] == 0.0);
    CHECK(s.point[iP] >= 0.0);
  }
}

TEST_CASE("interval validation and the two isolated points") {
  CHECK_THROWS_AS(rank1_sample(Rank1Family::L1, 0.2), OutOfRange);
  CHECK_THROWS_AS(rank1_sample(Rank1Family::L3, 1.9), OutOfRange);
  CHECK_THROWS_AS(rank1_sample(Rank1Family::L6, 0.5), OutOfRange);

  const Rank1Sample hh = rank1_sample(Rank1Family::HH);
  CHECK(hh.critical_value[2] == 16.0625);
  CHECK(rank1_classify(hh) == Rank1Type::Degenerate);

  const Rank1Sample cs = rank1_sample(Rank1Family::CSTAR);
  const double h1s = 2.0 - 3.0 / two23;
  CHECK(cs.critical_value[0] == doctest::Approx(h1s).epsilon(1e-14));
  CHECK(cs.critical_value[1] == doctest::Approx(-h1s).epsilon(1e-14));
  CHECK(cs.critical_value[2] ==
        doctest::Approx((12 * two23 - 1) / 16).epsilon(1e-14));
  CHECK(rank1_classify(cs) == Rank1Type::Degenerate);
}

TEST_CASE("classification against the closed-form polynomials at b = 1") {
  // DX of H+ has roots +-i sqrt(3), DX of H- has +-3
  const Rank1Sample s = rank1_sample(Rank1Family::L1, 1.0);
  const Eigen::Matrix4d Mp = reduced_linearization(1, 1, s.reduced, stc);
  const Eigen::Matrix4d Mm = reduced_linearization(1, -1, s.reduced, stc);
  const Eigen::Vector4cd ep = Mp.eigenvalues();
  const Eigen::Vector4cd em = Mm.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(ep[i].real()) < 1e-9);
    CHECK(std::abs(std::abs(ep[i].imag()) - std::sqrt(3.0)) < 1e-9);
    CHECK(std::abs(em[i].imag()) < 1e-9);
    CHECK(std::abs(std::abs(em[i].real()) - 3.0) < 1e-9);
  }
  CHECK(rank1_classify(s) == Rank1Type::FFR);
}

TEST_CASE("classification sweep reproduces the stability table") {
  for (const auto& [fam, expect] :
       {std::pair{Rank1Family::L1, Rank1Type::FFR},
        {Rank1Family::L2, Rank1Type::FFR},
        {Rank1Family::L3, Rank1Type::FFR},
        {Rank1Family::L4, Rank1Type::FFR},
        {Rank1Family::L5, Rank1Type::EER},
        {Rank1Family::L6, Rank1Type::EER},
        {Rank1Family::L7, Rank1Type::EER},
        {Rank1Family::L8, Rank1Type::EER}}) {
    const auto [lo, hi] = rank1_interval(fam);
    for (int i = 1; i <= 40; ++i) {
      const double b = lo + (hi - lo) * i / 41.0;
      CHECK(rank1_classify(rank1_sample(fam, b)) == expect);
    }
  }
}

TEST_CASE("family endpoints approach the documented limits") {
  const double bm = rank1_b_max();
  const Rank1Sample l3 = rank1_sample(Rank1Family::L3, bm - 1e-10);
  CHECK(l3.point[iU3] == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(l3.point[iV3] == doctest::Approx(1.0).epsilon(1e-8));
  const Rank1Sample l4 = rank1_sample(Rank1Family::L4, bm - 1e-10);
  CHECK(l4.point[iU3] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(l4.point[iV3] == doctest::Approx(-1.0).epsilon(1e-8));
  for (Rank1Family f : {Rank1Family::L7, Rank1Family::L8}) {
    const Rank1Sample s = rank1_sample(f, 0.25 - 1e-10);
    CHECK(s.point[iU3] == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(s.point[iV3] == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(std::abs(s.point[iP]) < 1e-4);
  }
}

TEST_CASE("the four interior threads terminate at the central value") {
  const IntegralValue cstar = rank1_sample(Rank1Family::CSTAR).critical_value;
  // the a = 0 threads approach quadratically in the b offset
  for (Rank1Family f : {Rank1Family::L1, Rank1Family::L2}) {
    const double b = f == Rank1Family::L1 ? two23 - 1e-4 : two23 + 1e-4;
    CHECK((rank1_sample(f, b).critical_value - cstar).norm() < 1e-6);
  }
  // l3, l4 approach linearly in the b offset (quadratically in the branch
  // parameter a); checked on a decreasing ladder and at |a| ~ 1e-4
  for (Rank1Family f : {Rank1Family::L3, Rank1Family::L4}) {
    double prev = 1e300;
    for (double db : {1e-2, 1e-3, 1e-4, 1e-5}) {
      const double d = (rank1_sample(f, two23 + db).critical_value - cstar).norm();
      CHECK(d < prev);
      prev = d;
    }
    const double db_for_a = 1e-8 / (2 * two23 - 1 / std::sqrt(two23));
    const double d =
        (rank1_sample(f, two23 + db_for_a).critical_value - cstar).norm();
    CHECK(d < 1e-6);
  }
}

TEST_CASE("general parameterization specializes to the family samples") {
  for (const auto& [fam, b] :
       {std::pair{Rank1Family::L1, 0.9}, {Rank1Family::L7, 0.13},
        {Rank1Family::L3, 1.65}}) {
    const Rank1Sample s = rank1_sample(fam, b);
    const auto gen = rank1_general(s.a - s.b, s.a + s.b, stc);
    REQUIRE(gen.has_value());
    CHECK((gen->point - s.point).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((gen->critical_value - s.critical_value).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("resonant x = -y branch always satisfies the relation") {
  for (double x : {0.3, -1.2, 2.0})
    CHECK(rank1_relation_residual(x, -x, stc) == 0.0);
  CHECK_THROWS_AS(rank1_general(0.5, 0.7, stc), RelationViolated);
}

TEST_CASE("general parameters: solved relation gives a rank-1 point") {
  const SystemParams pr{0.4, 1.5, 1.0, 1.0};
  // solve the relation for y at fixed x by bisection
  const double x = 0.3;
  auto rel = [&](double y) { return rank1_relation_residual(x, y, pr); };
  double lo = -0.5, hi = -0.1;
  REQUIRE(rel(lo) * rel(hi) < 0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (rel(lo) * rel(mid) <= 0 ? hi : lo) = mid;
  }
  const double y = 0.5 * (lo + hi);
  const auto s = rank1_general(x, y, pr);
  REQUIRE(s.has_value());
  const TangentVector xk = field_K(s->point, pr);
  CHECK((field_H1(s->point, pr) - x * xk).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((field_H2(s->point, pr) - y * xk).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((eval_integrals(s->point, pr) - s->critical_value).cwiseAbs().maxCoeff() <
        1e-9);
}

TEST_CASE("boundary cubic is nonpositive at u3 = +-1 for arbitrary data") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), y = u(rng), C = u(rng), K = u(rng),
                 g = 0.3 + std::abs(u(rng));
    const auto [a0, a1, a2, a3] = rank2_cubic(x, y, C, K, g);
    const double g2 = g * g;
    const double pm1 = ((-a3 + a2) - a1) + a0;
    const double pp1 = ((a3 + a2) + a1) + a0;
    const double em1 =
        -std::pow(C + x - y - (K + g2 * (C + x) * (C + x)) * y + g2 * y * y * y, 2);
    const double ep1 =
        -std::pow(C - x + y - (K + g2 * (C - x) * (C - x)) * y + g2 * y * y * y, 2);
    CHECK(pm1 == doctest::Approx(em1).epsilon(1e-9).scale(std::abs(em1) + 1));
    CHECK(pp1 == doctest::Approx(ep1).epsilon(1e-9).scale(std::abs(ep1) + 1));
    CHECK(pm1 <= 1e-12);
    CHECK(pp1 <= 1e-12);
  }
}

TEST_CASE("rank-2 slice: accepted points verified by an independent counter") {
  const auto samples = rank2_slice(1.8, stc, 512);
  REQUIRE(samples.size() > 50);
  int checked = 0;
  for (size_t i = 0; i < samples.size() && checked < 50; i += samples.size() / 50) {
    const auto& s = samples[i];
    const auto [a0, a1, a2, a3] = rank2_cubic(s.x, s.y, s.C, s.k, stc.g);
    int inside = 0;
    for (const auto& r : poly_roots({a0, a1, a2, a3}))
      if (std::abs(r.imag()) < 1e-8 && r.real() >= -1.0 && r.real() <= 1.0)
        ++inside;
    CHECK(inside == 2);
    ++checked;
  }
}

namespace {
bool point_in_polygon(const std::vector<Rank2Sample>& curve, double h1, double h2) {
  // angle-sorted even-odd test around the centroid
  double cx = 0, cy = 0;
  for (const auto& s : curve) {
    cx += s.h1;
    cy += s.h2;
  }
  cx /= curve.size();
  cy /= curve.size();
  std::vector<std::pair<double, std::pair<double, double>>> pts;
  for (const auto& s : curve)
    pts.push_back({std::atan2(s.h2 - cy, s.h1 - cx), {s.h1, s.h2}});
  std::sort(pts.begin(), pts.end());
  bool inside = false;
  for (size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
    const auto [x1, y1] = pts[i].second;
    const auto [x2, y2] = pts[j].second;
    if ((y1 > h2) != (y2 > h2) &&
        h1 < (x2 - x1) * (h2 - y1) / (y2 - y1) + x1)
      inside = !inside;
  }
  return inside;
}
}  // namespace

TEST_CASE("focus-focus values sit inside the rank-2 boundary at k = 1.8") {
  const auto curve = rank2_slice(1.8, stc, 1024);
  CHECK(point_in_polygon(curve, -0.578466, 0.578466));
  CHECK(point_in_polygon(curve, -1.743013, 1.743013));
  CHECK_FALSE(point_in_polygon(curve, 10.0, 10.0));
}

TEST_CASE("slices contain the documented focus-focus points") {
  const auto at18 = rank1_points_at_k(1.8, stc);
  std::vector<Rank1SlicePoint> ffr;
  for (const auto& p : at18)
    if (p.type == Rank1Type::FFR) ffr.push_back(p);
  REQUIRE(ffr.size() == 2);
  for (const auto& p : ffr) {
    const bool is_ff1 = std::abs(p.value[0] + 0.578466) < 1e-4;
    const bool is_ff2 = std::abs(p.value[0] + 1.743013) < 1e-4;
    CHECK((is_ff1 || is_ff2));
    CHECK(p.value[1] == doctest::Approx(-p.value[0]).epsilon(1e-10));
  }

  const auto at03 = rank1_points_at_k(0.3, stc);
  ffr.clear();
  for (const auto& p : at03)
    if (p.type == Rank1Type::FFR) ffr.push_back(p);
  REQUIRE(ffr.size() == 2);
  bool saw3 = false, saw4 = false;
  for (const auto& p : ffr) {
    if (std::abs(p.value[0] - 1.793686) < 1e-4 &&
        std::abs(p.value[1] + 1.164044) < 1e-4)
      saw3 = true;
    if (std::abs(p.value[0] - 1.164044) < 1e-4 &&
        std::abs(p.value[1] + 1.793686) < 1e-4)
      saw4 = true;
  }
  CHECK(saw3);
  CHECK(saw4);
}

TEST_CASE("the central-value slice carries the single interior degenerate point") {
  const double ks = (12 * two23 - 1) / 16;
  const auto pts = rank1_points_at_k(ks, stc);
  int degenerate = 0;
  for (const auto& p : pts)
    if (p.family == Rank1Family::CSTAR) ++degenerate;
  CHECK(degenerate == 1);
}

TEST_CASE("diagram assembly carries rank-0 points on their slices") {
  const auto d = bifurcation_diagram({2.0}, stc, 256, 32);
  REQUIRE(d.slices.size() == 1);
  REQUIRE(d.slices[0].rank0.size() == 1);
  CHECK(d.slices[0].rank0[0].critical_value == IntegralValue{-2.5, 2.5, 2.0});
  CHECK(d.threads.size() == 8);
  CHECK_THROWS_AS(bifurcation_diagram({-5.0}, stc, 64, 8), OutOfRange);
}
