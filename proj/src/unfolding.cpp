#include "tcm/unfolding.hpp"

#include <algorithm>
#include <cmath>

#include "tcm/errors.hpp"
#include "tcm/polyroots.hpp"

namespace tcm {
namespace {

constexpr double kTwoOneThird = 1.2599210498948732;   // 2^(1/3)
constexpr double kTwoTwoThirds = 1.5874010519681994;  // 2^(2/3)

std::array<Cplx, 3> cubic_roots(const UnfoldingValue& v) {
  // x^3 + kappa x - eps with complex eps: companion matrix + polish
  Eigen::Matrix3cd comp = Eigen::Matrix3cd::Zero();
  comp(0, 2) = v.epsilon;
  comp(1, 0) = 1.0;
  comp(1, 2) = -v.kappa;
  comp(2, 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(comp, false);
  std::array<Cplx, 3> r;
  for (int i = 0; i < 3; ++i) {
    Cplx x = es.eigenvalues()[i];
    for (int it = 0; it < 6; ++it) {
      const Cplx f = (x * x + v.kappa) * x - v.epsilon;
      const Cplx df = 3.0 * x * x + v.kappa;
      if (std::abs(df) < 1e-14) break;
      x -= f / df;
    }
    r[i] = x;
  }
  return r;
}

double min_separation(const std::array<Cplx, 3>& r) {
  return std::min({std::abs(r[0] - r[1]), std::abs(r[1] - r[2]),
                   std::abs(r[0] - r[2])});
}

/// Match new roots to old labels; the cheapest of the six assignments.
std::array<Cplx, 3> relabel(const std::array<Cplx, 3>& prev,
                            const std::array<Cplx, 3>& next,
                            std::array<int, 3>* perm = nullptr) {
  static const int P[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  double best = 1e300;
  int arg = 0;
  for (int p = 0; p < 6; ++p) {
    double cost = 0;
    for (int i = 0; i < 3; ++i) cost += std::abs(prev[i] - next[P[p][i]]);
    if (cost < best) {
      best = cost;
      arg = p;
    }
  }
  if (perm)
    for (int i = 0; i < 3; ++i) (*perm)[i] = P[arg][i];
  return {next[P[arg][0]], next[P[arg][1]], next[P[arg][2]]};
}

}  // namespace

std::vector<Cplx> discriminant_points(double kappa) {
  if (kappa == 0.0) return {Cplx(0, 0)};
  const double r = std::sqrt(4.0 * std::abs(kappa * kappa * kappa) / 27.0);
  if (kappa > 0) return {Cplx(0, -r), Cplx(0, r)};  // lambda1, lambda2
  return {Cplx(r, 0), Cplx(-r, 0)};                 // lambda3, lambda4
}

double discriminant_residual(const UnfoldingValue& v) {
  return std::abs(v.epsilon * v.epsilon +
                  4.0 / 27.0 * std::pow(v.kappa, 3));
}

RootTriple base_roots() {
  RootTriple t;
  for (int j = 0; j < 3; ++j)
    t.roots[j] = std::polar(1.0, 2 * M_PI * j / 3.0);
  return t;
}

RootTriple roots_at(const UnfoldingValue& v) {
  RootTriple t;
  t.roots = cubic_roots(v);
  return t;
}

namespace {

RootTriple track_segment(const UnfoldingValue& a, const UnfoldingValue& b,
                         const RootTriple& start, const TrackOptions& opts,
                         int depth) {
  const auto rb = cubic_roots(b);
  const double sep = std::min(min_separation(start.roots), min_separation(rb));
  if (sep < opts.guard)
    throw NearDiscriminant("track_roots: root separation under the guard");
  const auto matched = relabel(start.roots, rb);
  double motion = 0;
  for (int i = 0; i < 3; ++i)
    motion = std::max(motion, std::abs(matched[i] - start.roots[i]));
  if (motion <= opts.max_motion * sep || depth >= opts.max_subdivision) {
    if (depth >= opts.max_subdivision && motion > 0.9 * sep)
      throw NearDiscriminant("track_roots: subdivision exhausted near a collision");
    RootTriple out;
    out.roots = matched;
    return out;
  }
  UnfoldingValue mid{(a.epsilon + b.epsilon) / 2.0, (a.kappa + b.kappa) / 2};
  const RootTriple half = track_segment(a, mid, start, opts, depth + 1);
  return track_segment(mid, b, half, opts, depth + 1);
}

}  // namespace

RootTriple track_roots(const std::vector<UnfoldingValue>& path,
                       const RootTriple& start, const TrackOptions& opts) {
  if (path.size() < 2) return start;
  RootTriple cur = start;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    cur = track_segment(path[i], path[i + 1], cur, opts, 0);
  return cur;
}

int cycle_intersection(const CycleClass& a, const CycleClass& b) {
  // alpha2 = -alpha0 - alpha1 and (alpha_i, alpha_{i+1}) = 1 give, in the
  // {alpha1, alpha0} coordinates, (a, b) = -a1 b0 + a0 b1
  return -a.c[0] * b.c[1] + a.c[1] * b.c[0];
}

CycleClass cycle_of_pair(int label_a, int label_b) {
  const int s = label_a + label_b;
  if (s == 1) return {{1, 0}};   // {x0, x1} -> alpha1
  if (s == 3) return {{-1, -1}}; // {x1, x2} -> alpha2
  return {{0, 1}};               // {x2, x0} -> alpha0
}

std::vector<UnfoldingValue> builtin_unfolding_loop(int which, double stand_off) {
  if (which < 1 || which > 4)
    throw OutOfRange("builtin_unfolding_loop: loop index must be 1..4");
  const double d = stand_off;
  const double kap = std::cbrt(27.0 * (1 - d) * (1 - d) / 4.0);
  std::vector<UnfoldingValue> path;
  auto arc = [&](Cplx from, Cplx to, double kappa, int n, bool positive) {
    // circular arc about 0 from `from` to `to` (same modulus)
    const double a0 = std::arg(from);
    double a1 = std::arg(to);
    const double r = std::abs(from);
    if (positive && a1 < a0) a1 += 2 * M_PI;
    if (!positive && a1 > a0) a1 -= 2 * M_PI;
    for (int i = 1; i <= n; ++i)
      path.push_back({std::polar(r, a0 + (a1 - a0) * i / n), kappa});
  };
  auto line_kappa = [&](Cplx eps, double k0, double k1, int n) {
    for (int i = 1; i <= n; ++i)
      path.push_back({eps, k0 + (k1 - k0) * i / n});
  };
  auto wind = [&](Cplx center, Cplx from, double kappa, int n) {
    const Cplx rad = from - center;
    for (int i = 1; i <= n; ++i)
      path.push_back(
          {center + rad * std::polar(1.0, 2 * M_PI * double(i) / n), kappa});
  };
  const int n = 24;
  path.push_back({Cplx(1, 0), 0.0});
  switch (which) {
    case 3: {
      line_kappa(Cplx(1, 0), 0.0, -kap, n);
      wind(Cplx(1 - d, 0), Cplx(1, 0), -kap, 2 * n);
      line_kappa(Cplx(1, 0), -kap, 0.0, n);
      break;
    }
    case 4: {
      arc(Cplx(1, 0), Cplx(-1, 0), 0.0, n, false);  // lower half circle
      line_kappa(Cplx(-1, 0), 0.0, -kap, n);
      wind(Cplx(-(1 - d), 0), Cplx(-1, 0), -kap, 2 * n);
      line_kappa(Cplx(-1, 0), -kap, 0.0, n);
      arc(Cplx(-1, 0), Cplx(1, 0), 0.0, n, true);
      break;
    }
    case 2: {
      arc(Cplx(1, 0), Cplx(0, 1), 0.0, n, true);  // quarter turn up
      line_kappa(Cplx(0, 1), 0.0, kap, n);
      wind(Cplx(0, 1 - d), Cplx(0, 1), kap, 2 * n);
      line_kappa(Cplx(0, 1), kap, 0.0, n);
      arc(Cplx(0, 1), Cplx(1, 0), 0.0, n, false);
      break;
    }
    default: {
      arc(Cplx(1, 0), Cplx(0, -1), 0.0, n, false);  // quarter turn down
      line_kappa(Cplx(0, -1), 0.0, kap, n);
      wind(Cplx(0, -(1 - d)), Cplx(0, -1), kap, 2 * n);
      line_kappa(Cplx(0, -1), kap, 0.0, n);
      arc(Cplx(0, -1), Cplx(1, 0), 0.0, n, true);
      break;
    }
  }
  return path;
}

PLResult pl_monodromy(int which) {
  const auto path = builtin_unfolding_loop(which);
  const RootTriple start = base_roots();

  // locate the colliding pair at the point of closest approach
  RootTriple cur = start;
  double best_gap = 1e300;
  std::pair<int, int> pair{0, 1};
  TrackOptions opts;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    cur = track_segment(path[i], path[i + 1], cur, opts, 0);
    const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {1, 2}, {0, 2}}};
    for (const auto& pq : pairs) {
      const double gap = std::abs(cur.roots[pq.first] - cur.roots[pq.second]);
      if (gap < best_gap) {
        best_gap = gap;
        pair = pq;
      }
    }
  }
  // permutation of labels around the full loop
  std::array<int, 3> perm;
  relabel(start.roots, cur.roots, &perm);
  std::array<int, 3> inv;
  for (int i = 0; i < 3; ++i) inv[perm[i]] = i;

  const CycleClass delta = cycle_of_pair(pair.first, pair.second);
  Eigen::Matrix2i N;
  const CycleClass alpha1{{1, 0}}, alpha0{{0, 1}};
  int row = 0;
  for (const CycleClass& a : {alpha1, alpha0}) {
    const int nint = cycle_intersection(a, delta);
    N(row, 0) = a.c[0] - nint * delta.c[0];
    N(row, 1) = a.c[1] - nint * delta.c[1];
    ++row;
  }
  return {N, delta, inv};
}

// ------------------------------------------------------------------- psi

IntegralValue central_critical_value() {
  const double h1 = 2.0 - 3.0 / kTwoTwoThirds;
  return {h1, -h1, (12.0 * kTwoTwoThirds - 1.0) / 16.0};
}

std::array<double, 5> central_reduced_point() {
  const double u3s = 1.0 / (2.0 * kTwoOneThird);
  return {M_PI, u3s, 0.0, u3s, (12.0 * kTwoTwoThirds - 1.0) / 16.0};
}

double psi_eta(double t) {
  const double D = 4.0 * kTwoTwoThirds - 1.0;
  return (2.0 - 3.0 / kTwoTwoThirds) - kTwoTwoThirds * t +
         (4.0 * kTwoTwoThirds / D) * t * t -
         (32.0 * kTwoTwoThirds / (D * D)) * t * t * t;
}

Eigen::Vector3d psi_map(const IntegralValue& v) {
  const double D = 4.0 * kTwoTwoThirds - 1.0;
  const double t = v[2] - central_critical_value()[2];
  return {v[0] + v[1], (v[1] - v[0] + 2.0 * psi_eta(t)) / std::sqrt(D),
          std::pow(2.0, 14.0 / 9.0) * t / std::cbrt(D)};
}

double kappa_scale() {
  const double D = 4.0 * kTwoTwoThirds - 1.0;
  return std::cbrt(D) / std::pow(2.0, 14.0 / 9.0);
}

FiberKind singular_fiber_probe(const IntegralValue& value, double tol) {
  const Eigen::Vector3d w = psi_map(value);
  const UnfoldingValue uv{Cplx(w[0], w[1]), w[2]};
  const auto r = cubic_roots(uv);
  const double scale = std::max(
      {1.0, std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
  int close_pairs = 0;
  for (const auto& [i, j] :
       std::array<std::pair<int, int>, 3>{{{0, 1}, {1, 2}, {0, 2}}})
    if (std::abs(r[i] - r[j]) < tol * scale) ++close_pairs;
  if (close_pairs >= 3) return FiberKind::Central;
  if (close_pairs >= 1) return FiberKind::Pinched;
  return FiberKind::Regular;
}

const char* to_string(FiberKind k) {
  switch (k) {
    case FiberKind::Regular: return "regular-torus";
    case FiberKind::Pinched: return "pinched-torus";
    default: return "central-a2";
  }
}

}  // namespace tcm
