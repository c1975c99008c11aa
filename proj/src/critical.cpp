#include "tcm/critical.hpp"

#include <algorithm>
#include <cmath>

#include "tcm/errors.hpp"
#include "tcm/polyroots.hpp"

namespace tcm {
namespace {

using Cplx = std::complex<double>;
using Matrix6c = Eigen::Matrix<Cplx, 6, 6>;

constexpr double kTwoTwoThirds = 1.5874010519681994;  // 2^(2/3)

bool is_stc_like(const SystemParams& pr) {
  // the eight-family branch structure is derived for the resonant
  // default parameters
  return pr.g == 1.0 && pr.delta2 - pr.delta1 == 1.0 && pr.resonant() &&
         pr.delta1 == 0.5;
}

}  // namespace

std::string to_string(Rank0Type t) {
  switch (t) {
    case Rank0Type::EEE: return "EEE";
    case Rank0Type::EEH: return "EEH";
    case Rank0Type::EHH: return "EHH";
    case Rank0Type::HHH: return "HHH";
    case Rank0Type::EFF: return "EFF";
    default: return "HFF";
  }
}

std::string to_string(Rank1Family f) {
  switch (f) {
    case Rank1Family::L1: return "l1";
    case Rank1Family::L2: return "l2";
    case Rank1Family::L3: return "l3";
    case Rank1Family::L4: return "l4";
    case Rank1Family::L5: return "l5";
    case Rank1Family::L6: return "l6";
    case Rank1Family::L7: return "l7";
    case Rank1Family::L8: return "l8";
    case Rank1Family::HH: return "hh";
    default: return "cstar";
  }
}

std::string to_string(Rank1Type t) {
  switch (t) {
    case Rank1Type::FFR: return "FFR";
    case Rank1Type::EER: return "EER";
    default: return "degenerate";
  }
}

Rank1Family rank1_family_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Rank1Family::CSTAR); ++i) {
    const auto f = static_cast<Rank1Family>(i);
    if (to_string(f) == s) return f;
  }
  throw OutOfRange("unknown rank-1 family: " + s);
}

std::vector<Rank0Point> rank0_classify(const SystemParams& params) {
  params.validate();
  const double g = params.g;
  const double c = 2 * g * g / (params.delta2 - params.delta1);
  const double d1m = params.delta1 - params.omega;
  const double s2g = std::sqrt(2.0) * g;
  const Cplx I(0, 1);

  std::vector<Rank0Point> out;
  for (const auto& sgn : {std::pair{-1, -1}, {1, 1}, {-1, 1}, {1, -1}}) {
    const double su = sgn.first, sv = sgn.second;
    // DX_H1 in the chart (u, ubar, v, vbar, z, zbar) at the fixed point
    Matrix6c M = Matrix6c::Zero();
    M(0, 0) = I * (d1m - c * sv);
    M(0, 2) = I * c * su;
    M(0, 4) = -s2g * su;
    M(1, 1) = -I * (d1m - c * sv);
    M(1, 3) = -I * c * su;
    M(1, 5) = -s2g * su;
    M(2, 0) = I * c * sv;
    M(2, 2) = -I * c * su;
    M(3, 1) = -I * c * sv;
    M(3, 3) = I * c * su;
    M(4, 0) = -s2g;
    M(5, 1) = -s2g;

    Eigen::ComplexEigenSolver<Matrix6c> es(M, false);
    std::array<Cplx, 6> ev;
    for (int i = 0; i < 6; ++i) ev[i] = es.eigenvalues()[i];

    const double scale = std::max(M.norm(), 1e-300);
    const double tol = 1e-9 * scale;
    double min_abs = 1e300, min_gap = 1e300;
    for (int i = 0; i < 6; ++i) {
      min_abs = std::min(min_abs, std::abs(ev[i]));
      for (int j = i + 1; j < 6; ++j)
        min_gap = std::min(min_gap, std::abs(ev[i] - ev[j]));
    }
    if (min_abs < tol || min_gap < tol)
      throw DegenerateLinearization(
          "rank0_classify: eigenvalues not six distinct nonzero values");

    int nE = 0, nH = 0, nC = 0;
    for (const Cplx& l : ev) {
      const bool re0 = std::abs(l.real()) < tol;
      const bool im0 = std::abs(l.imag()) < tol;
      if (re0 && !im0) ++nE;
      else if (!re0 && im0) ++nH;
      else ++nC;
    }
    nE /= 2;  // counted both members of each +- pair
    nH /= 2;
    const int nF = nC / 4;  // quartets
    Rank0Type type;
    if (nE == 3) type = Rank0Type::EEE;
    else if (nE == 2 && nH == 1) type = Rank0Type::EEH;
    else if (nE == 1 && nH == 2) type = Rank0Type::EHH;
    else if (nH == 3) type = Rank0Type::HHH;
    else if (nE == 1 && nF == 1) type = Rank0Type::EFF;
    else if (nH == 1 && nF == 1) type = Rank0Type::HFF;
    else
      throw DegenerateLinearization("rank0_classify: unrecognized eigenvalue pattern");

    PhasePoint fp = PhasePoint::Zero();
    fp[iU3] = su;
    fp[iV3] = sv;
    out.push_back({sgn.first, sgn.second, eval_integrals(fp, params), type, ev});
  }
  return out;
}

// ------------------------------------------------------------------ rank 1

std::pair<double, double> rank1_interval(Rank1Family f) {
  const double t = kTwoTwoThirds, bm = rank1_b_max();
  switch (f) {
    case Rank1Family::L1: return {0.25, t};
    case Rank1Family::L2: return {t, 4.0};
    case Rank1Family::L3:
    case Rank1Family::L4: return {t, bm};
    case Rank1Family::L5: return {0.0, 0.25};
    case Rank1Family::L6: return {-4.0, 0.0};
    case Rank1Family::L7:
    case Rank1Family::L8: return {0.0, 0.25};
    case Rank1Family::HH: return {0.25, 0.25};
    default: return {t, t};
  }
}

double rank1_b_max() {
  // closed radical form, then Newton on 16 b^3 - 8 b^2 + b - 64
  const double r = 48.0 * std::sqrt(5181.0);
  double b = (2.0 + std::cbrt(3455.0 - r) + std::cbrt(3455.0 + r)) / 12.0;
  for (int i = 0; i < 6; ++i) {
    const double f = ((16 * b - 8) * b + 1) * b - 64;
    const double df = (48 * b - 16) * b + 1;
    b -= f / df;
  }
  return b;
}

namespace {

double rank1_a(Rank1Family f, double b) {
  switch (f) {
    case Rank1Family::L3: return -std::sqrt(b * b - 2 * std::sqrt(b));
    case Rank1Family::L4: return std::sqrt(b * b - 2 * std::sqrt(b));
    case Rank1Family::L7: return std::sqrt(b * b + 2 * std::sqrt(b));
    case Rank1Family::L8: return -std::sqrt(b * b + 2 * std::sqrt(b));
    default: return 0.0;
  }
}

/// Representative with phase fixed by z real >= 0; common to the special
/// and general parameterizations.
Rank1Sample build_rank1(double x, double y, const SystemParams& pr) {
  const double g2 = pr.g * pr.g;
  const double u3 = -x * (x + y - (pr.delta1 - pr.omega)) / (2 * g2);
  const double v3 = -y * (x + y - (pr.delta2 - pr.omega)) / (2 * g2);
  const double zz = 2 * g2 / (y * y) -
                    std::pow(x + y - (pr.delta2 - pr.omega), 2) / (2 * g2);
  if (std::abs(u3) > 1.0 || std::abs(v3) > 1.0)
    throw ConstraintViolation("rank-1 point: |u3| or |v3| exceeds 1");
  if (zz < 0.0)
    throw ConstraintViolation("rank-1 point: z zbar negative");
  const double p = std::sqrt(zz);
  Rank1Sample s;
  s.a = 0;
  s.b = 0;
  s.point = PhasePoint::Zero();
  s.point[iU2] = -x * p / (std::sqrt(2.0) * pr.g);
  s.point[iU3] = u3;
  s.point[iV2] = -y * p / (std::sqrt(2.0) * pr.g);
  s.point[iV3] = v3;
  s.point[iP] = p;
  const double k = eval_K(s.point, pr);
  s.reduced = {x > 0 ? 0.0 : M_PI, u3, y > 0 ? 0.0 : M_PI, v3, k};
  return s;
}

}  // namespace

IntegralValue rank1_critical_value(double a, double b) {
  const double kc = 0.5 * (b - 4 * a * a) + 1.0 / ((a - b) * (a - b)) -
                    (1 + 4 * a) * (1 + 4 * a) / 16.0;
  const double h1 = 2 - 0.25 * (1 + 4 * a) * (a - b) * (a - b) +
                    2 * (1 - 2 * a) / (a - b);
  const double h2 = -2 + 0.25 * (1 - 4 * a) * (a + b) * (a + b) +
                    2 * (1 + 2 * a) / (a + b);
  return {h1, h2, kc};
}

Rank1Sample rank1_sample(Rank1Family family, double b,
                         const SystemParams& params) {
  if (!is_stc_like(params))
    throw DomainError("rank1_sample: family parameterization requires the default parameters");
  if (family == Rank1Family::HH) b = 0.25;
  else if (family == Rank1Family::CSTAR) b = kTwoTwoThirds;
  else {
    const auto [lo, hi] = rank1_interval(family);
    if (!(b > lo && b < hi))
      throw OutOfRange("rank1_sample: b outside the family interval");
  }
  const double a = rank1_a(family, b);
  Rank1Sample s = build_rank1(a - b, a + b, params);
  s.family = family;
  s.a = a;
  s.b = b;
  s.critical_value = rank1_critical_value(a, b);
  return s;
}

Rank1Type rank1_classify(const Rank1Sample& sample, const SystemParams& params) {
  // DX of H1^ +- H2^; classified through the even characteristic
  // polynomial l^4 + p2 l^2 + p0, which is stable where the matrices
  // themselves are nilpotent.
  enum MatClass { Imag, Real, Quartet, Zero };
  auto classify_one = [&](double c2sign) {
    Eigen::Matrix4d M =
        reduced_linearization(1.0, c2sign, sample.reduced, params);
    const double scale = std::max(M.norm(), 1e-300);
    M /= scale;
    const double p0 = M.determinant();
    double p2 = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        p2 += M(i, i) * M(j, j) - M(i, j) * M(j, i);
    if (std::abs(p0) < 1e-12) return Zero;
    // repeated eigenvalue pairs make the discriminant vanish identically;
    // only a clearly negative value signals a genuine quartet
    const double disc = p2 * p2 - 4 * p0;
    if (disc < -1e-9 * std::max(1.0, p2 * p2)) return Quartet;
    const double sq = std::sqrt(std::max(disc, 0.0));
    const double s1 = (-p2 + sq) / 2;
    const double s2 = (-p2 - sq) / 2;
    if (std::abs(s1) < 1e-12 || std::abs(s2) < 1e-12) return Zero;
    if (s1 < 0 && s2 < 0) return Imag;
    if (s1 > 0 && s2 > 0) return Real;
    return Quartet;  // one pair imaginary, one real within a single matrix
  };
  const MatClass plus = classify_one(1.0);
  const MatClass minus = classify_one(-1.0);
  if (plus == Zero || minus == Zero) return Rank1Type::Degenerate;
  if (plus == Imag && minus == Imag) return Rank1Type::EER;
  return Rank1Type::FFR;
}

double rank1_relation_residual(double x, double y, const SystemParams& pr) {
  const double g4 = std::pow(pr.g, 4);
  return 4 * g4 * (x * x - y * y) +
         (pr.delta2 - pr.delta1) * x * x * y * y *
             (2 * (x + y) - (pr.delta1 + pr.delta2 - 2 * pr.omega));
}

std::optional<Rank1Sample> rank1_general(double x, double y,
                                         const SystemParams& params) {
  params.validate();
  const double res = rank1_relation_residual(x, y, params);
  const double scale = std::max({1.0, x * x, y * y});
  if (std::abs(res) > 1e-10 * scale)
    throw RelationViolated("rank1_general: (x, y) do not satisfy the multiplier relation");
  Rank1Sample s;
  try {
    s = build_rank1(x, y, params);
  } catch (const ConstraintViolation&) {
    return std::nullopt;
  }
  const double dd = params.delta2 - params.delta1;
  const double g2 = params.g * params.g;
  const double h1 = -2 * g2 * (y - dd) / (dd * x) -
                    x * x * (x + y - (params.delta1 - params.omega)) / (2 * g2);
  const double h2 = 2 * g2 * (x + dd) / (dd * y) -
                    y * y * (x + y - (params.delta2 - params.omega)) / (2 * g2);
  s.critical_value = {h1, h2, eval_K(s.point, params)};
  s.a = (x + y) / 2;
  s.b = (y - x) / 2;
  return s;
}

// ------------------------------------------------------------------ rank 2

std::array<double, 4> rank2_cubic(double x, double y, double C, double K,
                                  double g) {
  const double g2 = g * g, g4 = g2 * g2;
  const double a3 = -4 * g2 * x * x * y * (x - y);
  const double a2 = -4 * C * C * g4 * x * x * y * y + 8 * C * g2 * x * x * y -
                    4 * C * g2 * x * y * y - 4 * g2 * K * x * x * y * y -
                    (x - y) * (x - y);
  const double a1 =
      2 * (2 * C * C * C * g4 * x * y * y - 3 * C * C * g2 * x * y +
           C * C * g2 * y * y + 2 * C * g4 * x * x * x * y * y -
           2 * C * g4 * x * y * y * y * y + 2 * C * g2 * K * x * y * y + C * x -
           C * y + g2 * x * x * x * y - g2 * x * x * y * y + g2 * x * y * y * y -
           g2 * y * y * y * y - K * x * y + K * y * y);
  const double a0 =
      -std::pow(C, 4) * g4 * y * y + 2 * std::pow(C, 3) * g2 * y -
      2 * C * C * g4 * x * x * y * y + 2 * C * C * g4 * std::pow(y, 4) -
      2 * C * C * g2 * K * y * y - C * C - 2 * C * g2 * x * x * y -
      2 * C * g2 * y * y * y + 2 * C * K * y - g4 * std::pow(x, 4) * y * y +
      2 * g4 * x * x * std::pow(y, 4) - g4 * std::pow(y, 6) +
      2 * g2 * K * x * x * y * y + 2 * g2 * K * std::pow(y, 4) - K * K * y * y;
  return {a0, a1, a2, a3};
}

namespace {

struct SliceContext {
  double k;
  SystemParams pr;

  double y_of(double x) const { return x / (1 + x * (pr.delta2 - pr.delta1)); }
  double C_of(double x) const {
    return ((pr.delta1 - pr.omega) - 1.0 / x) / (2 * pr.g * pr.g);
  }

  bool admissible(double x) const {
    const double pole = -1.0 / (pr.delta2 - pr.delta1);
    if (x == 0.0 || x == pole) return false;
    const double y = y_of(x);
    if (y == 0.0 || !std::isfinite(y)) return false;
    const auto [a0, a1, a2, a3] = rank2_cubic(x, y, C_of(x), k, pr.g);
    return sturm_count_interval({a0, a1, a2, a3}, -1.0, 1.0) == 2;
  }

  Rank2Sample sample_at(double x) const {
    const double dd = pr.delta2 - pr.delta1;
    const double g2 = pr.g * pr.g;
    const double y = y_of(x), C = C_of(x);
    const double h1 =
        (-k / (x * x) - C * C * g2 / (x * x) + C / (x * x * y) +
         g2 * (y * y / (x * x) + 2 * x / y - 1)) / dd;
    const double h2 =
        -(-k / (y * y) - C * C * g2 / (y * y) + C / (x * y * y) +
          g2 * (x * x / (y * y) + 2 * y / x - 1)) / dd;
    return {k, x, y, C, h1, h2};
  }
};

}  // namespace

std::vector<Rank2Sample> rank2_slice(double k, const SystemParams& params,
                                     int n_samples) {
  params.validate();
  if (k <= -2.0) return {};
  SliceContext ctx{k, params};

  // linear band for bulk coverage plus log-spaced clusters near x = 0 and
  // near the pole of y(x); admissibility boundaries get bisected below
  std::vector<double> grid;
  const int half = std::max(n_samples / 2, 32);
  const int eighth = std::max(n_samples / 8, 16);
  for (int i = 0; i <= half; ++i) grid.push_back(-8.0 + 16.0 * i / half);
  const double lo = 1e-3, hi = 64.0;
  for (int i = 0; i < eighth; ++i) {
    const double m = lo * std::pow(hi / lo, double(i) / (eighth - 1));
    grid.push_back(m);
    grid.push_back(-m);
  }
  const double pole = -1.0 / (params.delta2 - params.delta1);
  for (int i = 0; i < eighth; ++i) {
    const double m = 1e-4 * std::pow(1.0 / 1e-4, double(i) / (eighth - 1));
    grid.push_back(pole + m);
    grid.push_back(pole - m);
  }
  std::sort(grid.begin(), grid.end());

  std::vector<Rank2Sample> out;
  bool prev_ok = false;
  bool have_prev = false;
  double prev_x = 0;
  for (double x : grid) {
    const bool ok = ctx.admissible(x);
    if (have_prev && ok != prev_ok) {
      // bisect the admissibility boundary, keep a point on the accepted side
      double a = prev_x, b = x;
      for (int it = 0; it < 48; ++it) {
        const double m = 0.5 * (a + b);
        if (ctx.admissible(m) == prev_ok) a = m;
        else b = m;
      }
      const double edge = prev_ok ? a : b;
      if (ctx.admissible(edge)) out.push_back(ctx.sample_at(edge));
    }
    if (ok) out.push_back(ctx.sample_at(x));
    prev_ok = ok;
    prev_x = x;
    have_prev = true;
  }
  return out;
}

// ------------------------------------------------------- diagram assembly

std::vector<Rank1SlicePoint> rank1_points_at_k(double k,
                                               const SystemParams& params) {
  std::vector<Rank1SlicePoint> out;
  const Rank1Family fams[] = {Rank1Family::L1, Rank1Family::L2, Rank1Family::L3,
                              Rank1Family::L4, Rank1Family::L5, Rank1Family::L6,
                              Rank1Family::L7, Rank1Family::L8};
  for (Rank1Family f : fams) {
    const auto [lo, hi] = rank1_interval(f);
    const int n = 4000;
    const double pad = (hi - lo) * 1e-9;
    auto kc = [&](double b) { return rank1_critical_value(rank1_a(f, b), b)[2]; };
    double bp = lo + pad, vp = kc(bp) - k;
    for (int i = 1; i <= n; ++i) {
      const double b = lo + pad + (hi - lo - 2 * pad) * double(i) / n;
      const double v = kc(b) - k;
      if (vp == 0.0 || vp * v < 0) {
        double A = bp, B = b;
        for (int it = 0; it < 80; ++it) {
          const double m = 0.5 * (A + B);
          if ((kc(m) - k) * vp <= 0) B = m;
          else A = m;
        }
        const double broot = 0.5 * (A + B);
        const Rank1Sample s = rank1_sample(f, broot, params);
        out.push_back({f, broot, s.critical_value, rank1_classify(s, params)});
      }
      bp = b;
      vp = v;
    }
  }
  // the two isolated degenerate points
  for (Rank1Family f : {Rank1Family::HH, Rank1Family::CSTAR}) {
    const Rank1Sample s = rank1_sample(f, 0.0, params);
    if (std::abs(s.critical_value[2] - k) < 1e-9)
      out.push_back({f, s.b, s.critical_value, rank1_classify(s, params)});
  }
  return out;
}

BifurcationDiagram bifurcation_diagram(const std::vector<double>& k_values,
                                       const SystemParams& params,
                                       int n_samples, int thread_samples) {
  BifurcationDiagram d;
  for (double k : k_values) {
    BifurcationSlice slice;
    slice.k = k;
    if (k < -2.0) throw OutOfRange("bifurcation_diagram: k < -2 is outside the momentum image");
    slice.rank2 = rank2_slice(k, params, n_samples);
    slice.rank1 = rank1_points_at_k(k, params);
    for (const Rank0Point& r : rank0_classify(params))
      if (std::abs(r.critical_value[2] - k) < 1e-12) slice.rank0.push_back(r);
    d.slices.push_back(std::move(slice));
  }
  const Rank1Family fams[] = {Rank1Family::L1, Rank1Family::L2, Rank1Family::L3,
                              Rank1Family::L4, Rank1Family::L5, Rank1Family::L6,
                              Rank1Family::L7, Rank1Family::L8};
  for (Rank1Family f : fams) {
    ThreadPolyline t;
    t.family = f;
    const auto [lo, hi] = rank1_interval(f);
    const double pad = (hi - lo) * 1e-7;
    for (int i = 0; i <= thread_samples; ++i) {
      const double b = lo + pad + (hi - lo - 2 * pad) * double(i) / thread_samples;
      t.b.push_back(b);
      t.values.push_back(rank1_critical_value(rank1_a(f, b), b));
    }
    d.threads.push_back(std::move(t));
  }
  return d;
}

}  // namespace tcm
