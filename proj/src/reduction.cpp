#include "tcm/reduction.hpp"

#include <map>

#include "tcm/errors.hpp"

namespace tcm {

InvariantPoint invariants_of(const PhasePoint& x) {
  const double u1 = x[iU1], u2 = x[iU2], v1 = x[iV1], v2 = x[iV2];
  const double q = x[iQ], p = x[iP];
  InvariantPoint X;
  X.k = x[iU3] + x[iV3] + 0.5 * (p * p + q * q);
  X.u3 = x[iU3];
  X.v3 = x[iV3];
  X.X1 = p * v1 + q * v2;   // v zbar
  X.Y1 = -q * v1 + p * v2;
  X.X2 = p * u1 + q * u2;   // z ubar
  X.Y2 = q * u1 - p * u2;
  X.X3 = u1 * v1 + u2 * v2; // u vbar
  X.Y3 = u2 * v1 - u1 * v2;
  return X;
}

std::array<double, 9> syzygies(const InvariantPoint& X) {
  const double r = X.k - X.u3 - X.v3;  // = |z|^2/2 on the image
  const double mu = 1 - X.u3 * X.u3, mv = 1 - X.v3 * X.v3;
  return {
      X.X1 * X.X1 + X.Y1 * X.Y1 - 2 * mv * r,
      X.X2 * X.X2 + X.Y2 * X.Y2 - 2 * mu * r,
      X.X3 * X.X3 + X.Y3 * X.Y3 - mv * mu,
      X.X1 * X.X3 - X.Y1 * X.Y3 - mv * X.X2,
      X.X1 * X.Y3 + X.X3 * X.Y1 + mv * X.Y2,
      X.X2 * X.X3 - X.Y2 * X.Y3 - mu * X.X1,
      X.X2 * X.Y3 + X.X3 * X.Y2 + mu * X.Y1,
      X.X1 * X.X2 - X.Y1 * X.Y2 - 2 * r * X.X3,
      X.X1 * X.Y2 + X.X2 * X.Y1 + 2 * r * X.Y3,
  };
}

double invariant_component(const InvariantPoint& X, Inv a) {
  switch (a) {
    case Inv::K: return X.k;
    case Inv::U3: return X.u3;
    case Inv::V3: return X.v3;
    case Inv::X1: return X.X1;
    case Inv::Y1: return X.Y1;
    case Inv::X2: return X.X2;
    case Inv::Y2: return X.Y2;
    case Inv::X3: return X.X3;
    default: return X.Y3;
  }
}

double poisson_table_bracket(Inv a, Inv b, const InvariantPoint& X) {
  if (a == b) return 0.0;
  if (static_cast<int>(a) > static_cast<int>(b))
    return -poisson_table_bracket(b, a, X);

  const double r = X.k - X.u3 - X.v3;
  const double A = 2 * X.v3 * r + 1 - X.v3 * X.v3;
  const double B = 2 * X.u3 * r + 1 - X.u3 * X.u3;
  const double C = X.u3 * (1 - X.v3 * X.v3) - (1 - X.u3 * X.u3) * X.v3;

  auto pair = [&](Inv p, Inv q) { return a == p && b == q; };
  if (a == Inv::K) return 0.0;
  if (pair(Inv::U3, Inv::X2)) return -X.Y2;
  if (pair(Inv::U3, Inv::Y2)) return X.X2;
  if (pair(Inv::U3, Inv::X3)) return X.Y3;
  if (pair(Inv::U3, Inv::Y3)) return -X.X3;
  if (pair(Inv::V3, Inv::X1)) return X.Y1;
  if (pair(Inv::V3, Inv::Y1)) return -X.X1;
  if (pair(Inv::V3, Inv::X3)) return -X.Y3;
  if (pair(Inv::V3, Inv::Y3)) return X.X3;
  if (pair(Inv::X1, Inv::Y1)) return A;
  if (pair(Inv::X1, Inv::X2)) return -X.Y3;
  if (pair(Inv::X1, Inv::Y2)) return -X.X3;
  if (pair(Inv::X1, Inv::X3)) return -X.v3 * X.Y2;
  if (pair(Inv::X1, Inv::Y3)) return -X.v3 * X.X2;
  if (pair(Inv::Y1, Inv::X2)) return -X.X3;
  if (pair(Inv::Y1, Inv::Y2)) return X.Y3;
  if (pair(Inv::Y1, Inv::X3)) return -X.v3 * X.X2;
  if (pair(Inv::Y1, Inv::Y3)) return X.v3 * X.Y2;
  if (pair(Inv::X2, Inv::Y2)) return -B;
  if (pair(Inv::X2, Inv::X3)) return X.u3 * X.Y1;
  if (pair(Inv::X2, Inv::Y3)) return X.u3 * X.X1;
  if (pair(Inv::Y2, Inv::X3)) return X.u3 * X.X1;
  if (pair(Inv::Y2, Inv::Y3)) return -X.u3 * X.Y1;
  if (pair(Inv::X3, Inv::Y3)) return C;
  return 0.0;
}

double poisson_table_bracket(const std::string& a, const std::string& b,
                             const InvariantPoint& X) {
  static const std::map<std::string, Inv> names = {
      {"K", Inv::K},   {"u3", Inv::U3}, {"v3", Inv::V3},
      {"X1", Inv::X1}, {"Y1", Inv::Y1}, {"X2", Inv::X2},
      {"Y2", Inv::Y2}, {"X3", Inv::X3}, {"Y3", Inv::Y3}};
  const auto ia = names.find(a), ib = names.find(b);
  if (ia == names.end() || ib == names.end())
    throw UnknownInvariant("poisson_table_bracket: unknown invariant name");
  return poisson_table_bracket(ia->second, ib->second, X);
}

std::pair<double, double> reduced_hamiltonians(const ReducedPoint& R,
                                               const SystemParams& params) {
  if (R.k - R.u3 - R.v3 <= 0.0)
    throw DomainError("reduced_hamiltonians: k - u3 - v3 <= 0");
  if (std::abs(R.u3) >= 1.0 || std::abs(R.v3) >= 1.0)
    throw DomainError("reduced_hamiltonians: |u3| or |v3| not < 1");
  return {reduced_H(1, R.theta_u, R.u3, R.theta_v, R.v3, R.k, params),
          reduced_H(2, R.theta_u, R.u3, R.theta_v, R.v3, R.k, params)};
}

namespace {

struct Chart {
  double A, Ap, App;     // sqrt(1-u3^2) and u3-derivatives
  double Bv, Bp, Bpp;    // sqrt(1-v3^2) and v3-derivatives
  double S, Sd, Sdd;     // sqrt(k-u3-v3); d/du3 = d/dv3 = Sd
  double cu, su, cv, sv; // cos/sin of theta_u, theta_v
  double cd, sd;         // cos/sin of theta_u - theta_v
};

Chart chart(const ReducedPoint& R) {
  Chart c;
  c.A = std::sqrt(1 - R.u3 * R.u3);
  c.Ap = -R.u3 / c.A;
  c.App = -1.0 / (c.A * c.A * c.A);
  c.Bv = std::sqrt(1 - R.v3 * R.v3);
  c.Bp = -R.v3 / c.Bv;
  c.Bpp = -1.0 / (c.Bv * c.Bv * c.Bv);
  c.S = std::sqrt(R.k - R.u3 - R.v3);
  c.Sd = -0.5 / c.S;
  c.Sdd = -0.25 / (c.S * c.S * c.S);
  c.cu = std::cos(R.theta_u);
  c.su = std::sin(R.theta_u);
  c.cv = std::cos(R.theta_v);
  c.sv = std::sin(R.theta_v);
  c.cd = std::cos(R.theta_u - R.theta_v);
  c.sd = std::sin(R.theta_u - R.theta_v);
  return c;
}

// coordinate order (theta_u, u3, theta_v, v3)
void add_T1(const Chart& c, double w, Eigen::Vector4d& g, Eigen::Matrix4d& h) {
  // A * S * cos(theta_u)
  g[0] += w * (-c.A * c.S * c.su);
  g[1] += w * ((c.Ap * c.S + c.A * c.Sd) * c.cu);
  g[3] += w * (c.A * c.Sd * c.cu);
  h(0, 0) += w * (-c.A * c.S * c.cu);
  h(0, 1) += w * (-(c.Ap * c.S + c.A * c.Sd) * c.su);
  h(0, 3) += w * (-c.A * c.Sd * c.su);
  h(1, 1) += w * ((c.App * c.S + 2 * c.Ap * c.Sd + c.A * c.Sdd) * c.cu);
  h(1, 3) += w * ((c.Ap * c.Sd + c.A * c.Sdd) * c.cu);
  h(3, 3) += w * (c.A * c.Sdd * c.cu);
}

void add_T1v(const Chart& c, double w, Eigen::Vector4d& g, Eigen::Matrix4d& h) {
  // B * S * cos(theta_v)
  g[1] += w * (c.Bv * c.Sd * c.cv);
  g[2] += w * (-c.Bv * c.S * c.sv);
  g[3] += w * ((c.Bp * c.S + c.Bv * c.Sd) * c.cv);
  h(1, 1) += w * (c.Bv * c.Sdd * c.cv);
  h(1, 2) += w * (-c.Bv * c.Sd * c.sv);
  h(1, 3) += w * ((c.Bp * c.Sd + c.Bv * c.Sdd) * c.cv);
  h(2, 2) += w * (-c.Bv * c.S * c.cv);
  h(2, 3) += w * (-(c.Bp * c.S + c.Bv * c.Sd) * c.sv);
  h(3, 3) += w * ((c.Bpp * c.S + 2 * c.Bp * c.Sd + c.Bv * c.Sdd) * c.cv);
}

void add_T2(const Chart& c, double w, Eigen::Vector4d& g, Eigen::Matrix4d& h) {
  // A * B * cos(theta_u - theta_v)
  g[0] += w * (-c.A * c.Bv * c.sd);
  g[1] += w * (c.Ap * c.Bv * c.cd);
  g[2] += w * (c.A * c.Bv * c.sd);
  g[3] += w * (c.A * c.Bp * c.cd);
  h(0, 0) += w * (-c.A * c.Bv * c.cd);
  h(0, 1) += w * (-c.Ap * c.Bv * c.sd);
  h(0, 2) += w * (c.A * c.Bv * c.cd);
  h(0, 3) += w * (-c.A * c.Bp * c.sd);
  h(1, 1) += w * (c.App * c.Bv * c.cd);
  h(1, 2) += w * (c.Ap * c.Bv * c.sd);
  h(1, 3) += w * (c.Ap * c.Bp * c.cd);
  h(2, 2) += w * (-c.A * c.Bv * c.cd);
  h(2, 3) += w * (c.A * c.Bp * c.sd);
  h(3, 3) += w * (c.A * c.Bpp * c.cd);
}

void add_T3(double w, Eigen::Vector4d& g, Eigen::Matrix4d& h,
            const ReducedPoint& R) {
  g[1] += w * R.v3;
  g[3] += w * R.u3;
  h(1, 3) += w;
}

void grad_hess(int which, const ReducedPoint& R, const SystemParams& pr,
               Eigen::Vector4d& g, Eigen::Matrix4d& h) {
  const Chart c = chart(R);
  const double cc = 2 * pr.g * pr.g / (pr.delta2 - pr.delta1);
  g.setZero();
  h.setZero();
  if (which == 1) {
    g[1] += pr.delta1 - pr.omega;
    add_T1(c, 2 * pr.g, g, h);
    add_T2(c, -cc, g, h);
    add_T3(-cc, g, h, R);
  } else {
    g[3] += pr.delta2 - pr.omega;
    add_T1v(c, 2 * pr.g, g, h);
    add_T2(c, cc, g, h);
    add_T3(cc, g, h, R);
  }
  h = h.selfadjointView<Eigen::Upper>();
}

}  // namespace

Eigen::Vector4d reduced_H_gradient(int which, const ReducedPoint& R,
                                   const SystemParams& params) {
  Eigen::Vector4d g;
  Eigen::Matrix4d h;
  grad_hess(which, R, params, g, h);
  return g;
}

Eigen::Matrix4d reduced_H_hessian(int which, const ReducedPoint& R,
                                  const SystemParams& params) {
  Eigen::Vector4d g;
  Eigen::Matrix4d h;
  grad_hess(which, R, params, g, h);
  return h;
}

Eigen::Matrix4d reduced_linearization(double c1, double c2,
                                      const ReducedPoint& R,
                                      const SystemParams& params) {
  const Eigen::Matrix4d H = c1 * reduced_H_hessian(1, R, params) +
                            c2 * reduced_H_hessian(2, R, params);
  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  J(0, 1) = 1;
  J(1, 0) = -1;
  J(2, 3) = 1;
  J(3, 2) = -1;
  return J * H;
}

DelzantPolygon delzant_polygon(double k) {
  if (k < -2.0) throw OutOfRange("delzant_polygon: empty reduced space, k < -2");
  if (k == -2.0 || k == 0.0 || k == 2.0)
    throw SingularReducedSpace("delzant_polygon: reduced space singular at k in {-2,0,2}");
  DelzantPolygon P;
  if (k < 0.0) {
    P.vertices = {{k + 1, -1}, {-1, k + 1}, {-1, -1}};
  } else if (k < 2.0) {
    P.vertices = {{k - 1, 1}, {1, k - 1}, {1, -1}, {-1, 1}, {-1, -1}};
  } else {
    P.vertices = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  }
  return P;
}

}  // namespace tcm
