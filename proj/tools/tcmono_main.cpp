// Command-line front end: emits machine-readable data for the
// bifurcation diagram, monodromy loops, the cusp-unfolding checks, the
// spectral-pair audits, flows, and the reduced-space polytopes.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "tcm/critical.hpp"
#include "tcm/errors.hpp"
#include "tcm/fiber.hpp"
#include "tcm/flow.hpp"
#include "tcm/jsonio.hpp"
#include "tcm/lax.hpp"
#include "tcm/monodromy.hpp"
#include "tcm/normal_form.hpp"
#include "tcm/reduction.hpp"
#include "tcm/unfolding.hpp"

namespace {

using tcm::Json;

struct GlobalOpts {
  std::vector<double> params{0.5, 1.5, 1.0, 1.0};
  std::uint64_t seed = 12345;
  double tol = 1e-12;
  std::string out;
  std::string format = "json";
};

tcm::SystemParams to_params(const GlobalOpts& g) {
  tcm::SystemParams p{g.params[0], g.params[1], g.params[2], g.params[3]};
  p.validate();
  return p;
}

int max_threads() {
  if (const char* env = std::getenv("MONODROMY_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw tcm::Error("cannot open output file: " + g.out);
  f << text << "\n";
}

Json params_json(const tcm::SystemParams& p) {
  Json j;
  j["delta1"] = p.delta1;
  j["delta2"] = p.delta2;
  j["omega"] = p.omega;
  j["g"] = p.g;
  return j;
}

// ------------------------------------------------------------------ bifdiag

Json slice_json(const tcm::BifurcationSlice& s) {
  Json j;
  j["k"] = s.k;
  Json r2 = Json::array();
  for (const auto& p : s.rank2) r2.push_back(Json::array({p.h1, p.h2}));
  j["rank2"] = r2;
  Json r1 = Json::array();
  for (const auto& p : s.rank1) {
    Json q;
    q["family"] = tcm::to_string(p.family);
    q["b"] = p.b;
    q["h1"] = p.value[0];
    q["h2"] = p.value[1];
    q["k"] = p.value[2];
    q["type"] = tcm::to_string(p.type);
    r1.push_back(q);
  }
  j["rank1"] = r1;
  Json r0 = Json::array();
  for (const auto& p : s.rank0) {
    Json q;
    q["sigma_u"] = p.sigma_u;
    q["sigma_v"] = p.sigma_v;
    q["h1"] = p.critical_value[0];
    q["h2"] = p.critical_value[1];
    q["k"] = p.critical_value[2];
    q["type"] = tcm::to_string(p.type);
    r0.push_back(q);
  }
  j["rank0"] = r0;
  return j;
}

int cmd_bifdiag(const GlobalOpts& g, const std::vector<double>& ks, int samples) {
  const tcm::SystemParams pr = to_params(g);
  // slices are independent; compute them on a capped pool
  std::vector<tcm::BifurcationSlice> slices(ks.size());
  const int pool = std::min<int>(max_threads(), static_cast<int>(ks.size()));
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  std::atomic<bool> failed{false};
  std::string error_text;
  std::mutex err_mu;
  for (int w = 0; w < pool; ++w)
    workers.emplace_back([&] {
      for (size_t i = next++; i < ks.size(); i = next++) {
        try {
          auto d = tcm::bifurcation_diagram({ks[i]}, pr, samples, 2);
          slices[i] = std::move(d.slices[0]);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lk(err_mu);
          failed = true;
          error_text = e.what();
        }
      }
    });
  for (auto& t : workers) t.join();
  if (failed) throw tcm::Error(error_text);

  if (g.format == "csv") {
    std::ostringstream os;
    os << "k,h1,h2,source,label\n";
    for (const auto& s : slices) {
      for (const auto& p : s.rank2)
        os << s.k << "," << p.h1 << "," << p.h2 << ",rank2,\n";
      for (const auto& p : s.rank1)
        os << s.k << "," << p.value[0] << "," << p.value[1] << ",rank1,"
           << tcm::to_string(p.family) << "\n";
      for (const auto& p : s.rank0)
        os << s.k << "," << p.critical_value[0] << "," << p.critical_value[1]
           << ",rank0," << tcm::to_string(p.type) << "\n";
    }
    std::string text = os.str();
    text.pop_back();
    emit(g, text);
    return 0;
  }

  const auto threads = tcm::bifurcation_diagram({}, pr, samples, 256).threads;
  Json j = tcm::report_skeleton("bifdiag");
  j["params"] = params_json(pr);
  Json sl = Json::array();
  for (const auto& s : slices) sl.push_back(slice_json(s));
  j["slices"] = sl;
  Json th = Json::array();
  for (const auto& t : threads) {
    Json q;
    q["family"] = tcm::to_string(t.family);
    Json pts = Json::array();
    for (const auto& v : t.values) pts.push_back(tcm::json_value3(v));
    q["points"] = pts;
    th.push_back(q);
  }
  j["threads"] = th;
  emit(g, j.dump(2));
  return 0;
}

// ---------------------------------------------------------------- monodromy

Json basis_json(const tcm::PeriodBasis& B) {
  Json j;
  j["T1"] = tcm::json_value3(B.T1);
  j["T2"] = tcm::json_value3(B.T2);
  j["T3"] = tcm::json_value3(B.T3);
  return j;
}

int cmd_monodromy(const GlobalOpts& g, const std::string& loop_name,
                  const std::vector<double>& base_v, double radius,
                  const std::string& waypoint_file) {
  const tcm::SystemParams pr = to_params(g);
  const tcm::IntegralValue base{base_v[0], base_v[1], base_v[2]};

  tcm::FiberSolveOptions fopts;
  fopts.seed = g.seed;
  const tcm::FiberPoint fp = tcm::solve_fiber_point(base, pr, fopts);

  tcm::PeriodBasis basis;
  if ((base - tcm::default_base_value()).norm() < 1e-12) {
    basis = tcm::solve_period_basis(fp, tcm::default_basis_guess_T2(),
                                    tcm::default_basis_guess_T3(), pr);
  } else {
    const auto cands = tcm::find_period_guesses(fp, pr);
    if (cands.size() < 2)
      throw tcm::NoConvergence("monodromy: could not seed a period basis here");
    basis = tcm::solve_period_basis(fp, cands[0], cands[1], pr);
  }

  tcm::LoopSpec loop;
  if (loop_name == "custom") {
    if (waypoint_file.empty())
      throw tcm::DomainError("monodromy: custom loop needs --waypoints");
    std::ifstream in(waypoint_file);
    if (!in) throw tcm::Error("cannot read waypoint file: " + waypoint_file);
    loop.base = base;
    double a, b, c;
    while (in >> a >> b >> c) loop.waypoints.push_back({a, b, c});
  } else {
    const tcm::BuiltinLoop which =
        loop_name == "gamma1"   ? tcm::BuiltinLoop::Gamma1
        : loop_name == "gamma2" ? tcm::BuiltinLoop::Gamma2
        : loop_name == "gamma3" ? tcm::BuiltinLoop::Gamma3
                                : tcm::BuiltinLoop::Gamma4;
    loop = tcm::builtin_loop(which, pr, radius, base);
  }

  const tcm::PeriodBasis after = tcm::continue_basis(basis, fp, loop, pr);
  const Eigen::Matrix3d raw = after.matrix() * basis.matrix().inverse();
  const tcm::MonodromyMatrix M = tcm::monodromy_matrix(basis, after);
  const tcm::MonodromyMatrix conj = tcm::change_basis(M, tcm::standard_basis_change());

  Json j = tcm::report_skeleton("monodromy");
  j["params"] = params_json(pr);
  j["loop"] = loop_name;
  j["base"] = tcm::json_value3(base);
  j["basis_before"] = basis_json(basis);
  j["basis_after"] = basis_json(after);
  j["matrix_raw"] = tcm::json_matrix(raw);
  j["residual"] = M.residual;
  j["matrix"] = tcm::json_matrix(M.m);
  j["matrix_conjugated"] = tcm::json_matrix(conj.m);
  j["reduced_block"] = tcm::json_matrix(tcm::reduced_monodromy(conj));
  emit(g, j.dump(2));
  return 0;
}

// ----------------------------------------------------------------------- a2

int cmd_a2(const GlobalOpts& g, int loop, bool verify_nf) {
  Json j = tcm::report_skeleton("a2");
  if (verify_nf) {
    const tcm::NormalFormReport rep = tcm::verify_normal_form(to_params(g));
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
      Json q;
      q["name"] = c.name;
      q["got"] = c.got;
      q["expected"] = c.expected;
      q["pass"] = c.pass;
      checks.push_back(q);
    }
    j["normal_form"] = checks;
    j["a11"] = rep.a11;
    j["a21"] = rep.a21;
    j["b11"] = rep.b11;
    j["b12"] = rep.b12;
    j["kappa_scale"] = rep.scale;
    j["all_pass"] = rep.all_pass;
    emit(g, j.dump(2));
    return rep.all_pass ? 0 : 1;
  }
  const tcm::PLResult r = tcm::pl_monodromy(loop);
  j["loop"] = loop;
  j["matrix"] = tcm::json_matrix(r.matrix);
  j["vanishing_cycle"] = Json::array({r.vanishing.c[0], r.vanishing.c[1]});
  j["permutation"] = Json::array(
      {r.permutation[0], r.permutation[1], r.permutation[2]});
  emit(g, j.dump(2));
  return 0;
}

// ------------------------------------------------------------------ lax-check

int cmd_lax(const GlobalOpts& g, double time, int samples) {
  const tcm::SystemParams pr = to_params(g);
  std::mt19937_64 rng(g.seed);
  const tcm::PhasePoint x = tcm::random_phase_point(rng);

  Json j = tcm::report_skeleton("lax-check");
  j["params"] = params_json(pr);
  bool ok = true;

  const double lax_resid = tcm::lax_equation_residual(x, pr, time, samples);
  j["lax_equation_residual"] = lax_resid;
  ok = ok && lax_resid < 1e-7;

  const tcm::SpectralPolynomial q0 = tcm::spectral_poly(x, pr);
  const tcm::PhasePoint xt =
      tcm::flow({{1.0, 1.0, pr.omega}, time, g.tol, 4000000}, x, pr);
  const tcm::SpectralPolynomial q1 = tcm::spectral_poly(xt, pr);
  double drift = 0.0;
  for (int i = 0; i < 7; ++i)
    drift = std::max(drift, std::abs(q0.coeffs[i] - q1.coeffs[i]));
  j["q6_coefficient_drift"] = drift;
  ok = ok && drift < 1e-8;

  const tcm::TripleRootReport tr =
      tcm::triple_root_check(tcm::central_critical_value(), pr);
  Json t;
  t["a0"] = tr.a0;
  t["a1"] = tr.a1;
  t["residual"] = tr.residual;
  t["multiplicities"] = tr.multiplicities;
  j["central_triple_root"] = t;
  ok = ok && tr.residual < 1e-10;

  j["all_pass"] = ok;
  emit(g, j.dump(2));
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- flow/fiber

int cmd_flow(const GlobalOpts& g, const std::vector<double>& coeffs,
             double duration, std::vector<double> point) {
  const tcm::SystemParams pr = to_params(g);
  tcm::PhasePoint x;
  if (point.empty()) {
    std::mt19937_64 rng(g.seed);
    x = tcm::random_phase_point(rng);
  } else {
    if (point.size() != 8) throw tcm::DomainError("flow: --point needs 8 values");
    for (int i = 0; i < 8; ++i) x[i] = point[i];
    tcm::project_spheres(x);
  }
  const tcm::IntegralValue before = tcm::eval_integrals(x, pr);
  const tcm::PhasePoint y =
      tcm::flow({{coeffs[0], coeffs[1], coeffs[2]}, duration, g.tol, 4000000},
                x, pr);
  const tcm::IntegralValue after = tcm::eval_integrals(y, pr);

  Json j = tcm::report_skeleton("flow");
  j["params"] = params_json(pr);
  j["coeffs"] = Json::array({coeffs[0], coeffs[1], coeffs[2]});
  j["duration"] = duration;
  j["initial"] = tcm::json_vec(x);
  j["final"] = tcm::json_vec(y);
  j["integral_drift"] = tcm::json_value3((after - before).cwiseAbs());
  j["sphere_residual"] = tcm::sphere_residual(y);
  const bool ok = (after - before).cwiseAbs().maxCoeff() < 1e-9;
  j["all_pass"] = ok;
  emit(g, j.dump(2));
  return ok ? 0 : 1;
}

int cmd_fiber(const GlobalOpts& g, const std::vector<double>& target_v) {
  const tcm::SystemParams pr = to_params(g);
  tcm::FiberSolveOptions opts;
  opts.seed = g.seed;
  const tcm::FiberPoint fp =
      tcm::solve_fiber_point({target_v[0], target_v[1], target_v[2]}, pr, opts);
  Json j = tcm::report_skeleton("fiber");
  j["params"] = params_json(pr);
  j["target"] = tcm::json_value3(fp.target);
  j["point"] = tcm::json_vec(fp.point);
  j["residual"] = fp.residual;
  emit(g, j.dump(2));
  return 0;
}

// -------------------------------------------------------------------- reduce

int cmd_reduce(const GlobalOpts& g, double k, bool delzant) {
  Json j = tcm::report_skeleton("reduce");
  j["k"] = k;
  if (delzant) {
    const tcm::DelzantPolygon poly = tcm::delzant_polygon(k);
    Json verts = Json::array();
    for (const auto& v : poly.vertices) verts.push_back(Json::array({v[0], v[1]}));
    j["delzant_vertices"] = verts;
  }
  emit(g, j.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-spin integrable-system toolkit: bifurcation diagram, "
               "period-lattice monodromy, cusp-unfolding checks, spectral audits"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--params", g.params, "delta1,delta2,omega,g")
      ->delimiter(',')
      ->expected(4);
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--tol", g.tol, "integrator tolerance");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* bif = app.add_subcommand("bifdiag", "critical-value slices and threads");
  std::vector<double> ks{1.8};
  int samples = 2048;
  bif->add_option("--k", ks, "momentum slice values")->delimiter(',');
  bif->add_option("--samples", samples, "rank-2 sweep resolution");

  auto* mono = app.add_subcommand("monodromy", "transport a period basis around a loop");
  std::string loop_name = "gamma1";
  std::vector<double> base{2.0, 1.0, 1.8};
  double radius = 0.5;
  std::string waypoint_file;
  mono->add_option("--loop", loop_name, "gamma1|gamma2|gamma3|gamma4|custom")
      ->check(CLI::IsMember({"gamma1", "gamma2", "gamma3", "gamma4", "custom"}));
  mono->add_option("--base", base, "base value h1,h2,k")->delimiter(',')->expected(3);
  mono->add_option("--radius", radius, "circle radius around the focus-focus value");
  mono->add_option("--waypoints", waypoint_file, "file with h1 h2 k per line (custom loop)");
  mono->add_flag("--report", "kept for symmetry; reports are always emitted");

  auto* a2 = app.add_subcommand("a2", "cusp-unfolding monodromy and normal-form checks");
  int a2_loop = 1;
  bool verify_nf = false;
  a2->add_option("--loop", a2_loop, "thread index 1..4")->check(CLI::Range(1, 4));
  a2->add_flag("--verify-normal-form", verify_nf, "run the Taylor-structure checks");

  auto* lax = app.add_subcommand("lax-check", "spectral-pair audits");
  double traj_time = 5.0;
  int lax_samples = 11;
  lax->add_option("--trajectory-time", traj_time, "audit trajectory duration");
  lax->add_option("--samples", lax_samples, "audit sample count");

  auto* flow_cmd = app.add_subcommand("flow", "integrate a combined flow");
  std::vector<double> coeffs{0.0, 0.0, 1.0};
  double duration = 1.0;
  std::vector<double> point;
  flow_cmd->add_option("--coeffs", coeffs, "a1,a2,a3")->delimiter(',')->expected(3);
  flow_cmd->add_option("--duration", duration, "flow time");
  flow_cmd->add_option("--point", point, "8 phase coordinates (default: random)")
      ->delimiter(',');

  auto* fiber = app.add_subcommand("fiber", "solve a point on a fiber");
  std::vector<double> target{2.0, 1.0, 1.8};
  fiber->add_option("--target", target, "h1,h2,k")->delimiter(',')->expected(3);

  auto* reduce = app.add_subcommand("reduce", "reduced-space data");
  double k_red = 1.0;
  bool delzant = false;
  reduce->add_option("--k", k_red, "momentum level");
  reduce->add_flag("--delzant", delzant, "emit the Delzant polygon");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bif->parsed()) return cmd_bifdiag(g, ks, samples);
    if (mono->parsed()) return cmd_monodromy(g, loop_name, base, radius, waypoint_file);
    if (a2->parsed()) return cmd_a2(g, a2_loop, verify_nf);
    if (lax->parsed()) return cmd_lax(g, traj_time, lax_samples);
    if (flow_cmd->parsed()) return cmd_flow(g, coeffs, duration, point);
    if (fiber->parsed()) return cmd_fiber(g, target);
    if (reduce->parsed()) return cmd_reduce(g, k_red, delzant);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
