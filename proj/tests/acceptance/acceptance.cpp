// Acceptance gate: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "frqme/analysis.hpp"
#include "frqme/config.hpp"
#include "frqme/dynamics.hpp"
#include "frqme/liouvillian.hpp"
#include "frqme/sweep.hpp"
#include "oracles.hpp"

using namespace frqme;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }


SimParams lattice_point(double tau_c_ms, double alpha_ratio, double drive_ratio) {
  SimParams p = reference_params();
  const double wd = p.secular_dipolar();
  p.tau_c = tau_c_ms * 1e-3;
  p.alpha = alpha_ratio * wd;
  p.omega1 = drive_ratio * wd;
  p.omega_sl = 0.1 * wd;
  p.omega_l = p.omega0;
  p.m_th = 0.2;
  p.include_system_bath = true;
  return p;
}

Outcome c1_plateau() {
  const SimParams p = reference_params();
  const Trajectory t = evolve(build_generators(p), initial_state_x(), default_time_grid(p));
  const PlateauReport r = detect_plateau(t, analytic_prethermal_time(p));
  const double target = analytic_plateau_fraction(p);
  const double err = r.plateau_found ? rel(r.mx_pre, target) : 1.0;
  return {r.plateau_found && err <= 0.02,
          fmt("mx_pre = %.6f at t_pre = %.3g s, 16w1^2/(16w1^2+9wd^2) = %.4f, rel err %.3g (tol 0.02)", r.mx_pre,
              r.t_pre, target, err)};
}

Outcome c2_analytic_envelope() {
  const SimParams p = reference_params();
  const bool exact_start = analytic_mx(p, 0.0) == observables(initial_state_x().matrix()).mx;
  const double t_pre = analytic_prethermal_time(p);
  const double t_th = analytic_thermal_time(p);
  std::vector<double> times = {0.0};
  for (double t : oracle::logspace(std::log10(t_pre), std::log10(0.5 * t_th), 400)) times.push_back(t);
  const Trajectory traj = evolve(build_generators(p), initial_state_x(), times);
  double worst = 0.0, at = 0.0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double e = rel(analytic_mx(p, times[k]), traj.samples[k].mx);
    if (e > worst) worst = e, at = times[k];
  }
  return {exact_start && worst <= 0.05,
          fmt("analytic_mx(0) = %.17g; max rel deviation over [T_pre, T_th/2] = %.4f at t = %.3g s (tol 0.05)",
              analytic_mx(p, 0.0), worst, at)};
}

Outcome c3_reduced_oracles() {
  double worst_n = 0.0, worst_yz = 0.0, worst_lin = 0.0;
  for (double ratio : {0.5, 1.0, 2.0}) {
    for (double tau_c_ms : {1e-4, 1e-3}) {
      SimParams p = reference_params();
      p.omega1 = ratio * p.secular_dipolar();
      p.tau_c = tau_c_ms * 1e-3;

      const double rn = thermal_decay_rate(p);
      const auto tn = oracle::linspace(0.0, 10.0 / rn, 200);
      const auto red_n = evolve_reduced_nonsecular(p, {}, tn);
      for (std::size_t k = 0; k < tn.size(); ++k) worst_n = std::max(worst_n, rel(red_n[k].mx, std::exp(-rn * tn[k])));

      const auto ts = oracle::linspace(0.0, 10.0 * analytic_prethermal_time(p), 400);
      const auto red_s = evolve_reduced_secular(p, {}, ts);
      const double wd = p.secular_dipolar();
      const double lin0 = 3.0 * wd * red_s[0].mzz + p.omega1 * red_s[0].mx;
      double scale = 0.0;
      for (const auto& s : red_s) scale = std::max(scale, std::abs(s.myy) + std::abs(s.mzz));
      for (const auto& s : red_s) {
        worst_yz = std::max(worst_yz, std::abs(s.myy + s.mzz) / scale);
        worst_lin = std::max(worst_lin, rel(3.0 * wd * s.mzz + p.omega1 * s.mx, lin0));
      }
    }
  }
  return {worst_n <= 1e-9 && worst_yz <= 1e-8 && worst_lin <= 1e-8,
          fmt("M_x vs exp(-R_n t): %.2e (tol 1e-9); M_yy+M_zz drift: %.2e, 3w_d M_zz + w1 M_x drift: %.2e (tol 1e-8)",
              worst_n, worst_yz, worst_lin)};
}

Outcome c4_zero_modes() {
  bool ok = true;
  std::string counts;
  std::vector<SimParams> points = {reference_params()};
  for (double tc : {1e-5, 1e-4, 1e-3})
    for (double r : {0.5, 1.0, 2.0}) points.push_back(lattice_point(tc, 0.0, r));
  for (const SimParams& p : points) {
    const std::size_t sec = count_zero_modes(build_secular_generator(p));
    const std::size_t non = count_zero_modes(build_nonsecular_generator(p));
    ok = ok && sec == 4 && non == 2;
    if (counts.empty()) counts = fmt("reference: L_sec %zu, L_n %zu", sec, non);
  }
  return {ok, counts + fmt("; checked %zu parameter points (want 4 and 2)", points.size())};
}

Outcome c5_generator_sanity() {
  double max_re = -1e300, trace_err = 0.0, herm_err = 0.0;
  int points = 0;
  for (double tc : {1e-5, 1e-4, 1e-3})
    for (double a : {0.0, 0.5, 1.0})
      for (double r : {0.5, 1.0, 2.0}) {
        const SimParams p = lattice_point(tc, a, r);
        const GeneratorSet g = build_generators(p);
        for (const Superoperator* l : {&g.secular, &g.nonsecular, &g.system_bath, &g.total}) {
          const Eigen::ComplexEigenSolver<Superoperator> es(*l, false);
          max_re = std::max(max_re, es.eigenvalues().real().maxCoeff());
        }
        const Trajectory t = evolve(g, initial_state_x(), default_time_grid(p, {400}));
        for (const Observables& o : t.samples) {
          trace_err = std::max(trace_err, std::abs(o.trace - 1.0));
          herm_err = std::max(herm_err, o.hermiticity_defect);
        }
        ++points;
      }
  return {points == 27 && max_re <= 1e-9 && trace_err <= 1e-9 && herm_err <= 1e-9,
          fmt("%d points: max Re(lambda) = %.2e (tol 1e-9), |Tr - 1| <= %.2e, Hermiticity defect <= %.2e (tol 1e-9)",
              points, max_re, trace_err, herm_err)};
}

Outcome c6_regimes() {
  RunConfig c;
  for (double t : oracle::logspace(-9.0, -6.0, 7)) c.sweep.tau_c_ms.push_back(t * 1e3);
  const auto cells = sweep_tau_c(c, default_worker_count());
  const double w0 = c.sim_params().omega0;
  bool ok = true;
  double last = -1.0;
  std::string detail;
  for (const TauCell& cell : cells) {
    const double x = w0 * cell.tau_c;
    const bool found = cell.report.plateau_found;
    if (x < 1.0 && found) ok = false;
    if (x > 2.0) {
      if (!found) {
        ok = false;
      } else {
        if (!(cell.report.fractional_lifetime > last)) ok = false;
        last = cell.report.fractional_lifetime;
      }
    }
    detail += fmt(" w0tc=%.3g:%s", x, found ? fmt("%.4g", cell.report.fractional_lifetime).c_str() : "none");
  }
  return {ok, "fractional lifetime by point:" + detail};
}

Outcome c7_shift_attenuation() {
  RunConfig c;
  c.physics.tau_c_ms = 1e-4;
  c.sweep.alpha = {0.0, 1.25, 2.5, 5.0};
  c.sweep.omega1_over_omegad = {1.0, 2.0};
  const auto cells = sweep_alpha(c, default_worker_count());
  std::vector<double> h1, h2;
  for (const AlphaCell& cell : cells) (cell.omega1_over_omegad == 1.0 ? h1 : h2).push_back(cell.peak_height);
  bool decreasing = true;
  for (const auto* h : {&h1, &h2})
    for (std::size_t k = 1; k < h->size(); ++k) decreasing = decreasing && (*h)[k] < (*h)[k - 1];
  double worst = 0.0;
  for (std::size_t k = 0; k < h1.size(); ++k) worst = std::max(worst, std::abs(h1[k] - h2[k]) / std::max(h1[k], h2[k]));
  return {decreasing && worst <= 0.15,
          fmt("w1=wd: %.4g %.4g %.4g %.4g; w1=2wd: %.4g %.4g %.4g %.4g; strictly decreasing: %s; max curve gap %.3f "
              "(tol 0.15)",
              h1[0], h1[1], h1[2], h1[3], h2[0], h2[1], h2[2], h2[3], decreasing ? "yes" : "no", worst)};
}

Outcome c8_contour() {
  RunConfig c;
  for (double a : oracle::linspace(0.0, 1.0, 8)) c.sweep.alpha.push_back(5.0 * a);
  for (double t : oracle::logspace(-7.0, -5.0, 8)) c.sweep.tau_c_ms.push_back(t * 1e3);
  const ContourGrid g = contour(c, default_worker_count());
  const MonotonicitySummary s = contour_monotonicity(g);
  std::size_t along_tau = 0, along_alpha = 0;
  for (const auto& line : s.lines) (line.along_tau ? along_tau : along_alpha) += line.violations;
  const std::size_t missing = static_cast<std::size_t>(std::count(g.t_pre.begin(), g.t_pre.end(), std::nullopt));
  return {missing == 0 && s.acceptable(2, 0.05),
          fmt("8x8 grid at w1 = wd: %zu violations along tau_c, %zu along alpha, largest %.3f relative "
              "(allowed <= 2 of < 0.05); %zu cells without a gap",
              along_tau, along_alpha, s.max_relative_violation, missing)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome c9_determinism() {
  RunConfig c;
  c.grid.points = 800;
  c.fourier_points = 4096;
  c.sweep.tau_c_ms = {1e-4, 3e-4, 1e-3, 3e-3, 1e-3};
  c.sweep.alpha = {0.0, 1.25, 2.5, 5.0};
  c.sweep.omega1_over_omegad = {1.0, 2.0};
  const fs::path base = fs::temp_directory_path() / "frqme_acceptance_c9";
  fs::remove_all(base);
  bool same = true;
  std::string detail;
  for (std::size_t workers : {1u, 2u, 4u}) {
    CommandOptions o;
    o.workers = workers;
    o.output_dir = base / std::to_string(workers);
    cmd_sweep_tauc(c, o);
    cmd_sweep_alpha(c, o);
    cmd_contour(c, o);
  }
  for (const char* f : {"sweep_tauc.csv", "sweep_alpha.csv", "contour.csv", "contour_summary.csv"}) {
    const std::string ref = slurp(base / "1" / f);
    for (const char* w : {"2", "4"}) same = same && !ref.empty() && slurp(base / w / f) == ref;
    detail += fmt(" %s(%zu B)", f, ref.size());
  }
  fs::remove_all(base);
  return {same, "workers 1/2/4 compared:" + detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 plateau value", c1_plateau},
      {"C2 analytic M_x consistency", c2_analytic_envelope},
      {"C3 reduced-ODE oracles", c3_reduced_oracles},
      {"C4 zero-mode counts", c4_zero_modes},
      {"C5 generator sanity", c5_generator_sanity},
      {"C6 regime dichotomy", c6_regimes},
      {"C7 shift attenuation", c7_shift_attenuation},
      {"C8 contour monotonicity", c8_contour},
      {"C9 determinism", c9_determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
