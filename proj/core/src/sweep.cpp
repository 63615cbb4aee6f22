#include "frqme/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "frqme/csv.hpp"
#include "frqme/errors.hpp"
#include "frqme/plot.hpp"

namespace frqme {
namespace {

std::string flag(bool b) { return b ? "true" : "false"; }

std::string optional_number(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

std::vector<double> ratio_axis(const RunConfig& config, const SimParams& base) {
  if (!config.sweep.omega1_over_omegad.empty()) {
    if (!(reference_dipolar(base) > 0.0))
      throw ConfigError("omega1/omega_d ratios need a nonzero secular dipolar coupling", 0,
                        "sweep.omega1_over_omegad");
    return config.sweep.omega1_over_omegad;
  }
  const double wd = reference_dipolar(base);
  return {wd > 0.0 ? base.omega1 / wd : 0.0};
}

SimParams with_ratio(SimParams p, double ratio, const RunConfig& config) {
  if (!config.sweep.omega1_over_omegad.empty()) p.omega1 = ratio * reference_dipolar(p);
  return p;
}

PlateauReport plateau_for(const SimParams& params, const RunConfig& config) {
  const auto times = default_time_grid(params, config.grid);
  const Trajectory traj = evolve(build_generators(params), initial_state_x(), times);
  return detect_plateau(traj, analytic_prethermal_time(params), config.plateau);
}

std::filesystem::path output_dir(const RunConfig& config) { return config.output.directory; }

}  // namespace

std::size_t default_worker_count() {
  if (const char* env = std::getenv("FRQME_WORKERS")) {
    double v = 0.0;
    if (parse_double(env, v) && v >= 1.0 && v == std::floor(v) && v < 1e6) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double reference_dipolar(const SimParams& params) { return std::abs(params.omega_d[2]); }

SimulationResult run_simulation(const RunConfig& config) {
  SimulationResult out;
  out.params = config.sim_params();
  const auto times = default_time_grid(out.params, config.grid);
  out.trajectory = evolve(build_generators(out.params), initial_state_x(), times);
  try {
    out.plateau = detect_plateau(out.trajectory, analytic_prethermal_time(out.params), config.plateau);
  } catch (const InsufficientHorizonError&) {
    out.plateau.reset();
  }
  return out;
}

std::vector<TauCell> sweep_tau_c(const RunConfig& config, std::size_t workers) {
  if (config.sweep.tau_c_ms.empty()) throw ConfigError("sweep-tauc needs a non-empty list", 0, "sweep.tau_c_ms");
  const SimParams base = config.sim_params();
  const auto ratios = ratio_axis(config, base);
  const auto& taus = config.sweep.tau_c_ms;
  return parallel_map<TauCell>(ratios.size() * taus.size(), workers, [&](std::size_t i) {
    TauCell cell;
    cell.omega1_over_omegad = ratios[i / taus.size()];
    cell.tau_c = taus[i % taus.size()] * 1.0e-3;
    SimParams p = with_ratio(base, cell.omega1_over_omegad, config);
    p.tau_c = cell.tau_c;
    cell.report = plateau_for(p, config);
    return cell;
  });
}

AlphaCell alpha_cell(const RunConfig& config, const SimParams& params) {
  AlphaCell cell;
  cell.alpha = params.alpha;
  const double wd = reference_dipolar(params);
  cell.omega1_over_omegad = wd > 0.0 ? params.omega1 / wd : 0.0;

  const GeneratorSet gens = build_generators(params);
  double window = 10.0 * analytic_thermal_time(params);
  if (!std::isfinite(window)) window = default_time_grid(params, config.grid).back();
  const auto uniform = uniform_time_grid(window, config.fourier_points);
  cell.peak_height = fourier_spectrum(evolve(gens, initial_state_x(), uniform)).peak_height;

  const PlateauReport report = plateau_for(params, config);
  if (report.plateau_found) cell.mx_pre = report.mx_pre;
  return cell;
}

std::vector<AlphaCell> sweep_alpha(const RunConfig& config, std::size_t workers) {
  if (config.sweep.alpha.empty()) throw ConfigError("sweep-alpha needs a non-empty list", 0, "sweep.alpha");
  const SimParams base = config.sim_params();
  const double wd = reference_dipolar(base);
  std::vector<double> alphas;
  for (double a : config.sweep.alpha) {
    const double rad = config.to_rad_per_s(a);
    if (rad < 0.0 || rad > wd * (1.0 + 1e-12)) {
      throw ConfigError("alpha = " + format_double(a) +
                            " lies outside [0, omega_d]; the secular treatment of the chemical shift is only valid "
                            "for alpha <= omega_d",
                        0, "sweep.alpha");
    }
    alphas.push_back(rad);
  }
  const auto ratios = ratio_axis(config, base);
  return parallel_map<AlphaCell>(ratios.size() * alphas.size(), workers, [&](std::size_t i) {
    SimParams p = with_ratio(base, ratios[i / alphas.size()], config);
    p.alpha = alphas[i % alphas.size()];
    AlphaCell cell = alpha_cell(config, p);
    cell.omega1_over_omegad = ratios[i / alphas.size()];
    return cell;
  });
}

ContourGrid contour(const RunConfig& config, std::size_t workers) {
  if (config.sweep.alpha.empty()) throw ConfigError("contour needs a non-empty list", 0, "sweep.alpha");
  if (config.sweep.tau_c_ms.empty()) throw ConfigError("contour needs a non-empty list", 0, "sweep.tau_c_ms");
  const SimParams base = config.sim_params();
  const double wd = reference_dipolar(base);
  if (!(wd > 0.0)) throw ConfigError("contour needs a nonzero secular dipolar coupling", 0, "dipolar");

  ContourGrid grid;
  for (double a : config.sweep.alpha) {
    if (a < 0.0) throw ConfigError("alpha must be non-negative", 0, "sweep.alpha");
    grid.alpha_over_omegad.push_back(config.to_rad_per_s(a) / wd);
  }
  for (double t : config.sweep.tau_c_ms) grid.tau_c.push_back(t * 1.0e-3);
  const std::size_t nt = grid.tau_c.size();
  grid.t_pre = parallel_map<std::optional<double>>(grid.alpha_over_omegad.size() * nt, workers, [&](std::size_t i) {
    SimParams p = base;
    p.alpha = config.to_rad_per_s(config.sweep.alpha[i / nt]);
    p.tau_c = grid.tau_c[i % nt];
    const SpectralReport report = liouvillian_spectrum(build_generators(p).total);
    return report.has_gap ? std::optional<double>(report.t_pre_spectral) : std::nullopt;
  });
  return grid;
}

bool MonotonicitySummary::acceptable(std::size_t max_violations, double rel_tol) const {
  return violations <= max_violations && max_relative_violation < rel_tol;
}

MonotonicitySummary contour_monotonicity(const ContourGrid& grid) {
  MonotonicitySummary summary;
  const std::size_t na = grid.alpha_over_omegad.size();
  const std::size_t nt = grid.tau_c.size();

  // `sign` = +1 for an expected increase along the line, -1 for a decrease.
  auto scan = [&](bool along_tau, std::size_t fixed, std::size_t length, double sign) {
    MonotonicityLine line;
    line.along_tau = along_tau;
    line.index = fixed;
    for (std::size_t k = 0; k + 1 < length; ++k) {
      const auto& a = along_tau ? grid.at(fixed, k) : grid.at(k, fixed);
      const auto& b = along_tau ? grid.at(fixed, k + 1) : grid.at(k + 1, fixed);
      if (!a || !b) continue;
      const double step = sign * (*b - *a);
      if (step >= 0.0) continue;
      ++line.violations;
      const double scale = std::max(std::abs(*a), std::abs(*b));
      line.max_relative_violation = std::max(line.max_relative_violation, scale > 0.0 ? -step / scale : 0.0);
    }
    summary.violations += line.violations;
    summary.max_relative_violation = std::max(summary.max_relative_violation, line.max_relative_violation);
    summary.lines.push_back(line);
  };
  for (std::size_t a = 0; a < na; ++a) scan(true, a, nt, +1.0);
  for (std::size_t t = 0; t < nt; ++t) scan(false, t, na, -1.0);
  return summary;
}

RunConfig apply_overrides(RunConfig config, const CommandOptions& options) {
  if (options.output_dir) config.output.directory = options.output_dir->string();
  config.output.svg = config.output.svg || options.svg;
  if (options.time_points) {
    if (*options.time_points < 3) throw ConfigError("--time-points must be at least 3", 0, "grid.points");
    config.grid.points = *options.time_points;
  }
  return config;
}

CommandResult cmd_simulate(const RunConfig& base, const CommandOptions& options) {
  const RunConfig config = apply_overrides(base, options);
  const SimulationResult sim = run_simulation(config);
  CommandResult result;

  CsvTable table({"t_s", "Mx", "My", "Mz", "Mxx", "Myy", "Mzz", "Myz", "trace", "min_eig"});
  for (std::size_t k = 0; k < sim.trajectory.times.size(); ++k) {
    const Observables& o = sim.trajectory.samples[k];
    table.add_row({format_double(sim.trajectory.times[k]), format_double(o.mx), format_double(o.my),
                   format_double(o.mz), format_double(o.mxx()), format_double(o.myy()), format_double(o.mzz()),
                   format_double(o.myz()), format_double(o.trace), format_double(o.min_eigenvalue)});
  }
  const auto dir = output_dir(config);
  table.write(dir / "trajectory.csv");
  result.files.push_back(dir / "trajectory.csv");

  if (config.output.svg) {
    const LineSeries mx{"Mx", sim.trajectory.times, sim.trajectory.mx()};
    write_text_file(dir / "trajectory.svg", svg_line_plot({mx}, {"Mx(t)", "t (s)", "Mx", true}));
    result.files.push_back(dir / "trajectory.svg");
  }

  std::ostringstream s;
  s << "t_pre_analytic_s = " << format_double(analytic_prethermal_time(sim.params)) << "\n";
  s << "t_th_analytic_s = " << format_double(analytic_thermal_time(sim.params)) << "\n";
  if (!sim.plateau) {
    s << "plateau: horizon shorter than 10 t_pre, not evaluated\n";
  } else {
    const PlateauReport& r = *sim.plateau;
    s << "plateau_found = " << flag(r.plateau_found) << "\n";
    if (r.plateau_found) {
      s << "t_pre_s = " << format_double(r.t_pre) << "\n";
      s << "t_th_s = " << format_double(r.t_th) << "\n";
      s << "mx_pre = " << format_double(r.mx_pre) << "\n";
      s << "fractional_lifetime = " << format_double(r.fractional_lifetime) << "\n";
    }
    s << "mx_final = " << format_double(r.mx_final) << "\n";
  }
  result.summary = s.str();
  return result;
}

CommandResult cmd_sweep_tauc(const RunConfig& base, const CommandOptions& options) {
  const RunConfig config = apply_overrides(base, options);
  const auto cells = sweep_tau_c(config, options.workers);
  CsvTable table({"tau_c_s", "omega1_over_omegad", "fractional_lifetime", "plateau_found", "mx_pre"});
  std::size_t found = 0;
  for (const TauCell& c : cells) {
    const bool ok = c.report.plateau_found;
    found += ok ? 1 : 0;
    table.add_row({format_double(c.tau_c), format_double(c.omega1_over_omegad),
                   ok ? format_double(c.report.fractional_lifetime) : std::string{}, flag(ok),
                   ok ? format_double(c.report.mx_pre) : std::string{}});
  }
  CommandResult result;
  const auto dir = output_dir(config);
  table.write(dir / "sweep_tauc.csv");
  result.files.push_back(dir / "sweep_tauc.csv");

  if (config.output.svg) {
    std::vector<LineSeries> series;
    for (const TauCell& c : cells) {
      const std::string label = "w1/wd = " + format_double(c.omega1_over_omegad);
      if (series.empty() || series.back().label != label) series.push_back({label, {}, {}});
      if (c.report.plateau_found) {
        series.back().x.push_back(c.tau_c);
        series.back().y.push_back(c.report.fractional_lifetime);
      }
    }
    write_text_file(dir / "sweep_tauc.svg",
                    svg_line_plot(series, {"fractional prethermal lifetime", "tau_c (s)", "(t_th - t_pre)/t_pre", true}));
    result.files.push_back(dir / "sweep_tauc.svg");
  }
  result.summary = std::to_string(cells.size()) + " cells, " + std::to_string(found) + " with a plateau\n";
  return result;
}

CommandResult cmd_sweep_alpha(const RunConfig& base, const CommandOptions& options) {
  const RunConfig config = apply_overrides(base, options);
  const auto cells = sweep_alpha(config, options.workers);
  CsvTable table({"alpha_rad_s", "omega1_over_omegad", "peak_height", "mx_pre"});
  for (const AlphaCell& c : cells)
    table.add_row({format_double(c.alpha), format_double(c.omega1_over_omegad), format_double(c.peak_height),
                   optional_number(c.mx_pre)});
  CommandResult result;
  const auto dir = output_dir(config);
  table.write(dir / "sweep_alpha.csv");
  result.files.push_back(dir / "sweep_alpha.csv");

  if (config.output.svg) {
    std::vector<LineSeries> series;
    for (const AlphaCell& c : cells) {
      const std::string label = "w1/wd = " + format_double(c.omega1_over_omegad);
      if (series.empty() || series.back().label != label) series.push_back({label, {}, {}});
      series.back().x.push_back(c.alpha);
      series.back().y.push_back(c.peak_height);
    }
    write_text_file(dir / "sweep_alpha.svg", svg_line_plot(series, {"Fourier peak at w = 0", "alpha (rad/s)", "|F(0)|", false}));
    result.files.push_back(dir / "sweep_alpha.svg");
  }
  result.summary = std::to_string(cells.size()) + " cells\n";
  return result;
}

CommandResult cmd_contour(const RunConfig& base, const CommandOptions& options) {
  const RunConfig config = apply_overrides(base, options);
  const ContourGrid grid = contour(config, options.workers);
  CsvTable table({"alpha_over_omegad", "tau_c_s", "t_pre_spectral_s"});
  std::size_t gaps = 0;
  for (std::size_t a = 0; a < grid.alpha_over_omegad.size(); ++a) {
    for (std::size_t t = 0; t < grid.tau_c.size(); ++t) {
      gaps += grid.at(a, t) ? 0 : 1;
      table.add_row({format_double(grid.alpha_over_omegad[a]), format_double(grid.tau_c[t]),
                     optional_number(grid.at(a, t))});
    }
  }
  CommandResult result;
  const auto dir = output_dir(config);
  table.write(dir / "contour.csv");
  result.files.push_back(dir / "contour.csv");

  const MonotonicitySummary mono = contour_monotonicity(grid);
  CsvTable side({"direction", "fixed_value", "monotone", "violations", "max_relative_violation"});
  for (const MonotonicityLine& line : mono.lines) {
    const double fixed = line.along_tau ? grid.alpha_over_omegad[line.index] : grid.tau_c[line.index];
    side.add_row({line.along_tau ? "increasing_tau_c" : "increasing_alpha", format_double(fixed),
                  flag(line.violations == 0), std::to_string(line.violations),
                  format_double(line.max_relative_violation)});
  }
  side.add_row({"all", "", flag(mono.violations == 0), std::to_string(mono.violations),
                format_double(mono.max_relative_violation)});
  side.write(dir / "contour_summary.csv");
  result.files.push_back(dir / "contour_summary.csv");

  if (config.output.svg) {
    std::vector<std::vector<std::optional<double>>> rows(grid.tau_c.size());
    for (std::size_t t = 0; t < grid.tau_c.size(); ++t)
      for (std::size_t a = 0; a < grid.alpha_over_omegad.size(); ++a) rows[t].push_back(grid.at(a, t));
    write_text_file(dir / "contour.svg", svg_heat_map(rows, grid.alpha_over_omegad, grid.tau_c,
                                                      {"spectral prethermal lifetime (s)", "alpha / omega_d",
                                                       "tau_c (s)", false}));
    result.files.push_back(dir / "contour.svg");
  }
  std::ostringstream s;
  s << grid.t_pre.size() << " cells, " << gaps << " without a spectral gap, " << mono.violations
    << " monotonicity violations (max relative " << format_double(mono.max_relative_violation) << ")\n";
  result.summary = s.str();
  return result;
}

CommandResult cmd_eigen(const RunConfig& base, const CommandOptions& options) {
  const RunConfig config = apply_overrides(base, options);
  const SpectralReport report = liouvillian_spectrum(build_generators(config.sim_params()).total);
  CsvTable table({"re", "im", "is_zero_mode"});
  for (std::size_t k = 0; k < report.eigenvalues.size(); ++k)
    table.add_row({format_double(report.eigenvalues[k].real()), format_double(report.eigenvalues[k].imag()),
                   flag(report.zero_mode[k])});
  CommandResult result;
  const auto dir = output_dir(config);
  table.write(dir / "eigenvalues.csv");
  result.files.push_back(dir / "eigenvalues.csv");

  std::ostringstream s;
  s << "zero modes = " << report.zero_mode_count << "\n";
  if (report.has_gap) s << "t_pre_spectral_s = " << format_double(report.t_pre_spectral) << "\n";
  result.summary = s.str();
  return result;
}

}  // namespace frqme
