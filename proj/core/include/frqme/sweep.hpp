#pragma once

// Grid execution behind the CLI subcommands. Every cell is a pure function
// of the immutable RunConfig; cells run on a small thread pool and results
// are stored by index, so output never depends on the worker count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "frqme/analysis.hpp"
#include "frqme/config.hpp"
#include "frqme/dynamics.hpp"
#include "frqme/liouvillian.hpp"

namespace frqme {

/// FRQME_WORKERS when set to a positive integer, else hardware concurrency.
std::size_t default_worker_count();

/// Evaluates fn(0..n-1) on up to `workers` threads. If any cell throws, the
/// exception of the lowest failing index is rethrown after all threads join.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, std::size_t workers, F&& fn) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t count = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (count == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (std::size_t k = 0; k < count; ++k) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// |w_{d,0}|, the dipolar scale that omega1/omega_d ratios refer to.
double reference_dipolar(const SimParams& params);

struct SimulationResult {
  SimParams params;
  Trajectory trajectory;
  std::optional<PlateauReport> plateau;  // empty when the horizon was too short
};

SimulationResult run_simulation(const RunConfig& config);

struct TauCell {
  double tau_c = 0.0;  // s
  double omega1_over_omegad = 0.0;
  PlateauReport report;
};

/// Ratios outer, tau_c inner.
std::vector<TauCell> sweep_tau_c(const RunConfig& config, std::size_t workers);

struct AlphaCell {
  double alpha = 0.0;  // rad/s
  double omega1_over_omegad = 0.0;
  double peak_height = 0.0;
  std::optional<double> mx_pre;
};

/// Ratios outer, alpha inner. Alpha outside [0, omega_d] is a ConfigError.
std::vector<AlphaCell> sweep_alpha(const RunConfig& config, std::size_t workers);

/// Single sweep-alpha cell: Fourier peak over a uniform grid spanning
/// [0, 10 T_th] plus the plateau value from the log grid.
AlphaCell alpha_cell(const RunConfig& config, const SimParams& params);

struct ContourGrid {
  std::vector<double> alpha_over_omegad;
  std::vector<double> tau_c;  // s
  // t_pre_spectral for (alpha index a, tau index t) at a * tau_c.size() + t;
  // empty when the spectrum has no gap.
  std::vector<std::optional<double>> t_pre;

  const std::optional<double>& at(std::size_t a, std::size_t t) const { return t_pre[a * tau_c.size() + t]; }
};

ContourGrid contour(const RunConfig& config, std::size_t workers);

struct MonotonicityLine {
  bool along_tau = true;  // true: fixed alpha, increasing tau_c; false: fixed tau_c, increasing alpha
  std::size_t index = 0;  // fixed-axis index
  std::size_t violations = 0;
  double max_relative_violation = 0.0;
};

struct MonotonicitySummary {
  std::vector<MonotonicityLine> lines;
  std::size_t violations = 0;
  double max_relative_violation = 0.0;

  /// At most `max_violations` wrong-direction steps, each below `rel_tol`.
  bool acceptable(std::size_t max_violations = 2, double rel_tol = 0.05) const;
};

/// Expected trend: non-decreasing in tau_c, non-increasing in alpha.
MonotonicitySummary contour_monotonicity(const ContourGrid& grid);

struct CommandOptions {
  std::size_t workers = 1;
  std::optional<std::filesystem::path> output_dir;  // overrides the config
  bool svg = false;                                 // or-ed with the config flag
  std::optional<std::size_t> time_points;           // overrides grid.points
};

struct CommandResult {
  std::vector<std::filesystem::path> files;
  std::string summary;
};

/// Config with the command-line overrides applied.
RunConfig apply_overrides(RunConfig config, const CommandOptions& options);

CommandResult cmd_simulate(const RunConfig& config, const CommandOptions& options);
CommandResult cmd_sweep_tauc(const RunConfig& config, const CommandOptions& options);
CommandResult cmd_sweep_alpha(const RunConfig& config, const CommandOptions& options);
CommandResult cmd_contour(const RunConfig& config, const CommandOptions& options);
CommandResult cmd_eigen(const RunConfig& config, const CommandOptions& options);

}  // namespace frqme
