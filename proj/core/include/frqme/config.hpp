#pragma once

// Run configuration: an INI-style text file with [sections] and key = value
// lines. Frequencies are written in the file's unit (Hz, kHz or MHz) and are
// multiplied by 2 pi when [units] two_pi = true; tau_c is given in ms.
//
//   [units]      frequency, two_pi
//   [system]     omega0, omega1, alpha, tau_c_ms
//   [dipolar]    mode = scalar | amplitudes | geometry, omega_d,
//                amp_m2 .. amp_p2 ("re im"), r, theta, phi, prefactor
//   [bath]       omega_sl, omega_l, m_th
//   [generators] nonsecular, system_bath
//   [grid]       points, t_min_s, t_max_s
//   [plateau]    rel_tol, window_decades
//   [fourier]    points
//   [sweep]      tau_c_ms, alpha, omega1_over_omegad (comma-separated lists)
//   [output]     dir, svg

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "frqme/analysis.hpp"
#include "frqme/dynamics.hpp"
#include "frqme/liouvillian.hpp"
#include "frqme/operators.hpp"

namespace frqme {

enum class FrequencyUnit { hz, khz, mhz };
enum class DipolarMode { scalar, amplitudes, geometry };

/// Physical inputs in file units; see RunConfig::sim_params() for rad/s.
struct PhysicsInput {
  FrequencyUnit unit = FrequencyUnit::khz;
  bool two_pi = true;
  double omega0 = 1.0e4;
  double omega1 = 5.0;
  double alpha = 0.0;
  double tau_c_ms = 1.0e-3;
  double omega_sl = 0.0;
  double omega_l = 1.0e4;
  double m_th = 0.0;
  DipolarMode dipolar_mode = DipolarMode::scalar;
  double omega_d = 5.0;
  std::array<Complex, 5> amplitudes{};  // m = -2..2, file units
  DipolarGeometry geometry{};           // prefactor in file units * length^3
  bool include_nonsecular = true;
  bool include_system_bath = false;

  bool operator==(const PhysicsInput&) const = default;
};

struct SweepSpec {
  std::vector<double> tau_c_ms;
  std::vector<double> alpha;               // file frequency units
  std::vector<double> omega1_over_omegad;  // empty: use the configured w1

  bool operator==(const SweepSpec&) const = default;
};

struct OutputSpec {
  std::string directory = ".";
  bool svg = false;

  bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
  PhysicsInput physics;
  TimeGridSpec grid;
  PlateauOptions plateau;
  std::size_t fourier_points = 65536;
  SweepSpec sweep;
  OutputSpec output;

  bool operator==(const RunConfig&) const = default;

  /// rad/s per file frequency unit.
  double frequency_scale() const;
  double to_rad_per_s(double value) const { return value * frequency_scale(); }

  /// Converted and validated physical parameters.
  SimParams sim_params() const;
};

/// Throws ConfigError (with line and field) on malformed input.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

}  // namespace frqme
