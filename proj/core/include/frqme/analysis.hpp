#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frqme/dynamics.hpp"
#include "frqme/types.hpp"

namespace frqme {

// ---------------------------------------------------------------------------
// Plateau / lifetime detection on M_x(t)

struct PlateauOptions {
  double rel_tol = 0.01;         // max (max - min) / |mean| inside a flat window
  double window_decades = 0.25;  // sliding window width in log10(t)

  bool operator==(const PlateauOptions&) const = default;
};

struct PlateauReport {
  bool plateau_found = false;
  double t_pre_analytic = 0.0;  // 1 / (kappa^2 tau_c)
  double t_pre = 0.0;           // start of the first flat window (s)
  double t_th = 0.0;            // 1/e decay of the plateau excess (s); +inf if not reached
  double mx_pre = 0.0;          // mean M_x over the first flat window
  double mx_final = 0.0;        // last sample of M_x
  double fractional_lifetime = 0.0;
};

/// Finds the prethermal plateau of M_x(t). A window [t, t * 10^w] is flat
/// when its relative spread is below rel_tol; only windows that start after
/// M_x has left its initial value count. t_th is where M_x - mx_final first
/// falls to (mx_pre - mx_final) / e after the plateau, linearly interpolated.
/// Throws InsufficientHorizonError when the grid ends before 10 t_pre_analytic.
PlateauReport detect_plateau(const Trajectory& trajectory, double t_pre_analytic, const PlateauOptions& options = {});

/// (t_th - t_pre) / t_pre. Throws NoPlateauError when no plateau was found.
double fractional_lifetime(const PlateauReport& report);

// ---------------------------------------------------------------------------
// Liouvillian spectrum

struct SpectralOptions {
  double zero_tol = 1e-9;        // zero mode: |lambda| < zero_tol * spectral radius
  double degeneracy_tol = 1e-6;  // relative separation of |Re lambda| for NN vs NNN
};

struct SpectralReport {
  std::vector<Complex> eigenvalues;  // sorted by |Re| ascending
  std::vector<bool> zero_mode;       // parallel to eigenvalues
  std::size_t zero_mode_count = 0;
  bool has_gap = false;
  Complex lambda_nn{};
  Complex lambda_nnn{};
  double t_pre_spectral = 0.0;  // 1 / |Re lambda_nnn - Re lambda_nn|
};

/// Eigen-decomposition and zero-mode classification; never throws for a
/// finite generator (has_gap reports whether NN/NNN exist).
SpectralReport liouvillian_spectrum(const Superoperator& generator, const SpectralOptions& options = {});

/// As liouvillian_spectrum, but throws NoSpectralGapError when the non-zero
/// eigenvalues do not contain two distinct decay rates.
SpectralReport spectral_lifetime(const Superoperator& generator, const SpectralOptions& options = {});

inline SpectralReport spectral_lifetime(const GeneratorSet& generators, const SpectralOptions& options = {}) {
  return spectral_lifetime(generators.total, options);
}

// ---------------------------------------------------------------------------
// Fourier spectrum of M_x(t)

struct SpectrumF {
  std::vector<double> frequencies;  // rad/s, ascending (zero-centred)
  std::vector<double> magnitude;    // |F(w)|, F(w) = dt * sum x_n exp(-i w t_n)
  double peak_height = 0.0;         // |F(0)|
  double peak_frequency = 0.0;      // argmax of magnitude (rad/s)
  double sample_spacing = 0.0;      // dt of the (resampled) uniform grid
};

/// Rectangular-window DFT with the mean retained. Non-uniform grids are
/// linearly resampled onto a uniform grid with the same number of points.
/// Throws std::invalid_argument for fewer than 64 samples.
SpectrumF fourier_spectrum(std::span<const double> times, std::span<const double> values);
SpectrumF fourier_spectrum(const Trajectory& trajectory);

}  // namespace frqme
