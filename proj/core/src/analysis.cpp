#include "frqme/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

#include "frqme/errors.hpp"

namespace frqme {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Window {
  double spread;
  double mean;
  std::size_t end;  // one past the last index
};

Window window_stats(std::span<const double> x, std::size_t begin, std::size_t end) {
  const auto [lo, hi] = std::minmax_element(x.begin() + static_cast<std::ptrdiff_t>(begin),
                                            x.begin() + static_cast<std::ptrdiff_t>(end));
  const double sum = std::accumulate(x.begin() + static_cast<std::ptrdiff_t>(begin),
                                     x.begin() + static_cast<std::ptrdiff_t>(end), 0.0);
  return {*hi - *lo, sum / static_cast<double>(end - begin), end};
}

// First time after `from` where the excess over mx_final reaches `target`,
// linearly interpolated between samples.
double crossing_time(std::span<const double> t, std::span<const double> x, std::size_t from, double mx_final,
                     double sign, double target) {
  for (std::size_t k = std::max<std::size_t>(from, 1); k < x.size(); ++k) {
    const double e1 = sign * (x[k] - mx_final);
    if (e1 <= target) {
      const double e0 = sign * (x[k - 1] - mx_final);
      if (e0 <= target || e0 == e1) return t[k];
      const double f = (e0 - target) / (e0 - e1);
      return t[k - 1] + f * (t[k] - t[k - 1]);
    }
  }
  return kInf;
}

}  // namespace

PlateauReport detect_plateau(const Trajectory& trajectory, double t_pre_analytic, const PlateauOptions& options) {
  const auto& t = trajectory.times;
  const std::vector<double> x = trajectory.mx();
  if (t.size() < 3) throw InsufficientHorizonError("trajectory has fewer than 3 samples");
  if (std::isfinite(t_pre_analytic) && t.back() < 10.0 * t_pre_analytic)
    throw InsufficientHorizonError("insufficient horizon: trajectory ends at " + std::to_string(t.back()) +
                                   " s, plateau detection needs at least 10 T_pre = " +
                                   std::to_string(10.0 * t_pre_analytic) + " s");

  PlateauReport report;
  report.t_pre_analytic = t_pre_analytic;
  report.mx_final = x.back();

  const double x0 = x.front();
  const double departure_tol = options.rel_tol * std::max(std::abs(x0), 1e-12);
  std::size_t start = 0;
  while (start < x.size() && std::abs(x[start] - x0) <= departure_tol) ++start;

  const double width = std::pow(10.0, options.window_decades);
  std::size_t first_positive = 0;
  while (first_positive < t.size() && t[first_positive] <= 0.0) ++first_positive;

  if (start == x.size()) {
    // M_x never moves: the whole trajectory is one plateau.
    std::size_t end = first_positive;
    while (end < t.size() && t[end] <= t[first_positive] * width) ++end;
    const Window w = window_stats(x, first_positive, std::max(end, first_positive + 1));
    report.plateau_found = true;
    report.t_pre = t[first_positive];
    report.mx_pre = w.mean;
    report.t_th = kInf;
    report.fractional_lifetime = kInf;
    return report;
  }

  std::size_t i = std::max(start, first_positive);
  std::size_t end = i;
  for (; i < t.size(); ++i) {
    const double t_end = t[i] * width;
    if (t_end > t.back()) break;
    end = std::max(end, i + 1);
    while (end < t.size() && t[end] <= t_end) ++end;
    if (end - i < 2) continue;
    const Window w = window_stats(x, i, end);
    if (std::abs(w.mean) <= 1e-12) continue;
    if (w.spread / std::abs(w.mean) < options.rel_tol) {
      report.plateau_found = true;
      report.t_pre = t[i];
      report.mx_pre = w.mean;
      const double excess = report.mx_pre - report.mx_final;
      if (excess == 0.0) {
        report.t_th = kInf;
      } else {
        const double sign = excess > 0.0 ? 1.0 : -1.0;
        report.t_th = crossing_time(t, x, i, report.mx_final, sign, std::abs(excess) / std::exp(1.0));
      }
      report.fractional_lifetime = (report.t_th - report.t_pre) / report.t_pre;
      return report;
    }
  }
  return report;
}

double fractional_lifetime(const PlateauReport& report) {
  if (!report.plateau_found) throw NoPlateauError("no prethermal plateau detected");
  return (report.t_th - report.t_pre) / report.t_pre;
}

SpectralReport liouvillian_spectrum(const Superoperator& generator, const SpectralOptions& options) {
  if (!generator.allFinite()) throw NumericalError("generator has non-finite entries");
  Eigen::ComplexEigenSolver<Superoperator> solver(generator, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigen-decomposition of the generator failed");

  SpectralReport report;
  const auto& ev = solver.eigenvalues();
  report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), [](const Complex& a, const Complex& b) {
    const double ra = std::abs(a.real());
    const double rb = std::abs(b.real());
    if (ra != rb) return ra < rb;
    return a.imag() < b.imag();
  });

  double radius = 0.0;
  for (const auto& z : report.eigenvalues) radius = std::max(radius, std::abs(z));
  report.zero_mode.resize(report.eigenvalues.size());
  for (std::size_t k = 0; k < report.eigenvalues.size(); ++k) {
    report.zero_mode[k] = radius == 0.0 || std::abs(report.eigenvalues[k]) < options.zero_tol * radius;
    if (report.zero_mode[k]) ++report.zero_mode_count;
  }

  std::size_t nn = report.eigenvalues.size();
  for (std::size_t k = 0; k < report.eigenvalues.size(); ++k)
    if (!report.zero_mode[k]) {
      nn = k;
      break;
    }
  if (nn == report.eigenvalues.size()) return report;
  const double nn_rate = std::abs(report.eigenvalues[nn].real());
  for (std::size_t k = nn + 1; k < report.eigenvalues.size(); ++k) {
    if (report.zero_mode[k]) continue;
    const double rate = std::abs(report.eigenvalues[k].real());
    if (rate > nn_rate * (1.0 + options.degeneracy_tol) && rate > nn_rate) {
      report.has_gap = true;
      report.lambda_nn = report.eigenvalues[nn];
      report.lambda_nnn = report.eigenvalues[k];
      report.t_pre_spectral = 1.0 / std::abs(report.lambda_nnn.real() - report.lambda_nn.real());
      break;
    }
  }
  return report;
}

SpectralReport spectral_lifetime(const Superoperator& generator, const SpectralOptions& options) {
  SpectralReport report = liouvillian_spectrum(generator, options);
  if (!report.has_gap) throw NoSpectralGapError("no gap: non-zero eigenvalues share a single decay rate");
  return report;
}

SpectrumF fourier_spectrum(std::span<const double> times, std::span<const double> values) {
  const std::size_t n = times.size();
  if (values.size() != n) throw std::invalid_argument("fourier_spectrum: times and values differ in length");
  if (n < 64) throw std::invalid_argument("fourier_spectrum: need at least 64 samples, got " + std::to_string(n));

  const double t0 = times.front();
  const double span = times.back() - t0;
  if (!(span > 0.0)) throw std::invalid_argument("fourier_spectrum: time grid has zero extent");
  const double dt = span / static_cast<double>(n - 1);

  bool uniform = true;
  for (std::size_t k = 1; k < n && uniform; ++k) uniform = std::abs((times[k] - times[k - 1]) - dt) <= 1e-6 * dt;

  std::vector<Complex> samples(n);
  if (uniform) {
    for (std::size_t k = 0; k < n; ++k) samples[k] = values[k];
  } else {
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double tk = t0 + dt * static_cast<double>(k);
      while (j + 2 < n && times[j + 1] < tk) ++j;
      const double f = std::clamp((tk - times[j]) / (times[j + 1] - times[j]), 0.0, 1.0);
      samples[k] = values[j] + f * (values[j + 1] - values[j]);
    }
  }

  Eigen::FFT<double> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, samples);

  SpectrumF out;
  out.sample_spacing = dt;
  out.frequencies.resize(n);
  out.magnitude.resize(n);
  const std::size_t negative = n / 2;  // bins shifted to negative frequency
  const double dw = kTwoPi / (static_cast<double>(n) * dt);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = (k + n - negative) % n;
    const long long index = static_cast<long long>(src) - (src >= n - negative ? static_cast<long long>(n) : 0LL);
    out.frequencies[k] = dw * static_cast<double>(index);
    out.magnitude[k] = dt * std::abs(spectrum[src]);
  }
  out.peak_height = dt * std::abs(spectrum[0]);
  const auto peak = std::max_element(out.magnitude.begin(), out.magnitude.end());
  out.peak_frequency = out.frequencies[static_cast<std::size_t>(peak - out.magnitude.begin())];
  return out;
}

SpectrumF fourier_spectrum(const Trajectory& trajectory) {
  const std::vector<double> mx = trajectory.mx();
  return fourier_spectrum(trajectory.times, mx);
}

}  // namespace frqme
