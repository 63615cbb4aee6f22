#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "frqme/analysis.hpp"
#include "frqme/errors.hpp"
#include "oracles.hpp"

using namespace frqme;
using oracle::cd;

namespace {

Trajectory synthetic(const std::vector<double>& times, auto&& f) {
  Trajectory t;
  t.times = times;
  for (double x : times) {
    Observables o;
    o.mx = f(x);
    t.samples.push_back(o);
  }
  return t;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g = {0.0};
  const auto rest = oracle::logspace(std::log10(lo), std::log10(hi), n - 1);
  g.insert(g.end(), rest.begin(), rest.end());
  return g;
}

}  // namespace

TEST_CASE("constant trajectory is one long plateau") {
  const Trajectory t = synthetic(log_grid(1e-6, 1.0, 200), [](double) { return 0.37; });
  const PlateauReport r = detect_plateau(t, 1e-3);
  CHECK(r.plateau_found);
  CHECK(r.t_pre == doctest::Approx(1e-6));
  CHECK(r.mx_pre == doctest::Approx(0.37));
  CHECK(std::isinf(r.t_th));
}

TEST_CASE("synthetic prethermal trajectory") {
  const double t_pre = 1e-3, t_th = 1.0, kappa = 2e4;
  auto f = [&](double t) {
    return (0.64 + 0.36 * std::cos(kappa * t) * std::exp(-t / t_pre)) * std::exp(-t / t_th);
  };
  const Trajectory t = synthetic(log_grid(1e-6, 20.0, 2000), f);
  const PlateauReport r = detect_plateau(t, t_pre);
  REQUIRE(r.plateau_found);
  CHECK(r.mx_pre == doctest::Approx(0.64).epsilon(0.01));
  CHECK(r.t_pre > t_pre);
  CHECK(r.t_pre < 0.1 * t_th);
  CHECK(r.t_th == doctest::Approx(t_th).epsilon(0.05));
  CHECK(r.t_th > r.t_pre);
  CHECK(r.fractional_lifetime == doctest::Approx((r.t_th - r.t_pre) / r.t_pre));
  CHECK(r.mx_final == doctest::Approx(f(20.0)));
}

TEST_CASE("plateau report is stable under doubling the grid resolution") {
  auto f = [](double t) { return (0.5 + 0.5 * std::cos(3e4 * t) * std::exp(-t / 2e-3)) * std::exp(-t / 3.0); };
  const PlateauReport coarse = detect_plateau(synthetic(log_grid(1e-6, 30.0, 1500), f), 2e-3);
  const PlateauReport fine = detect_plateau(synthetic(log_grid(1e-6, 30.0, 3000), f), 2e-3);
  REQUIRE(coarse.plateau_found);
  REQUIRE(fine.plateau_found);
  CHECK(fine.t_pre == doctest::Approx(coarse.t_pre).epsilon(0.05));
  CHECK(fine.t_th == doctest::Approx(coarse.t_th).epsilon(0.05));
  CHECK(fine.mx_pre == doctest::Approx(coarse.mx_pre).epsilon(0.05));
  CHECK(fine.fractional_lifetime == doctest::Approx(coarse.fractional_lifetime).epsilon(0.05));
}

TEST_CASE("model trajectories: crystalline plateau and amorphous absence") {
  SimParams p = reference_params();
  const auto grid = default_time_grid(p);
  const PlateauReport crystalline =
      detect_plateau(evolve(build_generators(p), initial_state_x(), grid), analytic_prethermal_time(p));
  CHECK(crystalline.plateau_found);
  CHECK(crystalline.mx_pre == doctest::Approx(0.64).epsilon(0.01));

  p.tau_c = 0.5 / p.omega0;
  const PlateauReport amorphous = detect_plateau(
      evolve(build_generators(p), initial_state_x(), default_time_grid(p)), analytic_prethermal_time(p));
  CHECK_FALSE(amorphous.plateau_found);
  CHECK_THROWS_AS(fractional_lifetime(amorphous), NoPlateauError);
}

TEST_CASE("insufficient horizon is an explicit error") {
  const Trajectory t = synthetic(log_grid(1e-6, 1e-3, 100), [](double) { return 1.0; });
  CHECK_THROWS_AS(detect_plateau(t, 1e-3), InsufficientHorizonError);
  CHECK_NOTHROW(detect_plateau(t, 1e-4));
}

TEST_CASE("fractional lifetime") {
  PlateauReport r;
  r.plateau_found = true;
  r.t_pre = 0.25;
  r.t_th = 0.5;
  CHECK(fractional_lifetime(r) == 1.0);
  r.plateau_found = false;
  CHECK_THROWS_AS(fractional_lifetime(r), NoPlateauError);
}

TEST_CASE("spectral lifetime on a synthetic diagonal generator") {
  Superoperator d = Superoperator::Zero();
  const double rates[16] = {0, 0, -0.5, -0.5, -2.0, -3, -4, -5, -6, -7, -8, -9, -10, -11, -12, -13};
  for (int k = 0; k < 16; ++k) d(k, k) = rates[k];
  d(6, 6) = cd(-4.0, 100.0);
  const SpectralReport r = spectral_lifetime(d);
  CHECK(r.zero_mode_count == 2);
  CHECK(r.has_gap);
  CHECK(r.lambda_nn.real() == doctest::Approx(-0.5));
  CHECK(r.lambda_nnn.real() == doctest::Approx(-2.0));
  CHECK(r.t_pre_spectral == doctest::Approx(1.0 / 1.5));
  for (std::size_t k = 1; k < r.eigenvalues.size(); ++k)
    CHECK(std::abs(r.eigenvalues[k].real()) >= std::abs(r.eigenvalues[k - 1].real()));
}

TEST_CASE("degenerate decay rates have no gap") {
  Superoperator d = Superoperator::Zero();
  for (int k = 1; k < 16; ++k) d(k, k) = cd(-2.0, static_cast<double>(k % 3));
  CHECK_THROWS_AS(spectral_lifetime(d), NoSpectralGapError);
  const SpectralReport r = liouvillian_spectrum(d);
  CHECK_FALSE(r.has_gap);
  CHECK(r.zero_mode_count == 1);
}

TEST_CASE("spectral lifetime of the reference generator matches an independent eigensolve") {
  const GeneratorSet g = build_generators(reference_params());
  const SpectralReport r = spectral_lifetime(g);
  CHECK(r.zero_mode_count == 2);

  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(g.total));
  std::vector<double> decay;
  for (Eigen::Index k = 0; k < 16; ++k) decay.push_back(-es.eigenvalues()(k).real());
  std::sort(decay.begin(), decay.end());
  // Two zero modes, then the two slowest decays.
  CHECK(std::abs(decay[1]) < 1e-9 * std::abs(decay.back()));
  CHECK(r.t_pre_spectral == doctest::Approx(1.0 / (decay[3] - decay[2])).epsilon(1e-9));
  for (const Complex& z : r.eigenvalues) CHECK(z.real() <= 1e-9);
}

TEST_CASE("fourier spectrum of a constant is a single zero-frequency line") {
  const auto t = oracle::linspace(0.0, 1.0, 128);
  const std::vector<double> x(128, 2.5);
  const SpectrumF s = fourier_spectrum(t, x);
  const double dt = 1.0 / 127.0;
  CHECK(s.peak_height == doctest::Approx(2.5 * 128 * dt));
  CHECK(s.peak_frequency == 0.0);
  CHECK(s.sample_spacing == doctest::Approx(dt));
  for (std::size_t k = 0; k < s.magnitude.size(); ++k)
    if (s.frequencies[k] != 0.0) CHECK(s.magnitude[k] < 1e-12);
}

TEST_CASE("fourier spectrum of a cosine peaks at +-kappa with nothing at zero") {
  const std::size_t n = 256;
  const double dt = 1e-3;
  const double kappa = 2.0 * M_PI * 20.0 / (static_cast<double>(n) * dt);
  std::vector<double> t(n), x(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = dt * static_cast<double>(k);
    x[k] = std::cos(kappa * t[k]);
  }
  const SpectrumF s = fourier_spectrum(t, x);
  CHECK(std::abs(s.peak_frequency) == doctest::Approx(kappa));
  CHECK(s.peak_height < 1e-12);
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(std::abs(s.frequencies[k]) - kappa) < 1e-6 * kappa)
      CHECK(s.magnitude[k] == doctest::Approx(0.5 * n * dt));
  }
  for (std::size_t k = 1; k < n; ++k) CHECK(s.frequencies[k] > s.frequencies[k - 1]);
}

TEST_CASE("property: fourier spectrum equals a naive DFT and satisfies Parseval") {
  oracle::Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(64, 400));
    const double dt = rng.log_uniform(1e-6, 1.0);
    std::vector<double> t(n), x(n);
    for (std::size_t k = 0; k < n; ++k) {
      t[k] = dt * static_cast<double>(k);
      x[k] = rng.normal() + 0.3;
    }
    const SpectrumF s = fourier_spectrum(t, x);
    const auto ref = oracle::naive_dft(x);
    CHECK(s.peak_height == doctest::Approx(dt * std::abs(ref[0])).epsilon(1e-10));

    double time_energy = 0.0, freq_energy = 0.0, ref_energy = 0.0;
    for (double v : x) time_energy += v * v;
    for (double m : s.magnitude) freq_energy += m * m;
    for (const cd& z : ref) ref_energy += std::norm(z) * dt * dt;
    const double parseval = dt * dt * static_cast<double>(n) * time_energy;
    CHECK(std::abs(freq_energy - parseval) <= 1e-8 * parseval);
    CHECK(std::abs(freq_energy - ref_energy) <= 1e-8 * ref_energy);
    for (double m : s.magnitude) CHECK(m >= 0.0);
  }
}

TEST_CASE("fourier spectrum resamples log grids and rejects short input") {
  const auto t = log_grid(1e-4, 1.0, 500);
  std::vector<double> x;
  for (double v : t) x.push_back(1.0 - v);
  const SpectrumF s = fourier_spectrum(t, x);
  // Linear interpolation is exact for a linear signal: integral of (1 - t) over [0, 1] is 1/2.
  CHECK(s.peak_height == doctest::Approx(0.5 * 500.0 / 499.0).epsilon(1e-9));

  const auto short_t = oracle::linspace(0.0, 1.0, 63);
  const std::vector<double> short_x(63, 1.0);
  CHECK_THROWS_AS(fourier_spectrum(short_t, short_x), std::invalid_argument);
}
