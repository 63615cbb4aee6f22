#include <benchmark/benchmark.h>

#include "frqme/analysis.hpp"
#include "frqme/dynamics.hpp"
#include "frqme/linalg.hpp"
#include "frqme/liouvillian.hpp"

namespace {

void BM_Expm16(benchmark::State& state) {
  const frqme::SimParams p = frqme::reference_params();
  const frqme::Superoperator l = frqme::build_generators(p).total * (static_cast<double>(state.range(0)) * 1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(frqme::expm(l));
}
BENCHMARK(BM_Expm16)->Arg(1)->Arg(100)->Arg(10000);

void BM_BuildGenerators(benchmark::State& state) {
  frqme::SimParams p = frqme::reference_params();
  p.include_system_bath = true;
  p.omega_sl = 1e3;
  for (auto _ : state) benchmark::DoNotOptimize(frqme::build_generators(p));
}
BENCHMARK(BM_BuildGenerators);

void BM_EvolveDefaultGrid(benchmark::State& state) {
  const frqme::SimParams p = frqme::reference_params();
  const frqme::GeneratorSet g = frqme::build_generators(p);
  const auto times = frqme::default_time_grid(p, {static_cast<std::size_t>(state.range(0))});
  const frqme::DensityState rho0 = frqme::initial_state_x();
  for (auto _ : state) benchmark::DoNotOptimize(frqme::evolve(g, rho0, times));
}
BENCHMARK(BM_EvolveDefaultGrid)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_EvolveUniformGrid(benchmark::State& state) {
  const frqme::SimParams p = frqme::reference_params();
  const frqme::GeneratorSet g = frqme::build_generators(p);
  const auto times = frqme::uniform_time_grid(10.0 * frqme::analytic_thermal_time(p), 65536);
  const frqme::DensityState rho0 = frqme::initial_state_x();
  for (auto _ : state) benchmark::DoNotOptimize(frqme::evolve(g, rho0, times));
}
BENCHMARK(BM_EvolveUniformGrid)->Unit(benchmark::kMillisecond);

void BM_SpectralLifetime(benchmark::State& state) {
  const frqme::GeneratorSet g = frqme::build_generators(frqme::reference_params());
  for (auto _ : state) benchmark::DoNotOptimize(frqme::spectral_lifetime(g));
}
BENCHMARK(BM_SpectralLifetime);

void BM_FourierSpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto times = frqme::uniform_time_grid(1.0, n);
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = std::cos(40.0 * times[k]);
  for (auto _ : state) benchmark::DoNotOptimize(frqme::fourier_spectrum(times, values));
}
BENCHMARK(BM_FourierSpectrum)->Arg(4096)->Arg(65536);

}  // namespace

BENCHMARK_MAIN();
