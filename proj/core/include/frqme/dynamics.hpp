#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "frqme/liouvillian.hpp"
#include "frqme/types.hpp"

namespace frqme {

/// A validated two-spin density operator: Hermitian, unit trace, and
/// positive semidefinite to within integration tolerance.
class DensityState {
 public:
  explicit DensityState(const Operator& rho);

  const Operator& matrix() const noexcept { return rho_; }

 private:
  Operator rho_;
};

/// (I_d/2 + I_x) (x) (I_d/2 + I_x): both spins fully polarized along +x.
DensityState initial_state_x();

struct Observables {
  double mx = 0.0;
  double my = 0.0;
  double mz = 0.0;
  // correlations(a, b) = Tr(rho I_a^1 I_b^2), a, b in {x, y, z}.
  std::array<std::array<double, 3>, 3> correlations{};
  double trace = 0.0;
  double purity = 0.0;
  double min_eigenvalue = 0.0;
  double hermiticity_defect = 0.0;

  double mxx() const { return correlations[0][0]; }
  double myy() const { return correlations[1][1]; }
  double mzz() const { return correlations[2][2]; }
  /// Tr(rho (Iy1 Iz2 + Iz1 Iy2)), the symmetric y-z correlation.
  double myz() const { return correlations[1][2] + correlations[2][1]; }
};

Observables observables(const Operator& rho);

struct Trajectory {
  std::vector<double> times;
  std::vector<Observables> samples;

  std::vector<double> mx() const;
};

enum class Propagator {
  matrix_exponential,  // exact step propagator exp(L dt), reused on uniform steps
  adaptive_rk,         // Dormand-Prince 5(4) with dense output
};

struct EvolveOptions {
  Propagator method = Propagator::matrix_exponential;
  double abs_tol = 1e-12;  // adaptive_rk only
  double rel_tol = 1e-10;  // adaptive_rk only
};

/// Propagates vec(rho) under d/dt vec(rho) = L vec(rho) and records
/// observables at each grid time. `times` must start at 0 and increase
/// strictly. Throws NumericalError on non-finite states.
Trajectory evolve(const Superoperator& generator, const DensityState& rho0, std::span<const double> times,
                  const EvolveOptions& options = {});

inline Trajectory evolve(const GeneratorSet& generators, const DensityState& rho0, std::span<const double> times,
                         const EvolveOptions& options = {}) {
  return evolve(generators.total, rho0, times, options);
}

// Reduced observable systems for the secular generator (alpha = 0) and the
// non-secular generator, integrated exactly as 4x4 linear ODEs.
struct ReducedSecularState {
  double mx = 1.0;
  double mzz = 0.0;
  double myy = 0.0;
  double myz = 0.0;
};

struct ReducedNonsecularState {
  double mx = 1.0;
  double mzz = 0.0;
  double myy = 0.0;
  double mxx = 0.25;
};

/// Rate matrix of (M_x, M_zz, M_yy, M_yz) under the secular generator.
Eigen::Matrix4d reduced_secular_matrix(const SimParams& params);
/// Rate matrix of (M_x, M_zz, M_yy, M_xx) under the non-secular generator.
Eigen::Matrix4d reduced_nonsecular_matrix(const SimParams& params);

/// Throws std::invalid_argument when alpha != 0.
std::vector<ReducedSecularState> evolve_reduced_secular(const SimParams& params, const ReducedSecularState& init,
                                                        std::span<const double> times);
std::vector<ReducedNonsecularState> evolve_reduced_nonsecular(const SimParams& params,
                                                              const ReducedNonsecularState& init,
                                                              std::span<const double> times);

/// kappa^2 = 4 w1^2 + 9 w_{d,0}^2 / 4.
double kappa_squared(const SimParams& params);

/// R_n = (5/2) p_1 + p_2, the decay rate of M_x under the non-secular generator.
double thermal_decay_rate(const SimParams& params);

/// 1 / (kappa^2 tau_c); +inf when kappa vanishes.
double analytic_prethermal_time(const SimParams& params);
/// 1 / R_n; +inf when R_n vanishes.
double analytic_thermal_time(const SimParams& params);
/// 16 w1^2 / (16 w1^2 + 9 w_d^2) = 4 w1^2 / kappa^2.
double analytic_plateau_fraction(const SimParams& params);

/// Closed-form M_x(t) for alpha = 0:
///   M_x(0) [4 w1^2/k^2 + (9 w_d^2 / 4 k^2) cos(k t) exp(-k^2 t tau_c)] exp(-R_n t).
/// Throws std::invalid_argument when alpha != 0.
double analytic_mx(const SimParams& params, double t, double mx0 = 1.0);

struct TimeGridSpec {
  std::size_t points = 2000;
  std::optional<double> t_min;  // first positive time (s)
  std::optional<double> t_max;  // horizon (s)

  bool operator==(const TimeGridSpec&) const = default;
};

/// t = 0 followed by `points - 1` log-spaced times from 1e-3 / (kappa^2 tau_c)
/// to max(10 / R_n, 100 / (kappa^2 tau_c)) (explicit bounds override).
std::vector<double> default_time_grid(const SimParams& params, const TimeGridSpec& spec = {});

/// n points k * t_end / (n - 1), k = 0..n-1.
std::vector<double> uniform_time_grid(double t_end, std::size_t n);

}  // namespace frqme
