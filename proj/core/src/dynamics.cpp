#include "frqme/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "frqme/errors.hpp"
#include "frqme/linalg.hpp"

namespace frqme {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_times(std::span<const double> times) {
  if (times.empty()) throw std::invalid_argument("time grid is empty");
  if (times.front() != 0.0) throw std::invalid_argument("time grid must start at 0");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw std::invalid_argument("time grid must be strictly increasing");
}

void record(Trajectory& traj, double t, const LiouvilleVector& v) {
  if (!v.allFinite()) throw NumericalError("non-finite density operator at t = " + std::to_string(t) + " s");
  traj.times.push_back(t);
  traj.samples.push_back(observables(devectorize(v)));
}

Trajectory evolve_expm(const Superoperator& generator, const LiouvilleVector& v0, std::span<const double> times) {
  Trajectory traj;
  traj.times.reserve(times.size());
  traj.samples.reserve(times.size());
  LiouvilleVector v = v0;
  record(traj, times[0], v);
  Superoperator step = Superoperator::Identity();
  double cached_dt = -1.0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double dt = times[k] - times[k - 1];
    if (std::abs(dt - cached_dt) > 1e-9 * dt) {
      step = expm(Superoperator(generator * dt));
      cached_dt = dt;
    }
    v = step * v;
    record(traj, times[k], v);
  }
  return traj;
}

Trajectory evolve_adaptive(const Superoperator& generator, const LiouvilleVector& v0, std::span<const double> times,
                           const EvolveOptions& options) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<Complex>;

  State x(v0.data(), v0.data() + 16);
  auto rhs = [&generator](const State& in, State& out, double) {
    const Eigen::Map<const LiouvilleVector> vin(in.data());
    Eigen::Map<LiouvilleVector> vout(out.data());
    vout.noalias() = generator * vin;
  };

  Trajectory traj;
  traj.times.reserve(times.size());
  traj.samples.reserve(times.size());
  auto observer = [&traj](const State& s, double t) {
    record(traj, t, Eigen::Map<const LiouvilleVector>(s.data()));
  };

  const double radius = generator.cwiseAbs().colwise().sum().maxCoeff();
  const double dt0 = radius > 0.0 ? 1e-3 / radius : (times.size() > 1 ? times[1] : 1.0);
  auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), dt0, observer);
  return traj;
}

double ratio_or_inf(double rate) { return rate > 0.0 ? 1.0 / rate : kInf; }

}  // namespace

DensityState::DensityState(const Operator& rho) : rho_(rho) {
  if (!rho.allFinite()) throw std::invalid_argument("density operator has non-finite entries");
  if (hermiticity_defect(rho) > 1e-12) throw std::invalid_argument("density operator is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-12) throw std::invalid_argument("density operator trace differs from 1");
  const Operator herm = 0.5 * (rho + rho.adjoint());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Operator>(herm, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (min_eig < -1e-9) throw std::invalid_argument("density operator is not positive semidefinite");
}

DensityState initial_state_x() {
  const SpinMatrix single = 0.5 * single_spin_op(Axis::identity) + single_spin_op(Axis::x);
  Operator rho;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) rho.block<2, 2>(2 * r, 2 * c) = single(r, c) * single;
  return DensityState(rho);
}

Observables observables(const Operator& rho) {
  static const std::array<Operator, 3> totals = {total_spin_op(Axis::x), total_spin_op(Axis::y),
                                                 total_spin_op(Axis::z)};
  static const std::array<std::array<Operator, 3>, 3> pairs = [] {
    constexpr std::array<Axis, 3> axes = {Axis::x, Axis::y, Axis::z};
    std::array<std::array<Operator, 3>, 3> out;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) out[a][b] = two_spin_op(axes[a], axes[b]);
    return out;
  }();

  auto expect = [&rho](const Operator& op) { return (rho * op).trace().real(); };
  Observables o;
  o.mx = expect(totals[0]);
  o.my = expect(totals[1]);
  o.mz = expect(totals[2]);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) o.correlations[a][b] = expect(pairs[a][b]);
  o.trace = rho.trace().real();
  o.purity = (rho * rho).trace().real();
  o.hermiticity_defect = hermiticity_defect(rho);
  const Operator herm = 0.5 * (rho + rho.adjoint());
  o.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Operator>(herm, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  return o;
}

std::vector<double> Trajectory::mx() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.mx);
  return out;
}

Trajectory evolve(const Superoperator& generator, const DensityState& rho0, std::span<const double> times,
                  const EvolveOptions& options) {
  check_times(times);
  if (!generator.allFinite()) throw NumericalError("generator has non-finite entries");
  const LiouvilleVector v0 = vectorize(rho0.matrix());
  if (options.method == Propagator::adaptive_rk) return evolve_adaptive(generator, v0, times, options);
  return evolve_expm(generator, v0, times);
}

Eigen::Matrix4d reduced_secular_matrix(const SimParams& p) {
  const double w1 = p.omega1;
  const double wd = p.secular_dipolar();
  const double tc = p.tau_c;
  Eigen::Matrix4d a;
  // rows/cols: M_x, M_zz, M_yy, M_yz
  a << -2.25 * wd * wd * tc, 6.0 * w1 * wd * tc, -6.0 * w1 * wd * tc, -3.0 * wd,
      0.75 * w1 * wd * tc, -2.0 * w1 * w1 * tc, 2.0 * w1 * w1 * tc, w1,
      -0.75 * w1 * wd * tc, 2.0 * w1 * w1 * tc, -2.0 * w1 * w1 * tc, -w1,
      0.75 * wd, -2.0 * w1, 2.0 * w1, -(4.0 * w1 * w1 + 2.25 * wd * wd) * tc;
  return a;
}

Eigen::Matrix4d reduced_nonsecular_matrix(const SimParams& p) {
  const double p1 = nonsecular_rate(p, 1);
  const double p2 = nonsecular_rate(p, 2);
  Eigen::Matrix4d a;
  // rows/cols: M_x, M_zz, M_yy, M_xx
  a << -(2.5 * p1 + p2), 0.0, 0.0, 0.0,
      0.0, -2.0 * p1, p1, p1,
      0.0, p1, -(p1 + p2), p2,
      0.0, p1, p2, -(p1 + p2);
  return a;
}

namespace {

template <typename State, typename Pack, typename Unpack>
std::vector<State> evolve_linear4(const Eigen::Matrix4d& rates, const State& init, std::span<const double> times,
                                  Pack pack, Unpack unpack) {
  const Eigen::Vector4d x0 = pack(init);
  const Eigen::MatrixXcd a = rates.cast<Complex>();
  std::vector<State> out;
  out.reserve(times.size());
  for (double t : times) {
    const Eigen::Vector4d x = (expm(Eigen::MatrixXcd(a * t)) * x0.cast<Complex>()).real();
    if (!x.allFinite()) throw NumericalError("reduced system diverged");
    out.push_back(unpack(x));
  }
  return out;
}

}  // namespace

std::vector<ReducedSecularState> evolve_reduced_secular(const SimParams& params, const ReducedSecularState& init,
                                                        std::span<const double> times) {
  if (params.alpha != 0.0) throw std::invalid_argument("reduced secular system requires alpha = 0");
  return evolve_linear4(
      reduced_secular_matrix(params), init, times,
      [](const ReducedSecularState& s) { return Eigen::Vector4d(s.mx, s.mzz, s.myy, s.myz); },
      [](const Eigen::Vector4d& x) { return ReducedSecularState{x[0], x[1], x[2], x[3]}; });
}

std::vector<ReducedNonsecularState> evolve_reduced_nonsecular(const SimParams& params,
                                                              const ReducedNonsecularState& init,
                                                              std::span<const double> times) {
  return evolve_linear4(
      reduced_nonsecular_matrix(params), init, times,
      [](const ReducedNonsecularState& s) { return Eigen::Vector4d(s.mx, s.mzz, s.myy, s.mxx); },
      [](const Eigen::Vector4d& x) { return ReducedNonsecularState{x[0], x[1], x[2], x[3]}; });
}

double kappa_squared(const SimParams& p) {
  const double wd = p.secular_dipolar();
  return 4.0 * p.omega1 * p.omega1 + 2.25 * wd * wd;
}

double thermal_decay_rate(const SimParams& p) { return 2.5 * nonsecular_rate(p, 1) + nonsecular_rate(p, 2); }

double analytic_prethermal_time(const SimParams& p) { return ratio_or_inf(kappa_squared(p) * p.tau_c); }

double analytic_thermal_time(const SimParams& p) { return ratio_or_inf(thermal_decay_rate(p)); }

double analytic_plateau_fraction(const SimParams& p) {
  const double k2 = kappa_squared(p);
  return k2 > 0.0 ? 4.0 * p.omega1 * p.omega1 / k2 : 1.0;
}

double analytic_mx(const SimParams& p, double t, double mx0) {
  if (p.alpha != 0.0) throw std::invalid_argument("analytic M_x(t) requires alpha = 0");
  const double k2 = kappa_squared(p);
  if (k2 == 0.0) return mx0 * std::exp(-thermal_decay_rate(p) * t);
  const double wd = p.secular_dipolar();
  const double kappa = std::sqrt(k2);
  const double plateau = 4.0 * p.omega1 * p.omega1 / k2;
  const double oscillating = 2.25 * wd * wd / k2;
  return mx0 * (plateau + oscillating * std::cos(kappa * t) * std::exp(-k2 * t * p.tau_c)) *
         std::exp(-thermal_decay_rate(p) * t);
}

std::vector<double> default_time_grid(const SimParams& params, const TimeGridSpec& spec) {
  if (spec.points < 3) throw std::invalid_argument("time grid needs at least 3 points");
  const double fast = kappa_squared(params) * params.tau_c;
  double slow = 0.0;
  if (params.include_nonsecular) slow += thermal_decay_rate(params);
  if (params.include_system_bath) slow += transition_probabilities(params).inverse_t1();

  double t_min = 1e-9;
  double t_max = 1.0;
  if (fast > 0.0 && slow > 0.0) {
    t_min = 1e-3 / fast;
    t_max = std::max(10.0 / slow, 1e2 / fast);
  } else if (fast > 0.0) {
    t_min = 1e-3 / fast;
    t_max = 1e4 / fast;
  } else if (slow > 0.0) {
    t_min = 1e-6 / slow;
    t_max = 10.0 / slow;
  }
  if (spec.t_min) t_min = *spec.t_min;
  if (spec.t_max) t_max = *spec.t_max;
  if (!(t_min > 0.0) || !(t_max > t_min)) throw std::invalid_argument("time grid bounds must satisfy 0 < t_min < t_max");

  const std::size_t n = spec.points - 1;
  std::vector<double> times;
  times.reserve(spec.points);
  times.push_back(0.0);
  const double lo = std::log10(t_min);
  const double hi = std::log10(t_max);
  for (std::size_t k = 0; k < n; ++k)
    times.push_back(std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1)));
  return times;
}

std::vector<double> uniform_time_grid(double t_end, std::size_t n) {
  if (n < 2 || !(t_end > 0.0)) throw std::invalid_argument("uniform grid needs n >= 2 and t_end > 0");
  std::vector<double> times(n);
  const double dt = t_end / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) times[k] = dt * static_cast<double>(k);
  return times;
}

}  // namespace frqme
