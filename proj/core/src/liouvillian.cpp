#include "frqme/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frqme {

void SimParams::validate() const {
  if (!(tau_c > 0.0) || !std::isfinite(tau_c)) throw std::invalid_argument("tau_c must be positive and finite");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw std::invalid_argument("omega0 must be positive and finite");
  if (!(m_th >= -1.0 && m_th <= 1.0)) throw std::invalid_argument("m_th must lie in [-1, 1]");
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
  if (!std::isfinite(omega1) || !std::isfinite(omega_sl) || !std::isfinite(omega_l))
    throw std::invalid_argument("frequencies must be finite");
  for (const auto& w : omega_d)
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw std::invalid_argument("dipolar amplitudes must be finite");
  const double scale = std::max(1.0, std::abs(omega_d[2]));
  if (std::abs(omega_d[2].imag()) > 1e-12 * scale) throw std::invalid_argument("w_{d,0} must be real");
  for (int m = 1; m <= 2; ++m) {
    const Complex expected = (m % 2 == 0 ? 1.0 : -1.0) * std::conj(omega_d[static_cast<std::size_t>(m + 2)]);
    const Complex actual = omega_d[static_cast<std::size_t>(2 - m)];
    const double tol = 1e-9 * std::max(1.0, std::abs(expected));
    if (std::abs(actual - expected) > tol)
      throw std::invalid_argument("dipolar amplitudes must satisfy w_{d,-m} = (-1)^m conj(w_{d,m})");
  }
}

DipolarAmplitudes scalar_dipolar_amplitudes(double omega_d) {
  return {Complex{omega_d}, Complex{-omega_d}, Complex{omega_d}, Complex{omega_d}, Complex{omega_d}};
}

SimParams reference_params() {
  SimParams p;
  p.omega_d = scalar_dipolar_amplitudes(kTwoPi * 5.0e3);
  return p;
}

double spectral_weight(int m, double omega0, double tau_c) {
  const double x = m * omega0 * tau_c;
  return 1.0 / (1.0 + x * x);
}

double nonsecular_rate(const SimParams& params, int m) {
  const double amp = params.dipolar_magnitude(m);
  return amp * amp * params.tau_c * spectral_weight(m, params.omega0, params.tau_c);
}

TransitionProbabilities transition_probabilities(const SimParams& params) {
  const double detuning = params.omega_l - params.omega0;
  const double base = params.omega_sl * params.omega_sl * params.tau_c /
                      (1.0 + detuning * detuning * params.tau_c * params.tau_c);
  return {base * (1.0 - params.m_th), base * (1.0 + params.m_th)};
}

RelaxationScales relaxation_scales(const SimParams& params, double omega_sec) {
  const double filter = 1.0 + params.omega0 * params.omega0 * params.tau_c * params.tau_c;
  RelaxationScales r;
  r.secular = omega_sec * omega_sec * params.tau_c;
  r.nonsecular = r.secular / filter;
  r.system_bath = params.omega_sl * params.omega_sl * params.tau_c / filter;
  return r;
}

Operator build_secular_hamiltonian(const SimParams& params) {
  return params.omega1 * total_spin_op(Axis::x) + params.secular_dipolar() * spherical_tensor(0) +
         params.alpha * total_spin_op(Axis::z);
}

Superoperator build_secular_generator(const SimParams& params) {
  const Operator h = build_secular_hamiltonian(params);
  return commutator_superop(h) + params.tau_c * double_commutator_superop(h);
}

Superoperator build_nonsecular_generator(const SimParams& params) {
  Superoperator out = Superoperator::Zero();
  for (int m : {-2, -1, 1, 2}) {
    const double rate = nonsecular_rate(params, m);
    if (rate == 0.0) continue;
    const Operator jump = spherical_tensor(-m);
    out += rate * dissipator_superop(jump, jump.adjoint());
  }
  return out;
}

Superoperator build_system_bath_generator(const SimParams& params) {
  const TransitionProbabilities p = transition_probabilities(params);
  Superoperator out = Superoperator::Zero();
  for (int spin = 0; spin < 2; ++spin) {
    const Operator lower = spin_op(Axis::minus, spin);
    const Operator raise = spin_op(Axis::plus, spin);
    out += p.down * dissipator_superop(lower, raise) + p.up * dissipator_superop(raise, lower);
  }
  return out;
}

GeneratorSet build_generators(const SimParams& params) {
  params.validate();
  GeneratorSet g;
  g.secular = build_secular_generator(params);
  g.nonsecular = params.include_nonsecular ? build_nonsecular_generator(params) : Superoperator::Zero();
  g.system_bath = params.include_system_bath ? build_system_bath_generator(params) : Superoperator::Zero();
  g.total = g.secular + g.nonsecular + g.system_bath;
  return g;
}

std::size_t count_zero_modes(const Superoperator& generator, double rel_tol) {
  Eigen::ComplexEigenSolver<Superoperator> solver(generator, false);
  const auto& ev = solver.eigenvalues();
  const double radius = ev.cwiseAbs().maxCoeff();
  if (radius == 0.0) return 16;
  std::size_t count = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (std::abs(ev[k]) < rel_tol * radius) ++count;
  return count;
}

Operator adjoint_action(const Superoperator& generator, const Operator& observable) {
  // <A>(rho) = vec(A^dag)^dag vec(rho); d<A>/dt = vec(A^dag)^dag L vec(rho).
  const LiouvilleVector a = vectorize(Operator(observable.adjoint()));
  const LiouvilleVector x = generator.adjoint() * a;
  return devectorize(x).adjoint();
}

Eigen::Matrix<Complex, 1, 16> trace_functional() {
  return vectorize(Operator(Operator::Identity())).transpose();
}

}  // namespace frqme
