#pragma once

// Generators of the spin-locked two-spin master equation in the rotating
// frame: secular coherent+fluctuation part, non-secular dipolar dissipator,
// and the system-bath (T1) dissipator.

#include <cstddef>

#include "frqme/operators.hpp"
#include "frqme/types.hpp"

namespace frqme {

struct SimParams {
  double omega0 = kTwoPi * 1.0e7;   // Zeeman frequency (rad/s)
  double omega1 = kTwoPi * 5.0e3;   // drive amplitude (rad/s)
  DipolarAmplitudes omega_d{};      // w_{d,m}, index m + 2 (rad/s)
  double alpha = 0.0;               // chemical shift on both spins (rad/s)
  double tau_c = 1.0e-6;            // bath correlation time (s)
  double omega_sl = 0.0;            // system-bath coupling (rad/s)
  double omega_l = kTwoPi * 1.0e7;  // bath frequency (rad/s)
  double m_th = 0.0;                // equilibrium magnetization in [-1, 1]
  bool include_nonsecular = true;
  bool include_system_bath = false;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  double secular_dipolar() const { return omega_d[2].real(); }
  double dipolar_magnitude(int m) const { return std::abs(omega_d[static_cast<std::size_t>(m + 2)]); }
};

/// Scalar convention: w_{d,0} = w_d and |w_{d,+-1}| = |w_{d,+-2}| = w_d, with
/// phases chosen so that w_{d,-m} = (-1)^m conj(w_{d,m}).
DipolarAmplitudes scalar_dipolar_amplitudes(double omega_d);

/// Reference setting: w1 = w_d = 2 pi x 5 kHz, tau_c = 1 us, w0 = 2 pi x 10 MHz.
SimParams reference_params();

/// Z(m) = 1 / (1 + (m w0 tau_c)^2).
double spectral_weight(int m, double omega0, double tau_c);

/// p_m = |w_{d,m}|^2 tau_c Z(m).
double nonsecular_rate(const SimParams& params, int m);

struct TransitionProbabilities {
  double down = 0.0;  // P_-
  double up = 0.0;    // P_+
  double inverse_t1() const { return down + up; }
};

/// P_+- = w_SL^2 tau_c (1 +- M_th) / (1 + (w_L - w0)^2 tau_c^2). Shift terms
/// (imaginary parts of the kernel integral) are dropped.
TransitionProbabilities transition_probabilities(const SimParams& params);

/// Order-of-magnitude relaxation rates of the three generators for a given
/// average local interaction strength w_sec (rad/s).
struct RelaxationScales {
  double secular = 0.0;      // w_sec^2 tau_c
  double nonsecular = 0.0;   // w_sec^2 tau_c / (1 + w0^2 tau_c^2)
  double system_bath = 0.0;  // w_SL^2 tau_c / (1 + w0^2 tau_c^2)
};
RelaxationScales relaxation_scales(const SimParams& params, double omega_sec);

/// w1 (Ix1 + Ix2) + w_{d,0} T^0 + alpha (Iz1 + Iz2).
Operator build_secular_hamiltonian(const SimParams& params);

/// -i [H, .] - tau_c [H, [H, .]] with H the secular Hamiltonian.
Superoperator build_secular_generator(const SimParams& params);

/// sum_{m != 0} p_m (2 A rho A^dag - {A^dag A, rho}), A = T^{-m}.
Superoperator build_nonsecular_generator(const SimParams& params);

/// Per-spin T1 dissipator with rates P_- (lowering) and P_+ (raising).
Superoperator build_system_bath_generator(const SimParams& params);

struct GeneratorSet {
  Superoperator secular;
  Superoperator nonsecular;   // zero when disabled
  Superoperator system_bath;  // zero when disabled
  Superoperator total;
};

GeneratorSet build_generators(const SimParams& params);

/// Eigenvalues with |lambda| < rel_tol * spectral radius.
std::size_t count_zero_modes(const Superoperator& generator, double rel_tol = 1e-9);

/// Heisenberg-picture action: the operator X with d<A>/dt = <X> under `generator`.
Operator adjoint_action(const Superoperator& generator, const Operator& observable);

/// Row vector implementing rho -> Tr(rho).
Eigen::Matrix<Complex, 1, 16> trace_functional();

}  // namespace frqme
