#pragma once

// Two-spin operator algebra and Liouville-space machinery.
//
// Spin operators follow I_a = sigma_a / 2. Liouville space uses column-major
// stacking, so vec(A rho B) = (B^T kron A) vec(rho).

#include <array>
#include <string_view>

#include <Eigen/Dense>

#include "frqme/types.hpp"

namespace frqme {

enum class Axis { x, y, z, plus, minus, identity };

Axis parse_axis(std::string_view name);

/// sigma/2 for x, y, z; I_x +- i I_y for plus/minus; the 2x2 identity.
SpinMatrix single_spin_op(Axis axis);

/// Kronecker product single_spin_op(first) (x) single_spin_op(second).
Operator two_spin_op(Axis first, Axis second);

/// Single-spin operator acting on spin `index` (0 or 1) of the pair.
Operator spin_op(Axis axis, int index);

/// I_axis^1 + I_axis^2.
Operator total_spin_op(Axis axis);

/// Rank-2 two-spin tensor of order m in the unnormalized dipolar convention
///   T^0    = 3 Iz1 Iz2 - I1.I2
///   T^{+-1} = -+(Iz1 I+-2 + I+-1 Iz2)
///   T^{+-2} = I+-1 I+-2
/// It obeys [Iz_total, T^m] = m T^m and (T^m)^dag = (-1)^m T^{-m}.
/// Throws std::out_of_range for |m| > 2.
Operator spherical_tensor(int m);

struct DipolarGeometry {
  double r = 1.0;          // inter-spin distance, arbitrary length unit
  double theta = 0.0;      // polar angle (rad)
  double phi = 0.0;        // azimuthal angle (rad)
  double prefactor = 1.0;  // rad/s * length^3

  bool operator==(const DipolarGeometry&) const = default;
};

/// w_{d,m} = prefactor * Y_2^{-m}(theta, phi) / r^3 with Condon-Shortley
/// spherical harmonics. Throws std::invalid_argument on r <= 0 or angles
/// outside theta in [0, pi], phi in [0, 2 pi).
DipolarAmplitudes dipolar_amplitudes(const DipolarGeometry& geometry);

/// Y_2^m(theta, phi), m in [-2, 2].
Complex spherical_harmonic_rank2(int m, double theta, double phi);

LiouvilleVector vectorize(const Operator& op);
Operator devectorize(const LiouvilleVector& v);

// Dynamic-size entry points; throw std::invalid_argument unless 4x4 / length 16.
LiouvilleVector vectorize(const Eigen::MatrixXcd& op);
Operator devectorize(const Eigen::VectorXcd& v);

/// rho -> A rho and rho -> rho B.
Superoperator left_multiplication(const Operator& a);
Superoperator right_multiplication(const Operator& b);

/// rho -> -i [H, rho].
Superoperator commutator_superop(const Operator& h);

/// rho -> -[H, [H, rho]]; equals commutator_superop(h) squared.
Superoperator double_commutator_superop(const Operator& h);

/// rho -> 2 A rho B - {B A, rho}. With B = A^dag this is a Lindblad dissipator.
Superoperator dissipator_superop(const Operator& a, const Operator& b);

/// Hilbert-Schmidt inner product Tr(A^dag B).
Complex hs_inner(const Operator& a, const Operator& b);

/// The 16 product operators I_a (x) I_b, a, b in {x, y, z, identity},
/// ordered with the first spin's axis major.
const std::array<Operator, 16>& product_basis();

/// Coefficients A_ab of rho = sum A_ab I_a (x) I_b in product_basis() order.
std::array<Complex, 16> product_basis_coefficients(const Operator& rho);
Operator from_product_basis(const std::array<Complex, 16>& coefficients);

}  // namespace frqme
