#include "frqme/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace frqme {
namespace {

const Operator& identity4() {
  static const Operator ident = Operator::Identity();
  return ident;
}

void check_order(int m) {
  if (m < -2 || m > 2) throw std::out_of_range("spherical tensor order out of range: " + std::to_string(m));
}

}  // namespace

Axis parse_axis(std::string_view name) {
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  if (name == "z") return Axis::z;
  if (name == "+" || name == "plus") return Axis::plus;
  if (name == "-" || name == "minus") return Axis::minus;
  if (name == "d" || name == "identity") return Axis::identity;
  throw std::invalid_argument("unknown spin axis: " + std::string(name));
}

SpinMatrix single_spin_op(Axis axis) {
  const Complex i{0.0, 1.0};
  SpinMatrix m = SpinMatrix::Zero();
  switch (axis) {
    case Axis::x:
      m(0, 1) = m(1, 0) = 0.5;
      break;
    case Axis::y:
      m(0, 1) = -0.5 * i;
      m(1, 0) = 0.5 * i;
      break;
    case Axis::z:
      m(0, 0) = 0.5;
      m(1, 1) = -0.5;
      break;
    case Axis::plus:
      m(0, 1) = 1.0;
      break;
    case Axis::minus:
      m(1, 0) = 1.0;
      break;
    case Axis::identity:
      m = SpinMatrix::Identity();
      break;
  }
  return m;
}

Operator two_spin_op(Axis first, Axis second) {
  const SpinMatrix a = single_spin_op(first);
  const SpinMatrix b = single_spin_op(second);
  Operator out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

Operator spin_op(Axis axis, int index) {
  if (index == 0) return two_spin_op(axis, Axis::identity);
  if (index == 1) return two_spin_op(Axis::identity, axis);
  throw std::out_of_range("spin index must be 0 or 1");
}

Operator total_spin_op(Axis axis) { return spin_op(axis, 0) + spin_op(axis, 1); }

Operator spherical_tensor(int m) {
  check_order(m);
  const Operator z1 = spin_op(Axis::z, 0);
  const Operator z2 = spin_op(Axis::z, 1);
  switch (m) {
    case 0: {
      const Operator dot = two_spin_op(Axis::x, Axis::x) + two_spin_op(Axis::y, Axis::y) +
                           two_spin_op(Axis::z, Axis::z);
      return 3.0 * (z1 * z2) - dot;
    }
    case 1:
      return -(z1 * spin_op(Axis::plus, 1) + spin_op(Axis::plus, 0) * z2);
    case -1:
      return z1 * spin_op(Axis::minus, 1) + spin_op(Axis::minus, 0) * z2;
    case 2:
      return spin_op(Axis::plus, 0) * spin_op(Axis::plus, 1);
    default:
      return spin_op(Axis::minus, 0) * spin_op(Axis::minus, 1);
  }
}

Complex spherical_harmonic_rank2(int m, double theta, double phi) {
  check_order(m);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex phase = std::polar(1.0, m * phi);
  switch (m) {
    case 0:
      return 0.25 * std::sqrt(5.0 / kPi) * (3.0 * c * c - 1.0);
    case 1:
      return -0.5 * std::sqrt(15.0 / (2.0 * kPi)) * s * c * phase;
    case -1:
      return 0.5 * std::sqrt(15.0 / (2.0 * kPi)) * s * c * phase;
    default:
      return 0.25 * std::sqrt(15.0 / (2.0 * kPi)) * s * s * phase;
  }
}

DipolarAmplitudes dipolar_amplitudes(const DipolarGeometry& g) {
  if (!(g.r > 0.0)) throw std::invalid_argument("dipolar geometry: r must be positive");
  if (g.theta < 0.0 || g.theta > kPi) throw std::invalid_argument("dipolar geometry: theta outside [0, pi]");
  if (g.phi < 0.0 || g.phi >= kTwoPi) throw std::invalid_argument("dipolar geometry: phi outside [0, 2 pi)");
  const double scale = g.prefactor / (g.r * g.r * g.r);
  DipolarAmplitudes out{};
  for (int m = -2; m <= 2; ++m) out[m + 2] = scale * spherical_harmonic_rank2(-m, g.theta, g.phi);
  return out;
}

LiouvilleVector vectorize(const Operator& op) { return op.reshaped(); }

Operator devectorize(const LiouvilleVector& v) { return v.reshaped(4, 4); }

LiouvilleVector vectorize(const Eigen::MatrixXcd& op) {
  if (op.rows() != 4 || op.cols() != 4) throw std::invalid_argument("vectorize: expected a 4x4 operator");
  return vectorize(Operator(op));
}

Operator devectorize(const Eigen::VectorXcd& v) {
  if (v.size() != 16) throw std::invalid_argument("devectorize: expected a length-16 vector");
  return devectorize(LiouvilleVector(v));
}

Superoperator left_multiplication(const Operator& a) {
  Superoperator s = Superoperator::Zero();
  for (int blk = 0; blk < 4; ++blk) s.block<4, 4>(4 * blk, 4 * blk) = a;
  return s;
}

Superoperator right_multiplication(const Operator& b) {
  // vec(rho B) = (B^T kron I) vec(rho)
  Superoperator s = Superoperator::Zero();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) s.block<4, 4>(4 * r, 4 * c) = b(c, r) * identity4();
  return s;
}

Superoperator commutator_superop(const Operator& h) {
  const Complex i{0.0, 1.0};
  return -i * (left_multiplication(h) - right_multiplication(h));
}

Superoperator double_commutator_superop(const Operator& h) {
  const Superoperator c = commutator_superop(h);
  return c * c;
}

Superoperator dissipator_superop(const Operator& a, const Operator& b) {
  const Operator ba = b * a;
  return 2.0 * left_multiplication(a) * right_multiplication(b) - left_multiplication(ba) -
         right_multiplication(ba);
}

Complex hs_inner(const Operator& a, const Operator& b) { return (a.adjoint() * b).trace(); }

const std::array<Operator, 16>& product_basis() {
  static const std::array<Operator, 16> basis = [] {
    constexpr std::array<Axis, 4> axes = {Axis::x, Axis::y, Axis::z, Axis::identity};
    std::array<Operator, 16> out;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) out[4 * a + b] = two_spin_op(axes[a], axes[b]);
    return out;
  }();
  return basis;
}

std::array<Complex, 16> product_basis_coefficients(const Operator& rho) {
  const auto& basis = product_basis();
  std::array<Complex, 16> out;
  for (std::size_t k = 0; k < 16; ++k) out[k] = hs_inner(basis[k], rho) / hs_inner(basis[k], basis[k]);
  return out;
}

Operator from_product_basis(const std::array<Complex, 16>& coefficients) {
  const auto& basis = product_basis();
  Operator out = Operator::Zero();
  for (std::size_t k = 0; k < 16; ++k) out += coefficients[k] * basis[k];
  return out;
}

}  // namespace frqme
