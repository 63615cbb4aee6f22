#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace frqme {

using Complex = std::complex<double>;

// Single-spin (2x2) and two-spin (4x4) Hilbert-space operators.
using SpinMatrix = Eigen::Matrix2cd;
using Operator = Eigen::Matrix4cd;

// Linear maps on column-stacked 4x4 operators.
using Superoperator = Eigen::Matrix<Complex, 16, 16>;
using LiouvilleVector = Eigen::Matrix<Complex, 16, 1>;

// Dipolar amplitudes w_{d,m} for m = -2..2, stored at index m + 2 (rad/s).
using DipolarAmplitudes = std::array<Complex, 5>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace frqme
