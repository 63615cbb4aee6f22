#include "frqme/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "frqme/errors.hpp"

namespace frqme {
namespace {

using Mat = Eigen::MatrixXcd;

double one_norm(const Mat& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// Pade coefficients b_0..b_m for degrees 3, 5, 7, 9 and the 1-norm bounds
// below which each degree reaches unit roundoff (Higham 2005, Table 2.3).
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                           30270240.0,    2162160.0,    110880.0,     3960.0,
                                           90.0,          1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e+0;
constexpr double kTheta13 = 5.371920351148152e+0;

template <std::size_t N>
Mat pade_low(const Mat& a, const std::array<double, N>& b) {
  // Degree m = N - 1 (odd). U = A * sum_k b_{2k+1} A^{2k}, V = sum_k b_{2k} A^{2k}.
  const auto n = a.rows();
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = a * a;
  Mat power = ident;
  Mat u_inner = Mat::Zero(n, n);
  Mat v = Mat::Zero(n, n);
  for (std::size_t k = 0; 2 * k + 1 < N; ++k) {
    u_inner += b[2 * k + 1] * power;
    v += b[2 * k] * power;
    power = power * a2;
  }
  const Mat u = a * u_inner;
  return (v - u).partialPivLu().solve(v + u);
}

Mat pade13(const Mat& a) {
  const auto n = a.rows();
  const auto& b = kPade13;
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  const Mat u_hi = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  const Mat u = a * (u_hi + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Mat v_hi = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
  const Mat v = v_hi + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  if (!a.allFinite()) throw NumericalError("expm: non-finite matrix entries");
  if (a.rows() == 0) return a;

  const double norm = one_norm(a);
  if (norm <= kTheta3) return pade_low(a, kPade3);
  if (norm <= kTheta5) return pade_low(a, kPade5);
  if (norm <= kTheta7) return pade_low(a, kPade7);
  if (norm <= kTheta9) return pade_low(a, kPade9);

  const int s = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
  const Mat scaled = a / std::ldexp(1.0, s);
  Mat result = pade13(scaled);
  for (int i = 0; i < s; ++i) result = result * result;
  if (!result.allFinite()) throw NumericalError("expm: overflow during squaring");
  return result;
}

Superoperator expm(const Superoperator& a) {
  const Eigen::MatrixXcd dynamic = a;
  return Superoperator(expm(dynamic));
}

double hermiticity_defect(const Eigen::MatrixXcd& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace frqme
