#pragma once

// Independent reference implementations and random generators for tests.
// Nothing here calls into the library under test.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Pauli / 2, written out by hand.
inline Mat ix() { Mat m(2, 2); m << 0, 0.5, 0.5, 0; return m; }
inline Mat iy() { Mat m(2, 2); m << 0, cd(0, -0.5), cd(0, 0.5), 0; return m; }
inline Mat iz() { Mat m(2, 2); m << 0.5, 0, 0, -0.5; return m; }
inline Mat id2() { return Mat::Identity(2, 2); }

// Column-major stacking, element by element.
inline Eigen::VectorXcd vec(const Mat& a) {
  Eigen::VectorXcd v(a.size());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) v(j * a.rows() + i) = a(i, j);
  return v;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  Mat complex_matrix(Eigen::Index n, double scale = 1.0) {
    Mat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cd(normal(), normal()) * scale;
    return m;
  }

  Mat hermitian(Eigen::Index n, double scale = 1.0) {
    const Mat a = complex_matrix(n, scale);
    return (a + a.adjoint()) * 0.5;
  }

  // Random full-rank density matrix A A^dag / Tr.
  Mat density(Eigen::Index n) {
    const Mat a = complex_matrix(n);
    const Mat rho = a * a.adjoint();
    return rho / rho.trace();
  }

 private:
  std::mt19937_64 gen_;
};

// O(N^2) DFT, X_k = sum_n x_n exp(-2 pi i k n / N).
inline std::vector<cd> naive_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cd s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -2.0 * M_PI * static_cast<double>((k * j) % n) / static_cast<double>(n);
      s += x[j] * cd(std::cos(ang), std::sin(ang));
    }
    out[k] = s;
  }
  return out;
}

inline std::vector<double> logspace(double lo_exp, double hi_exp, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * static_cast<double>(k) / static_cast<double>(n - 1));
  return out;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  return out;
}

}  // namespace oracle
