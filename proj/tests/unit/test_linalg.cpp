#include <doctest.h>

#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "frqme/errors.hpp"
#include "frqme/linalg.hpp"
#include "oracles.hpp"

using frqme::expm;

namespace {

double rel_err(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("expm of zero and of diagonal matrices") {
  CHECK(expm(Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(5, 5))).isApprox(Eigen::MatrixXcd::Identity(5, 5), 1e-15));

  Eigen::VectorXcd d(4);
  d << oracle::cd(-3.0, 2.0), oracle::cd(0.5, 0.0), oracle::cd(0.0, -40.0), oracle::cd(-200.0, 1.0);
  const Eigen::MatrixXcd e = expm(Eigen::MatrixXcd(d.asDiagonal()));
  for (int k = 0; k < 4; ++k) CHECK(std::abs(e(k, k) - std::exp(d(k))) <= 1e-13 * std::max(1.0, std::abs(std::exp(d(k)))));
  CHECK((e - Eigen::MatrixXcd(e.diagonal().asDiagonal())).norm() == doctest::Approx(0.0));
}

TEST_CASE("expm agrees with Eigen's MatrixFunctions across norm scales") {
  oracle::Rng rng(11);
  for (double scale : {1e-6, 1e-2, 0.3, 1.0, 5.0, 50.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::Index n = rng.integer(2, 16);
      const Eigen::MatrixXcd a = rng.complex_matrix(n, scale / std::sqrt(static_cast<double>(n)));
      const Eigen::MatrixXcd ref = a.exp();
      CHECK(rel_err(expm(a), ref) < 1e-11);
    }
  }
}

TEST_CASE("expm of anti-Hermitian matrices is unitary") {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXcd h = rng.hermitian(4, rng.log_uniform(1e-3, 1e3));
    const Eigen::MatrixXcd u = expm(Eigen::MatrixXcd(oracle::cd(0.0, -1.0) * h));
    CHECK((u * u.adjoint() - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-10);
  }
}

TEST_CASE("expm semigroup property exp(A) = exp(A/2)^2") {
  oracle::Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXcd a = rng.complex_matrix(6, 0.8);
    const Eigen::MatrixXcd half = expm(Eigen::MatrixXcd(a * 0.5));
    CHECK(rel_err(half * half, expm(a)) < 1e-12);
  }
}

TEST_CASE("fixed-size superoperator overload matches the dynamic one") {
  oracle::Rng rng(14);
  const Eigen::MatrixXcd a = rng.complex_matrix(16, 0.4);
  const frqme::Superoperator fixed = a;
  CHECK(rel_err(Eigen::MatrixXcd(expm(fixed)), expm(a)) < 1e-14);
}

TEST_CASE("expm rejects non-finite input and non-square shapes") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(3, 3);
  a(1, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(expm(a), frqme::NumericalError);
  a(1, 2) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(expm(a), frqme::NumericalError);
  CHECK_THROWS(expm(Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(2, 3))));
}

TEST_CASE("hermiticity_defect") {
  oracle::Rng rng(15);
  const Eigen::MatrixXcd h = rng.hermitian(4);
  CHECK(frqme::hermiticity_defect(h) == doctest::Approx(0.0));
  Eigen::MatrixXcd g = h;
  g(0, 1) += 0.25;
  CHECK(frqme::hermiticity_defect(g) == doctest::Approx(0.25));
}
