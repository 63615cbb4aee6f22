#pragma once

#include <Eigen/Dense>

#include "frqme/types.hpp"

namespace frqme {

/// Matrix exponential by scaling and squaring with a [13/13] Pade
/// approximant (lower orders are used when the 1-norm allows).
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

Superoperator expm(const Superoperator& a);

/// Largest deviation from Hermiticity, max |A - A^dag| entrywise.
double hermiticity_defect(const Eigen::MatrixXcd& a);

}  // namespace frqme
