#pragma once

#include <complex>

#include <Eigen/Dense>

namespace superfock {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-10;

}  // namespace superfock
