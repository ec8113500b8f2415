#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace isoembed {

using Real = double;
using Complex = std::complex<Real>;
using Index = std::int64_t;

using ArrayXr = Eigen::ArrayXd;
using ArrayXc = Eigen::ArrayXcd;
using VectorXr = Eigen::VectorXd;
using VectorXc = Eigen::VectorXcd;
using MatrixXr = Eigen::MatrixXd;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr const char* kVersion = "0.1.0";

}  // namespace isoembed
