#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace hcube {

using RealVector = std::vector<double>;
using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Row-major dense matrix; one point (or one image) per row.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace hcube
