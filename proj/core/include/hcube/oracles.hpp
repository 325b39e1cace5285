#pragma once

// Slow reference implementations used to cross-check the fast paths. None of
// these call into the FFT or the greedy/selection code they are compared to.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hcube/point_set.hpp"
#include "hcube/types.hpp"

namespace hcube::oracle {

// max over all k-subsets S of (sum_{i in S} x_i^2)^{1/2}. Exponential in
// x.size(); refused above 24 coordinates.
double k_support_norm_subsets(std::span<const double> x, std::size_t k);

// Dense circulant matrix with (Gamma_x y)_j = sum_k x_k y_{(j-k) mod n}.
// Note the roles: Gamma_x[j][k] = x[(j - k) mod n].
Eigen::MatrixXd circulant(std::span<const double> x);

// Smallest number of points of T whose open theta-balls cover T, by
// exhaustive search over subsets in order of size. Refused above 20 points.
std::size_t minimum_net_size(const PointSet& t, double theta);

// sup_{x,y} |(kappa/m) ||A(x - y)||_1 - ||x - y||_2| with A dense.
double l1_concentration_dense(const Eigen::MatrixXd& a, const PointSet& points, double kappa);

}  // namespace hcube::oracle
