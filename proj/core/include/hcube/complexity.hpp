#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hcube/point_set.hpp"

namespace hcube {

struct ComplexityEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

// ||x||_[k]: l2 norm of the k largest-magnitude coordinates. O(n) selection.
double k_support_norm(std::span<const double> x, std::size_t k);

// Monte Carlo estimate of E sup_{x in T} |<G, x>|. Trial t draws its G from
// (seed, t) only, so two sets of the same dimension estimated with the same
// seed see the same Gaussian vectors.
ComplexityEstimate gaussian_mean_width(const PointSet& t, std::size_t trials, std::uint64_t seed);

// Squared width l*^2((T - T) cap theta B_2^n), the zero vector included.
// The difference set is materialized up to `materialize_limit` pairs;
// beyond that the supremum is streamed from per-point projections. Both
// paths use the same Gaussian draws. std_error is propagated to the square.
ComplexityEstimate localized_width(const PointSet& t, double theta, std::size_t trials,
                                   std::uint64_t seed,
                                   std::size_t materialize_limit = std::size_t{1} << 16);

// Row indices of a theta-net of T: every point lies at distance < theta
// from some net point. Greedy maximum-coverage selection (lowest index
// wins ties); the size upper-bounds the minimal covering number.
std::vector<std::size_t> greedy_net_indices(const PointSet& t, double theta);
PointSet greedy_net(const PointSet& t, double theta);

// (l*(T) / R(T))^2.
double d_star(double width, double radius);

// rho (l*^2 + R^2 k log(e m / k))^{1/2}.
double q_k(double width, double radius, std::size_t k, std::size_t m, double rho);

}  // namespace hcube
