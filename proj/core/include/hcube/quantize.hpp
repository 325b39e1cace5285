#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "hcube/operators.hpp"
#include "hcube/point_set.hpp"

namespace hcube {

// tau, uniform on [-lambda, lambda]^m.
class DitherVector {
 public:
  static DitherVector make(std::size_t m, double lambda, std::uint64_t seed);
  // Explicit values, each checked to lie in [-lambda, lambda].
  DitherVector(std::vector<double> values, double lambda);

  std::size_t size() const { return values_.size(); }
  double lambda() const { return lambda_; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
  double lambda_;
};

// Packed point of {-1, 1}^m. Bit i is 1 for +1 and 0 for -1; bits beyond
// m are always zero.
class BinaryCode {
 public:
  explicit BinaryCode(std::size_t m);

  // Bit i set iff values[i] >= 0 (sign(0) is +1).
  static BinaryCode from_signs(std::span<const double> values);
  // LSB-first packing, ceil(m/8) bytes. Throws LoadError on nonzero pad bits.
  static BinaryCode from_bytes(std::size_t m, std::span<const std::uint8_t> bytes);

  std::size_t size() const { return m_; }
  bool bit(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool value);
  std::span<const std::uint64_t> words() const { return words_; }

  std::vector<std::uint8_t> to_bytes() const;
  BinaryCode complement() const;

  bool operator==(const BinaryCode&) const = default;

 private:
  std::size_t m_;
  std::vector<std::uint64_t> words_;
};

// sign(A x + tau), component-wise.
BinaryCode embed_binary(const LinearMap& a, const DitherVector& tau, std::span<const double> x);
// One code per point; uses the map's batch path when it has one.
std::vector<BinaryCode> embed_all(const LinearMap& a, const DitherVector& tau, const PointSet& t);

// Popcount of the XOR. Throws InvalidInput on length mismatch.
std::size_t hamming(const BinaryCode& a, const BinaryCode& b);

// Constants of the embedding guarantee. Their values are not known; the
// defaults are placeholders and working values come from calibration.
struct PlanConstants {
  double c0 = 1.0;  // net scale: theta = delta / (c0 sqrt(log(e lambda / delta)))
  double c1 = 1.0;  // dither range: lambda = c1 R sqrt(max(log(R/delta), 1))
  double c2 = 1.0;  // ambient dimension requirement: n >= c2 m
  double c3 = 1.0;  // row count multiplier
  double kappa = std::sqrt(std::numbers::pi / 2.0);
};

struct EmbeddingPlan {
  double delta = 0.0;
  double radius = 0.0;
  double theta = 0.0;
  double lambda = 0.0;
  std::size_t k = 0;
  std::size_t m = 0;
  double kappa = std::sqrt(std::numbers::pi / 2.0);
  PlanConstants constants;
  // Measured complexity inputs: log N(T, theta) and l*^2((T-T) cap theta B).
  double log_net_size = 0.0;
  double local_width_sq = 0.0;
  std::size_t n = 0;  // ambient dimension of the planned set; 0 if unknown

  // dim >= c2 m.
  bool fits_dimension(std::size_t dim) const {
    return static_cast<double>(dim) >= constants.c2 * static_cast<double>(m);
  }
};

double plan_lambda(double radius, double delta, const PlanConstants& c);
double plan_theta(double lambda, double delta, const PlanConstants& c);

// lambda, then theta, then the smallest m with
//   m >= c3 (lambda^2 logN / delta^2 + lambda width^2 / delta^3),
// and k = floor(delta m / lambda). Throws InvalidInput unless
// 0 < delta <= R/2 and PlanInfeasible when m or k rounds to zero.
EmbeddingPlan plan_parameters(double radius, double delta, double log_net_size,
                              double local_width_sq, const PlanConstants& constants = {});

// Plan for a concrete point set: measures R, builds the greedy theta-net
// for log N(T, theta) and estimates l*^2((T-T) cap theta B) by Monte Carlo,
// then calls plan_parameters.
EmbeddingPlan plan_for_points(const PointSet& t, double delta, const PlanConstants& constants,
                              std::size_t width_trials, std::uint64_t seed);

// (2 lambda kappa / m) d_H(a, b), m the code length.
double estimate_distance(const BinaryCode& a, const BinaryCode& b, double lambda, double kappa);
double estimate_distance(const BinaryCode& a, const BinaryCode& b, const EmbeddingPlan& plan);

}  // namespace hcube
