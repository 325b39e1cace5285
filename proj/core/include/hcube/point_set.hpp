#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hcube/types.hpp"

namespace hcube {

// Finite set of points in R^n, one per row. Always non-empty with finite
// coordinates; construction fails otherwise.
class PointSet {
 public:
  explicit PointSet(RowMatrix points);
  static PointSet from_rows(const std::vector<RealVector>& rows);

  std::size_t count() const { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points_.cols()); }
  std::span<const double> row(std::size_t i) const {
    return {points_.row(static_cast<Eigen::Index>(i)).data(), dim()};
  }
  const RowMatrix& matrix() const { return points_; }

  // sup_t ||t||_2.
  double radius() const;

  PointSet scaled(double factor) const;
  PointSet translated(std::span<const double> shift) const;

 private:
  RowMatrix points_;
};

double l2_norm(std::span<const double> x);
double l1_norm(std::span<const double> x);
double l2_distance(std::span<const double> x, std::span<const double> y);

}  // namespace hcube
