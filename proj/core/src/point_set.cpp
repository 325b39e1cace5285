#include "hcube/point_set.hpp"

#include <cmath>
#include <string>

#include "hcube/error.hpp"

namespace hcube {

PointSet::PointSet(RowMatrix points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw InvalidInput("point set needs at least one point of dimension >= 1");
  }
  if (!points_.allFinite()) throw InvalidInput("point set contains non-finite coordinates");
}

PointSet PointSet::from_rows(const std::vector<RealVector>& rows) {
  if (rows.empty()) throw InvalidInput("point set needs at least one point");
  const std::size_t n = rows.front().size();
  RowMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) {
      throw InvalidInput("point " + std::to_string(i) + " has dimension " +
                         std::to_string(rows[i].size()) + ", expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return PointSet(std::move(m));
}

double PointSet::radius() const { return points_.rowwise().norm().maxCoeff(); }

PointSet PointSet::scaled(double factor) const { return PointSet(points_ * factor); }

PointSet PointSet::translated(std::span<const double> shift) const {
  if (shift.size() != dim()) throw InvalidInput("translation vector dimension mismatch");
  RowMatrix moved = points_;
  for (Eigen::Index r = 0; r < moved.rows(); ++r) {
    for (std::size_t j = 0; j < shift.size(); ++j) moved(r, static_cast<Eigen::Index>(j)) += shift[j];
  }
  return PointSet(std::move(moved));
}

double l2_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double l1_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double l2_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidInput("distance between vectors of different length");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace hcube
