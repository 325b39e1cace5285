#include "hcube/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "hcube/error.hpp"

namespace hcube::oracle {

double k_support_norm_subsets(std::span<const double> x, std::size_t k) {
  const std::size_t n = x.size();
  if (n > 24) throw InvalidInput("subset oracle limited to 24 coordinates");
  if (k == 0 || k > n) throw InvalidInput("subset oracle needs 1 <= k <= n");
  double best = 0.0;
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) s += x[i] * x[i];
    }
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

Eigen::MatrixXd circulant(std::span<const double> x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) c(j, k) = x[static_cast<std::size_t>((j - k + n) % n)];
  }
  return c;
}

std::size_t minimum_net_size(const PointSet& t, double theta) {
  const std::size_t count = t.count();
  if (count > 20) throw InvalidInput("exhaustive net oracle limited to 20 points");
  std::vector<std::uint32_t> covers(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (l2_distance(t.row(i), t.row(j)) < theta) covers[i] |= std::uint32_t{1} << j;
    }
  }
  const std::uint32_t all = (std::uint32_t{1} << count) - 1;
  for (std::size_t size = 1; size <= count; ++size) {
    for (std::uint32_t mask = 0; mask <= all; ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      std::uint32_t covered = 0;
      for (std::size_t i = 0; i < count; ++i) {
        if (mask & (std::uint32_t{1} << i)) covered |= covers[i];
      }
      if (covered == all) return size;
    }
  }
  return count;
}

double l1_concentration_dense(const Eigen::MatrixXd& a, const PointSet& points, double kappa) {
  const double scale = kappa / static_cast<double>(a.rows());
  double worst = 0.0;
  for (std::size_t i = 0; i < points.count(); ++i) {
    for (std::size_t j = i + 1; j < points.count(); ++j) {
      Eigen::VectorXd d(static_cast<Eigen::Index>(points.dim()));
      for (std::size_t c = 0; c < points.dim(); ++c) {
        d[static_cast<Eigen::Index>(c)] = points.row(i)[c] - points.row(j)[c];
      }
      const Eigen::VectorXd image = a * d;
      worst = std::max(worst, std::abs(scale * image.lpNorm<1>() - d.norm()));
    }
  }
  return worst;
}

}  // namespace hcube::oracle
