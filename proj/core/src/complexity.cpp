#include "hcube/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "hcube/error.hpp"
#include "hcube/parallel.hpp"
#include "hcube/rng.hpp"

namespace hcube {
namespace {

Eigen::VectorXd trial_gaussian(std::size_t n, std::uint64_t seed, std::size_t trial) {
  Rng rng(trial_seed(derive_seed(seed, stream::kWidth), trial));
  Eigen::VectorXd g(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = rng.normal();
  return g;
}

ComplexityEstimate summarize(const std::vector<double>& samples, std::uint64_t seed) {
  const double count = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= count;
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  var /= std::max(count - 1.0, 1.0);
  return {mean, std::sqrt(var / count), samples.size(), seed};
}

ComplexityEstimate squared(ComplexityEstimate e) {
  e.std_error = 2.0 * std::abs(e.value) * e.std_error;
  e.value = e.value * e.value;
  return e;
}

}  // namespace

double k_support_norm(std::span<const double> x, std::size_t k) {
  if (k < 1 || k > x.size()) {
    throw InvalidInput("k-support norm needs 1 <= k <= n, got k=" + std::to_string(k) +
                       " n=" + std::to_string(x.size()));
  }
  std::vector<double> sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sq[i] = x[i] * x[i];
  std::nth_element(sq.begin(), sq.begin() + static_cast<std::ptrdiff_t>(k - 1), sq.end(),
                   std::greater<>());
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += sq[i];
  return std::sqrt(s);
}

ComplexityEstimate gaussian_mean_width(const PointSet& t, std::size_t trials, std::uint64_t seed) {
  if (trials < 2) throw InvalidInput("gaussian_mean_width needs at least 2 trials");
  std::vector<double> sups(trials);
  parallel_for(trials, [&](std::size_t trial) {
    const Eigen::VectorXd g = trial_gaussian(t.dim(), seed, trial);
    sups[trial] = (t.matrix() * g).cwiseAbs().maxCoeff();
  });
  return summarize(sups, seed);
}

ComplexityEstimate localized_width(const PointSet& t, double theta, std::size_t trials,
                                   std::uint64_t seed, std::size_t materialize_limit) {
  if (!(theta > 0.0)) throw InvalidInput("localized_width needs theta > 0");
  if (trials < 2) throw InvalidInput("localized_width needs at least 2 trials");

  // One orientation per pair suffices: |<G, x - y>| is symmetric.
  std::vector<std::pair<std::size_t, std::size_t>> close;
  for (std::size_t i = 0; i < t.count(); ++i) {
    for (std::size_t j = i + 1; j < t.count(); ++j) {
      if (l2_distance(t.row(i), t.row(j)) <= theta) close.emplace_back(i, j);
    }
  }
  if (close.empty()) return {0.0, 0.0, trials, seed};

  if (close.size() <= materialize_limit) {
    RowMatrix diffs(static_cast<Eigen::Index>(close.size() + 1), static_cast<Eigen::Index>(t.dim()));
    diffs.row(0).setZero();
    for (std::size_t p = 0; p < close.size(); ++p) {
      const auto [i, j] = close[p];
      diffs.row(static_cast<Eigen::Index>(p + 1)) =
          t.matrix().row(static_cast<Eigen::Index>(i)) - t.matrix().row(static_cast<Eigen::Index>(j));
    }
    return squared(gaussian_mean_width(PointSet(std::move(diffs)), trials, seed));
  }

  std::vector<double> sups(trials);
  parallel_for(trials, [&](std::size_t trial) {
    const Eigen::VectorXd g = trial_gaussian(t.dim(), seed, trial);
    const Eigen::VectorXd proj = t.matrix() * g;
    double best = 0.0;
    for (const auto& [i, j] : close) {
      best = std::max(best, std::abs(proj(static_cast<Eigen::Index>(i)) -
                                     proj(static_cast<Eigen::Index>(j))));
    }
    sups[trial] = best;
  });
  return squared(summarize(sups, seed));
}

std::vector<std::size_t> greedy_net_indices(const PointSet& t, double theta) {
  if (!(theta > 0.0)) throw InvalidInput("greedy_net needs theta > 0");
  const std::size_t count = t.count();
  std::vector<std::vector<std::size_t>> neighbors(count);
  for (std::size_t i = 0; i < count; ++i) {
    neighbors[i].push_back(i);
    for (std::size_t j = i + 1; j < count; ++j) {
      if (l2_distance(t.row(i), t.row(j)) < theta) {
        neighbors[i].push_back(j);
        neighbors[j].push_back(i);
      }
    }
  }

  std::vector<std::size_t> gain(count);
  for (std::size_t i = 0; i < count; ++i) gain[i] = neighbors[i].size();
  std::vector<bool> covered(count, false);
  std::size_t remaining = count;
  std::vector<std::size_t> net;
  while (remaining > 0) {
    const auto best = static_cast<std::size_t>(
        std::max_element(gain.begin(), gain.end()) - gain.begin());
    net.push_back(best);
    for (std::size_t j : neighbors[best]) {
      if (covered[j]) continue;
      covered[j] = true;
      --remaining;
      for (std::size_t i : neighbors[j]) --gain[i];
    }
  }
  std::sort(net.begin(), net.end());
  return net;
}

PointSet greedy_net(const PointSet& t, double theta) {
  const auto idx = greedy_net_indices(t, theta);
  RowMatrix rows(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(t.dim()));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    rows.row(static_cast<Eigen::Index>(r)) = t.matrix().row(static_cast<Eigen::Index>(idx[r]));
  }
  return PointSet(std::move(rows));
}

double d_star(double width, double radius) {
  if (!(radius > 0.0)) throw InvalidInput("d_star needs R > 0");
  if (width < 0.0) throw InvalidInput("d_star needs a nonnegative width");
  const double ratio = width / radius;
  return ratio * ratio;
}

double q_k(double width, double radius, std::size_t k, std::size_t m, double rho) {
  if (!(radius > 0.0)) throw InvalidInput("q_k needs R > 0");
  if (k < 1 || k > m) throw InvalidInput("q_k needs 1 <= k <= m");
  if (!(rho > 0.0)) throw InvalidInput("q_k needs rho > 0");
  if (width < 0.0) throw InvalidInput("q_k needs a nonnegative width");
  const double kd = static_cast<double>(k);
  const double md = static_cast<double>(m);
  return rho * std::sqrt(width * width + radius * radius * kd * std::log(std::numbers::e * md / kd));
}

}  // namespace hcube
