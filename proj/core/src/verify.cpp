#include "hcube/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "hcube/complexity.hpp"
#include "hcube/error.hpp"
#include "hcube/rng.hpp"

namespace hcube {
namespace {

std::span<const double> row_span(const RowMatrix& m, Eigen::Index r) {
  return {m.row(r).data(), static_cast<std::size_t>(m.cols())};
}

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

SparseSampler::SparseSampler(std::size_t r, std::size_t n, std::size_t samples, std::uint64_t seed)
    : r_(r), n_(n), samples_(samples), seed_(seed) {
  if (r < 1 || r > n) {
    throw InvalidInput("sparse sampler needs 1 <= r <= n, got r=" + std::to_string(r) +
                       " n=" + std::to_string(n));
  }
}

RealVector SparseSampler::sample(std::size_t index) const {
  Rng rng(trial_seed(derive_seed(seed_, stream::kSampler), index));
  // Floyd's algorithm: r distinct indices, each subset equally likely.
  std::vector<std::size_t> support;
  support.reserve(r_);
  std::unordered_set<std::size_t> chosen;
  for (std::size_t j = n_ - r_; j < n_; ++j) {
    const auto t = static_cast<std::size_t>(rng.below(j + 1));
    const std::size_t pick = chosen.contains(t) ? j : t;
    chosen.insert(pick);
    support.push_back(pick);
  }
  RealVector x(n_, 0.0);
  double norm_sq = 0.0;
  for (std::size_t idx : support) {
    double v = 0.0;
    while (v == 0.0) v = rng.normal();
    x[idx] = v;
    norm_sq += v * v;
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (std::size_t idx : support) x[idx] *= inv;
  return x;
}

RowMatrix SparseSampler::draw_all() const {
  RowMatrix out(static_cast<Eigen::Index>(samples_), static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i < samples_; ++i) {
    const RealVector x = sample(i);
    out.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(
        x.data(), static_cast<Eigen::Index>(n_));
  }
  return out;
}

double check_l1_concentration(const LinearMap& a, const PointSet& points, double kappa,
                              bool include_origin) {
  const RowMatrix images = a.apply_rows(points.matrix());
  const double scale = kappa / static_cast<double>(a.output_dim());
  double worst = 0.0;
  const auto count = images.rows();
  for (Eigen::Index i = 0; i < count; ++i) {
    if (include_origin) {
      const double dev = std::abs(scale * images.row(i).lpNorm<1>() -
                                  points.matrix().row(i).norm());
      worst = std::max(worst, dev);
    }
    for (Eigen::Index j = i + 1; j < count; ++j) {
      const double image_l1 = (images.row(i) - images.row(j)).lpNorm<1>();
      const double dist = (points.matrix().row(i) - points.matrix().row(j)).norm();
      worst = std::max(worst, std::abs(scale * image_l1 - dist));
    }
  }
  return worst;
}

PointSet difference_set(const PointSet& t, double theta) {
  std::vector<RealVector> diffs;
  diffs.emplace_back(t.dim(), 0.0);
  for (std::size_t i = 0; i < t.count(); ++i) {
    for (std::size_t j = i + 1; j < t.count(); ++j) {
      if (l2_distance(t.row(i), t.row(j)) <= theta) {
        RealVector d(t.dim());
        for (std::size_t c = 0; c < t.dim(); ++c) d[c] = t.row(i)[c] - t.row(j)[c];
        diffs.push_back(std::move(d));
      }
    }
  }
  return PointSet::from_rows(diffs);
}

WellSpreadResult check_well_spread(const LinearMap& a, const PointSet& net, const PointSet& diffs,
                                   std::size_t k, double lambda, double delta) {
  if (k < 1 || k > a.output_dim()) {
    throw InvalidInput("well-spread check needs 1 <= k <= m, got k=" + std::to_string(k));
  }
  auto sup_knorm = [&](const PointSet& s) {
    const RowMatrix images = a.apply_rows(s.matrix());
    double best = 0.0;
    for (Eigen::Index r = 0; r < images.rows(); ++r) {
      best = std::max(best, k_support_norm(row_span(images, r), k));
    }
    return best / std::sqrt(static_cast<double>(k));
  };
  WellSpreadResult out;
  out.net_value = sup_knorm(net);
  out.diff_value = sup_knorm(diffs);
  out.net_pass = out.net_value <= lambda;
  out.diff_pass = out.diff_value <= delta;
  return out;
}

std::vector<double> rip_sample_deviations(const LinearMap& b, const SparseSampler& sampler) {
  if (sampler.dim() != b.input_dim()) throw InvalidInput("sampler dimension does not match map");
  std::vector<double> devs(sampler.samples());
  RealVector image(b.output_dim());
  for (std::size_t i = 0; i < sampler.samples(); ++i) {
    const RealVector x = sampler.sample(i);
    b.apply(x, image);
    devs[i] = std::abs(squared_norm(image) - squared_norm(x));
  }
  return devs;
}

double check_rip(const LinearMap& b, const SparseSampler& sampler) {
  const auto devs = rip_sample_deviations(b, sampler);
  return devs.empty() ? 0.0 : *std::max_element(devs.begin(), devs.end());
}

RegularityProfile check_strong_regularity(const LinearMap& b, std::size_t r_max,
                                          std::size_t samples, std::uint64_t seed) {
  if (r_max < 1 || r_max > b.output_dim() || r_max > b.input_dim()) {
    throw InvalidInput("strong regularity needs 1 <= r_max <= min(m, n)");
  }
  std::vector<std::size_t> grid;
  for (std::size_t r = 1; r < r_max; r *= 2) grid.push_back(r);
  grid.push_back(r_max);

  RegularityProfile profile;
  profile.n = b.input_dim();
  profile.m = b.output_dim();
  const double logn = std::log(static_cast<double>(profile.n));
  profile.predicted_rate = std::pow(logn, 2.5) / std::sqrt(static_cast<double>(profile.m));

  RealVector image(b.output_dim());
  for (std::size_t r : grid) {
    const SparseSampler sampler(r, b.input_dim(), samples, derive_seed(seed, r));
    RegularityRecord rec;
    rec.r = r;
    for (std::size_t i = 0; i < samples; ++i) {
      const RealVector x = sampler.sample(i);
      b.apply(x, image);
      rec.rip_deviation = std::max(rec.rip_deviation, std::abs(squared_norm(image) - 1.0));
      rec.spread_deviation = std::max(rec.spread_deviation, k_support_norm(image, r));
    }
    const double root_r = std::sqrt(static_cast<double>(r));
    profile.rho_hat = std::max(
        {profile.rho_hat, rec.rip_deviation / root_r, rec.spread_deviation / root_r});
    profile.records.push_back(rec);
  }
  return profile;
}

BlockRegularityResult check_block_regularity(const LinearMap& b, std::size_t r,
                                             std::size_t samples, std::uint64_t seed,
                                             BlockSampling sampling, double tolerance) {
  const std::size_t n = b.input_dim();
  const std::size_t m = b.output_dim();
  if (r < 1 || r > m || r > n) throw InvalidInput("block regularity needs 1 <= r <= min(m, n)");

  const SparseSampler xs(r, n, samples, derive_seed(seed, 1));
  const SparseSampler ys(r, m, samples, derive_seed(seed, 2));
  Rng angles(derive_seed(seed, 3));

  BlockRegularityResult out;
  RealVector bx(m);
  for (std::size_t i = 0; i < samples; ++i) {
    const RealVector x_hat = xs.sample(i);
    const RealVector y_hat = ys.sample(i);
    const double phi = angles.uniform() * std::numbers::pi / 2.0;
    double cx = std::cos(phi);
    double cy = std::sin(phi);
    if (sampling == BlockSampling::kXOnly) {
      cx = 1.0;
      cy = 0.0;
    } else if (sampling == BlockSampling::kYOnly) {
      cx = 0.0;
      cy = 1.0;
    }

    b.apply(x_hat, bx);
    if (sampling != BlockSampling::kYOnly) {
      out.base_rip = std::max(out.base_rip, std::abs(squared_norm(bx) - 1.0));
      out.base_spread = std::max(out.base_spread, k_support_norm(bx, r));
    }

    double image_sq = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double v = cx * bx[j] + cy * y_hat[j];
      image_sq += v * v;
    }
    out.augmented_deviation = std::max(out.augmented_deviation, std::abs(image_sq - 1.0));
  }
  out.bound = 3.0 * out.base_rip + 2.0 * out.base_spread + tolerance;
  out.holds = out.augmented_deviation <= out.bound;
  return out;
}

double measure_binary_distortion(const LinearMap& a, const DitherVector& tau,
                                 const EmbeddingPlan& plan, const PointSet& t) {
  const auto codes = embed_all(a, tau, t);
  double worst = 0.0;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      const double est = estimate_distance(codes[i], codes[j], plan);
      worst = std::max(worst, std::abs(est - l2_distance(t.row(i), t.row(j))));
    }
  }
  return worst;
}

double measure_l2l1_distortion(const LinearMap& c, const PointSet& t) {
  const RowMatrix images = c.apply_rows(t.matrix());
  double worst = 0.0;
  bool any = false;
  for (Eigen::Index i = 0; i < images.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < images.rows(); ++j) {
      const double dist = (t.matrix().row(i) - t.matrix().row(j)).norm();
      if (dist == 0.0) continue;
      any = true;
      const double ratio = (images.row(i) - images.row(j)).lpNorm<1>() / dist;
      worst = std::max(worst, std::abs(ratio - 1.0));
    }
  }
  if (!any) throw InvalidInput("l2->l1 distortion is undefined when all points coincide");
  return worst;
}

double median(std::vector<double> values) { return percentile(std::move(values), 0.5); }

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidInput("percentile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<BenchRow> bench_scaling(std::span<const std::size_t> n_list,
                                    const std::function<std::size_t(std::size_t)>& m_rule,
                                    std::size_t repetitions, const BenchOptions& options) {
  if (repetitions == 0) throw InvalidInput("bench_scaling needs at least one repetition");
  using Clock = std::chrono::steady_clock;
  auto time_us = [](auto&& fn) {
    const auto start = Clock::now();
    fn();
    return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
  };

  // Sizes are timed round-robin within each repetition so that machine
  // drift (frequency changes, other load) hits every size alike instead of
  // skewing one ratio.
  struct Case {
    std::size_t n;
    std::size_t m;
    RealVector x;
    std::optional<DoubleCirculantOperator> dc;
    std::optional<GaussianDenseOperator> dense;
    RealVector out;
    RealVector dense_out;
    std::vector<double> dc_times;
    std::vector<double> dense_times;
  };
  std::vector<Case> cases;
  for (std::size_t n : n_list) {
    if (!is_power_of_two(n)) throw InvalidInput("bench sizes must be powers of two");
    Case c;
    c.n = n;
    c.m = m_rule(n);
    Rng rng(derive_seed(options.seed, n));
    c.x.resize(n);
    for (auto& v : c.x) v = rng.normal();
    c.dc = DoubleCirculantOperator::build(n, c.m, IndexMode::kFixed, options.seed);
    c.out.resize(c.dc->output_dim());
    c.dc->apply(c.x, c.out);  // warm-up
    if (options.include_dense) {
      c.dense = GaussianDenseOperator::build(c.m, n, options.seed);
      c.dense_out.resize(c.m);
      c.dense->apply(c.x, c.dense_out);
    }
    cases.push_back(std::move(c));
  }

  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    for (auto& c : cases) {
      c.dc_times.push_back(time_us([&] { c.dc->apply(c.x, c.out); }));
      if (c.dense) c.dense_times.push_back(time_us([&] { c.dense->apply(c.x, c.dense_out); }));
    }
  }

  std::vector<BenchRow> rows;
  for (const auto& c : cases) {
    rows.push_back({c.n, c.m, "double_circulant", median(c.dc_times), percentile(c.dc_times, 0.9)});
    if (c.dense) {
      rows.push_back({c.n, c.m, "gaussian", median(c.dense_times), percentile(c.dense_times, 0.9)});
    }
  }
  return rows;
}

std::string bench_csv(std::span<const BenchRow> rows) {
  std::ostringstream out;
  out << kBenchCsvHeader << '\n';
  out.setf(std::ios::fixed);
  out.precision(3);
  for (const auto& r : rows) {
    out << r.n << ',' << r.m << ',' << r.op << ',' << r.median_us << ',' << r.p90_us << '\n';
  }
  return out.str();
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace hcube
