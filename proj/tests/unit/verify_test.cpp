#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>
#include <gtest/gtest.h>

#include "hcube/complexity.hpp"
#include "hcube/data.hpp"
#include "hcube/error.hpp"
#include "hcube/operators.hpp"
#include "hcube/quantize.hpp"
#include "hcube/rng.hpp"
#include "hcube/suites.hpp"
#include "hcube/verify.hpp"

namespace hcube {
namespace {

constexpr double kKappa = 1.2533141373155002;  // sqrt(pi/2)

Eigen::MatrixXd gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.normal();
  }
  return m;
}

// First `rows` rows of a random orthogonal n x n matrix.
Eigen::MatrixXd orthonormal_rows(std::size_t rows, std::size_t n, Rng& rng) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian_matrix(n, n, rng));
  const Eigen::MatrixXd q = qr.householderQ();
  return q.topRows(static_cast<Eigen::Index>(rows));
}

PointSet sphere(std::size_t count, std::size_t n, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::kSphere;
  spec.count = count;
  spec.n = n;
  spec.seed = seed;
  return generate(spec);
}

RealVector unit_random(std::size_t n, Rng& rng) {
  RealVector v(n);
  for (auto& x : v) x = rng.normal();
  const double norm = l2_norm(v);
  for (auto& x : v) x /= norm;
  return v;
}

TEST(SparseSampler, ExactSupportAndUnitNorm) {
  const SparseSampler sampler(3, 40, 200, 7);
  const auto all = sampler.draw_all();
  ASSERT_EQ(all.rows(), 200);
  for (std::size_t i = 0; i < 200; ++i) {
    const auto x = sampler.sample(i);
    EXPECT_EQ(std::count_if(x.begin(), x.end(), [](double v) { return v != 0.0; }), 3);
    EXPECT_NEAR(l2_norm(x), 1.0, 1e-12);
    for (std::size_t j = 0; j < 40; ++j) EXPECT_EQ(all(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), x[j]);
  }
  EXPECT_THROW(SparseSampler(0, 4, 1, 1), InvalidInput);
  EXPECT_THROW(SparseSampler(5, 4, 1, 1), InvalidInput);
}

TEST(L1Concentration, SinglePointAndOrigin) {
  const auto op = GaussianDenseOperator::build(64, 16, 1);
  const auto t = sphere(1, 16, 2);
  EXPECT_EQ(check_l1_concentration(map_of(op), t, kKappa), 0.0);
  const auto zero = PointSet::from_rows({RealVector(16, 0.0)});
  EXPECT_EQ(check_l1_concentration(map_of(op), zero, kKappa, true), 0.0);
}

// 20 pairs with ||x - y|| = 1; worst deviation over the pairs.
double worst_pair_deviation(const LinearMap& a, std::size_t n, Rng& rng) {
  double worst = 0.0;
  for (int p = 0; p < 20; ++p) {
    const auto x = unit_random(n, rng);
    const auto d = unit_random(n, rng);
    RealVector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + d[i];
    worst = std::max(worst, check_l1_concentration(a, PointSet::from_rows({x, y}), kKappa));
  }
  return worst;
}

TEST(L1Concentration, GaussianPassRate) {
  int passes = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto op = GaussianDenseOperator::build(2048, 512, trial_seed(31, s));
    Rng rng(trial_seed(32, s));
    passes += worst_pair_deviation(map_of(op), 512, rng) < 0.15;
  }
  EXPECT_GE(passes, 95);
}

TEST(L1Concentration, DoubleCirculantPassRate) {
  // m = 2048 needs n >= m; run at n = 4096.
  int passes = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto op = DoubleCirculantOperator::build(4096, 2048, IndexMode::kFixed, trial_seed(33, s));
    Rng rng(trial_seed(34, s));
    passes += worst_pair_deviation(map_A(op), 4096, rng) < 0.25;
  }
  EXPECT_GE(passes, 90);
}

TEST(WellSpread, ZeroNet) {
  const auto op = GaussianDenseOperator::build(32, 16, 3);
  const auto zero = PointSet::from_rows({RealVector(16, 0.0)});
  const auto r = check_well_spread(map_of(op), zero, zero, 4, 1.0, 0.1);
  EXPECT_EQ(r.net_value, 0.0);
  EXPECT_EQ(r.diff_value, 0.0);
  EXPECT_TRUE(r.net_pass);
  EXPECT_TRUE(r.diff_pass);
}

TEST(WellSpread, FullKIsScaledEuclidean) {
  const auto op = GaussianDenseOperator::build(32, 16, 4);
  const auto t = sphere(5, 16, 5);
  double want = 0.0;
  for (std::size_t i = 0; i < t.count(); ++i) want = std::max(want, l2_norm(op.apply(t.row(i))));
  want /= std::sqrt(32.0);
  const auto r = check_well_spread(map_of(op), t, t, 32, 1e9, 1e9);
  EXPECT_NEAR(r.net_value, want, 1e-12);
  EXPECT_NEAR(r.diff_value, want, 1e-12);
  EXPECT_THROW(check_well_spread(map_of(op), t, t, 0, 1.0, 1.0), InvalidInput);
  EXPECT_THROW(check_well_spread(map_of(op), t, t, 33, 1.0, 1.0), InvalidInput);
}

TEST(WellSpread, GaussianPlanPassRate) {
  // The Gaussian map has no m <= n requirement, so n stays small.
  const auto t = sphere(32, 512, 6);
  const PlanConstants constants = AcceptanceConfig{}.plan;
  const auto plan = plan_for_points(t, 0.2, constants, 200, 7);
  const auto net = greedy_net(t, plan.theta);
  const auto diffs = difference_set(t, plan.theta);
  int passes = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto op = GaussianDenseOperator::build(plan.m, 512, trial_seed(35, s));
    const auto r = check_well_spread(map_of(op), net, diffs, plan.k, plan.lambda, plan.delta);
    passes += r.net_pass && r.diff_pass;
  }
  EXPECT_GE(passes, 90);
}

TEST(Rip, IdentityIsExact) {
  const SparseSampler sampler(4, 64, 300, 8);
  EXPECT_EQ(check_rip(identity_map(64), sampler), 0.0);
}

TEST(Rip, OrthogonalMatrixToMachinePrecision) {
  Rng rng(9);
  const auto b = dense_map(orthonormal_rows(64, 64, rng));
  const SparseSampler sampler(8, 64, 300, 10);
  EXPECT_LT(check_rip(b, sampler), 1e-13);
}

TEST(Rip, GaussianPassRate) {
  const double bound = 2.0 * std::sqrt(4.0 * std::log(std::numbers::e * 128.0 / 4.0) / 128.0);
  int passes = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(trial_seed(36, s));
    const auto b = dense_map(gaussian_matrix(128, 256, rng) / std::sqrt(128.0));
    passes += check_rip(b, SparseSampler(4, 256, 2000, trial_seed(37, s))) <= bound;
  }
  EXPECT_GE(passes, 95);
}

TEST(Rip, ScaledMapPointwise) {
  Rng rng(11);
  const Eigen::MatrixXd m = gaussian_matrix(32, 64, rng) / std::sqrt(32.0);
  const SparseSampler sampler(3, 64, 10, 12);
  const auto devs = rip_sample_deviations(dense_map(2.0 * m), sampler);
  ASSERT_EQ(devs.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    const auto x = sampler.sample(i);
    const double sq = (m * Eigen::Map<const Eigen::VectorXd>(x.data(), 64)).squaredNorm();
    EXPECT_NEAR(devs[i], std::abs(4.0 * sq - 1.0), 1e-12);
  }
}

TEST(Rip, PrefixSupremaNondecreasing) {
  Rng rng(13);
  const auto b = dense_map(gaussian_matrix(32, 64, rng) / std::sqrt(32.0));
  const SparseSampler sampler(4, 64, 500, 14);
  const auto devs = rip_sample_deviations(b, sampler);
  double running = 0.0;
  for (double d : devs) {
    EXPECT_GE(d, 0.0);
    const double next = std::max(running, d);
    EXPECT_GE(next, running);
    running = next;
  }
  EXPECT_EQ(running, check_rip(b, sampler));
  // A longer sample with the same seed extends the shorter one.
  EXPECT_GE(check_rip(b, SparseSampler(4, 64, 1000, 14)), running);
}

TEST(StrongRegularity, OrthonormalRowsTopEntryMatchesDense) {
  Rng rng(15);
  const Eigen::MatrixXd m = orthonormal_rows(64, 256, rng);
  const auto profile = check_strong_regularity(dense_map(m), 1, 400, 16);
  ASSERT_EQ(profile.records.size(), 1u);
  EXPECT_EQ(profile.records[0].r, 1u);

  // 1-sparse samples are +-e_j, so ||B x||_[1] = max_i |B_ij|.
  const SparseSampler sampler(1, 256, 400, derive_seed(16, 1));
  double want = 0.0;
  for (std::size_t s = 0; s < 400; ++s) {
    const auto x = sampler.sample(s);
    const auto j = static_cast<Eigen::Index>(
        std::find_if(x.begin(), x.end(), [](double v) { return v != 0.0; }) - x.begin());
    want = std::max(want, m.col(j).cwiseAbs().maxCoeff());
  }
  EXPECT_NEAR(profile.records[0].spread_deviation, want, 1e-12);
}

TEST(StrongRegularity, GridAndRhoHat) {
  const auto op = DoubleCirculantOperator::build(1024, 128, IndexMode::kFixed, 17);
  const auto profile = check_strong_regularity(map_B(op), 12, 100, 18);
  std::vector<std::size_t> rs;
  double rho = 0.0;
  for (const auto& rec : profile.records) {
    rs.push_back(rec.r);
    EXPECT_GE(rec.rip_deviation, 0.0);
    EXPECT_GE(rec.spread_deviation, 0.0);
    const double sr = std::sqrt(static_cast<double>(rec.r));
    rho = std::max({rho, rec.rip_deviation / sr, rec.spread_deviation / sr});
  }
  EXPECT_EQ(rs, (std::vector<std::size_t>{1, 2, 4, 8, 12}));
  EXPECT_DOUBLE_EQ(profile.rho_hat, rho);
  EXPECT_NEAR(profile.predicted_rate, std::pow(std::log(1024.0), 2.5) / std::sqrt(128.0), 1e-12);
  EXPECT_THROW(check_strong_regularity(map_B(op), 129, 10, 1), InvalidInput);
}

TEST(BlockRegularity, ZeroMapGivesZeroDeviation) {
  const auto zero = dense_map(Eigen::MatrixXd::Zero(16, 32));
  const auto r = check_block_regularity(zero, 4, 200, 19, BlockSampling::kYOnly);
  EXPECT_NEAR(r.augmented_deviation, 0.0, 1e-15);  // only the rounding of ||y|| = 1
  EXPECT_TRUE(r.holds);
}

TEST(BlockRegularity, RestrictionToXMatchesBase) {
  Rng rng(20);
  const auto b = dense_map(gaussian_matrix(64, 128, rng) / 8.0);
  const auto x_only = check_block_regularity(b, 4, 500, 21, BlockSampling::kXOnly);
  EXPECT_NEAR(x_only.augmented_deviation, x_only.base_rip, 1e-12);
  const auto mixed = check_block_regularity(b, 4, 500, 21);
  EXPECT_GE(mixed.augmented_deviation, 0.0);
  EXPECT_THROW(check_block_regularity(b, 65, 10, 1), InvalidInput);
}

TEST(BlockRegularity, GaussianPassRate) {
  int passes = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(trial_seed(38, s));
    const auto b = dense_map(gaussian_matrix(64, 128, rng) / 8.0);
    passes += check_block_regularity(b, 4, 200, trial_seed(39, s)).holds;
  }
  EXPECT_GE(passes, 95);
}

TEST(BinaryDistortion, DuplicatePointContributesNothing) {
  const auto op = GaussianDenseOperator::build(256, 32, 22);
  const auto tau = DitherVector::make(256, 2.0, 23);
  EmbeddingPlan plan;
  plan.m = 256;
  plan.lambda = 2.0;
  const auto p = sphere(1, 32, 24);
  const auto t = PointSet::from_rows({RealVector(p.row(0).begin(), p.row(0).end()),
                                      RealVector(p.row(0).begin(), p.row(0).end())});
  EXPECT_EQ(measure_binary_distortion(map_of(op), tau, plan, t), 0.0);
}

int binary_pass_count(std::size_t n, bool circulant, double threshold) {
  const auto t = sphere(32, n, 25);
  const auto plan = plan_for_points(t, 0.2, AcceptanceConfig{}.plan, 200, 26);
  int passes = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto tau = DitherVector::make(plan.m, plan.lambda, trial_seed(41, s));
    double err = 0.0;
    if (circulant) {
      const auto op = DoubleCirculantOperator::build(n, plan.m, IndexMode::kFixed, trial_seed(40, s));
      err = measure_binary_distortion(map_A(op), tau, plan, t);
    } else {
      const auto op = GaussianDenseOperator::build(plan.m, n, trial_seed(40, s));
      err = measure_binary_distortion(map_of(op), tau, plan, t);
    }
    passes += err <= threshold;
  }
  return passes;
}

TEST(BinaryDistortion, GaussianBaselinePassRate) { EXPECT_GE(binary_pass_count(512, false, 0.2), 90); }

TEST(BinaryDistortion, DoubleCirculantPassRate) {
  // The plan's m exceeds 512, so the circulant variant runs at n = 4096.
  EXPECT_GE(binary_pass_count(4096, true, 0.3), 85);
}

TEST(BinaryDistortion, TranslationInvariantInLaw) {
  const auto t = sphere(8, 64, 27);
  RealVector shift(64, 0.05);
  const auto shifted = t.translated(shift);
  const auto plan = plan_for_points(shifted, 0.2, AcceptanceConfig{}.plan, 200, 28);
  auto stats = [&](const PointSet& set, std::uint64_t base) {
    constexpr int kTrials = 200;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < kTrials; ++i) {
      const auto op = GaussianDenseOperator::build(plan.m, 64, trial_seed(base, i));
      const auto tau = DitherVector::make(plan.m, plan.lambda, trial_seed(base + 1, i));
      const double e = measure_binary_distortion(map_of(op), tau, plan, set);
      sum += e;
      sq += e * e;
    }
    const double mean = sum / kTrials;
    return std::pair{mean, (sq / kTrials - mean * mean) / (kTrials - 1)};
  };
  const auto [m0, v0] = stats(t, 50);
  const auto [m1, v1] = stats(shifted, 60);
  EXPECT_LE(std::abs(m0 - m1), 3.0 * std::sqrt(v0 + v1));
}

TEST(L2L1Distortion, GaussianTwoPoints) {
  int passes = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto op = GaussianDenseOperator::build(1024, 256, trial_seed(42, s));
    const auto c = map_of(op).scaled(kKappa / 1024.0);
    passes += measure_l2l1_distortion(c, sphere(2, 256, trial_seed(43, s))) < 0.1;
  }
  EXPECT_GE(passes, 95);
}

TEST(L2L1Distortion, ScaledMapPointwise) {
  const auto op = GaussianDenseOperator::build(64, 16, 44);
  const auto c = map_of(op).scaled(kKappa / 64.0);
  const auto t = sphere(2, 16, 45);
  RealVector diff(16);
  for (std::size_t i = 0; i < 16; ++i) diff[i] = t.row(0)[i] - t.row(1)[i];
  const double ratio = l1_norm(c(diff)) / l2_norm(diff);
  EXPECT_NEAR(measure_l2l1_distortion(c.scaled(2.0), t), std::abs(2.0 * ratio - 1.0), 1e-12);
}

TEST(L2L1Distortion, CoincidentPointsRejected) {
  const auto t = PointSet::from_rows({{1.0, 2.0}, {1.0, 2.0}});
  EXPECT_THROW(measure_l2l1_distortion(identity_map(2), t), InvalidInput);
}

TEST(L2L1Distortion, SelectorCirculantPassRate) {
  const auto t = sphere(64, 4096, 46);
  int passes = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto op = DoubleCirculantOperator::build(4096, 1024, IndexMode::kSelectors, trial_seed(47, s));
    passes += measure_l2l1_distortion(map_C(op), t) < 0.15;
  }
  EXPECT_GE(passes, 85);
}

TEST(Bench, CsvShape) {
  const std::vector<std::size_t> ns{256, 512};
  const auto rows = bench_scaling(ns, [](std::size_t n) { return n / 4; }, 3);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.m, r.n / 4);
    EXPECT_GT(r.median_us, 0.0);
    EXPECT_GE(r.p90_us, r.median_us);
  }
  const auto csv = bench_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kBenchCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);

  const std::vector<std::size_t> bad{300};
  EXPECT_THROW(bench_scaling(bad, [](std::size_t n) { return n / 4; }, 3), InvalidInput);
  EXPECT_THROW(bench_scaling(ns, [](std::size_t n) { return n / 4; }, 0), InvalidInput);
}

TEST(Stats, MedianAndPercentile) {
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_NEAR(percentile({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 0.9), 9.1, 1e-12);
  EXPECT_THROW(percentile({}, 0.5), InvalidInput);
}

TEST(Report, EmptyJson) { EXPECT_EQ(report_to_json(VerificationReport{}), "{\"checks\":[]}"); }

TEST(Report, JsonRoundTrip) {
  VerificationReport report;
  CheckResult c;
  c.name = "spectral.convolution";
  c.parameters = {{"criterion", 1.0}, {"n", 1024.0}};
  c.seeds = {1, 2, 18446744073709551615ULL};
  c.observed = 2.5e-15;
  c.threshold = 1e-9;
  c.pass = true;
  c.wall_time_s = 0.25;
  c.note = "observed <= threshold";
  report.checks.push_back(c);
  c.name = "other";
  c.pass = false;
  report.checks.push_back(c);

  const auto back = report_from_json(report_to_json(report, 2));
  ASSERT_EQ(back.checks.size(), 2u);
  EXPECT_EQ(back.checks[0].name, "spectral.convolution");
  EXPECT_EQ(back.checks[0].parameters, c.parameters);
  EXPECT_EQ(back.checks[0].seeds, c.seeds);
  EXPECT_EQ(back.checks[0].observed, 2.5e-15);
  EXPECT_EQ(back.checks[0].note, c.note);
  EXPECT_FALSE(back.all_passed());
  EXPECT_NE(back.find("other"), nullptr);
  EXPECT_EQ(back.find("missing"), nullptr);
  EXPECT_EQ(report_to_json(back), report_to_json(report));
}

}  // namespace
}  // namespace hcube
