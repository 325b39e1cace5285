#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hcube/error.hpp"
#include "hcube/operators.hpp"
#include "hcube/point_set.hpp"
#include "hcube/quantize.hpp"
#include "hcube/rng.hpp"
#include "hcube/suites.hpp"

namespace hcube {
namespace {

RealVector random_real(std::size_t n, Rng& rng) {
  RealVector v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

RealVector random_unit(std::size_t n, Rng& rng) {
  RealVector v = random_real(n, rng);
  const double norm = l2_norm(v);
  for (auto& x : v) x /= norm;
  return v;
}

BinaryCode random_code(std::size_t m, Rng& rng) {
  BinaryCode c(m);
  for (std::size_t i = 0; i < m; ++i) c.set(i, rng.bernoulli(0.5));
  return c;
}

TEST(Dither, EntriesInRangeWithCenteredMean) {
  const auto tau = DitherVector::make(1000, 2.0, 3);
  double mean = 0.0;
  for (double v : tau.values()) {
    EXPECT_GE(v, -2.0);
    EXPECT_LE(v, 2.0);
    mean += v / 1000.0;
  }
  EXPECT_NEAR(mean, 0.0, 0.15);
}

TEST(Dither, Validation) {
  EXPECT_THROW(DitherVector::make(10, 0.0, 1), InvalidInput);
  EXPECT_THROW(DitherVector::make(10, -1.0, 1), InvalidInput);
  EXPECT_THROW(DitherVector::make(0, 1.0, 1), InvalidInput);
  EXPECT_THROW(DitherVector({0.5, 1.5}, 1.0), InvalidInput);
}

TEST(Dither, Deterministic) {
  const auto a = DitherVector::make(64, 1.5, 9);
  const auto b = DitherVector::make(64, 1.5, 9);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST(BinaryCode, FromSignsUsesNonnegativeAsOne) {
  const std::vector<double> v{0.0, -0.0, -1e-300, 3.0, -2.0};
  const auto c = BinaryCode::from_signs(v);
  EXPECT_TRUE(c.bit(0));
  EXPECT_TRUE(c.bit(1));  // -0.0 >= 0
  EXPECT_FALSE(c.bit(2));
  EXPECT_TRUE(c.bit(3));
  EXPECT_FALSE(c.bit(4));
}

TEST(BinaryCode, ByteRoundTripAndPadding) {
  Rng rng(5);
  for (std::size_t m : {1, 7, 8, 37, 64, 65, 200}) {
    const auto c = random_code(m, rng);
    const auto bytes = c.to_bytes();
    EXPECT_EQ(bytes.size(), (m + 7) / 8);
    EXPECT_EQ(BinaryCode::from_bytes(m, bytes), c);
  }
  const std::vector<std::uint8_t> dirty{0xFF};
  EXPECT_THROW(BinaryCode::from_bytes(5, dirty), LoadError);
  EXPECT_THROW(BinaryCode::from_bytes(9, dirty), LoadError);
}

TEST(Hamming, SelfAndComplement) {
  Rng rng(6);
  const auto a = random_code(37, rng);
  EXPECT_EQ(hamming(a, a), 0u);
  EXPECT_EQ(hamming(a, a.complement()), 37u);
}

TEST(Hamming, MatchesBitLoop) {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_code(37, rng);
    const auto b = random_code(37, rng);
    std::size_t count = 0;
    for (std::size_t i = 0; i < 37; ++i) count += a.bit(i) != b.bit(i);
    EXPECT_EQ(hamming(a, b), count);
  }
}

TEST(Hamming, LengthMismatch) {
  EXPECT_THROW(hamming(BinaryCode(4), BinaryCode(5)), InvalidInput);
}

TEST(Embed, PositiveImageGivesAllOnes) {
  const auto op = DoubleCirculantOperator::build(16, 8, IndexMode::kFixed, 1);
  const DitherVector tau(std::vector<double>(8, 0.5), 1.0);
  const auto code = embed_binary(map_A(op), tau, RealVector(16, 0.0));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_TRUE(code.bit(i));
}

TEST(Embed, MatchesDenseSignsAndIsDeterministic) {
  const auto op = DoubleCirculantOperator::build(64, 16, IndexMode::kFixed, 2);
  const auto dense = op.materialize();
  const auto tau = DitherVector::make(16, 1.0, 4);
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_real(64, rng);
    const Eigen::VectorXd ax = dense * Eigen::Map<const Eigen::VectorXd>(x.data(), 64);
    const auto code = embed_binary(map_A(op), tau, x);
    for (std::size_t i = 0; i < 16; ++i) {
      const double v = ax[static_cast<Eigen::Index>(i)] + tau.values()[i];
      if (std::abs(v) > 1e-9) EXPECT_EQ(code.bit(i), v >= 0.0);
    }
    EXPECT_EQ(code, embed_binary(map_A(op), tau, x));
  }
}

TEST(Embed, LengthMismatch) {
  const auto op = DoubleCirculantOperator::build(16, 8, IndexMode::kFixed, 1);
  const auto tau = DitherVector::make(7, 1.0, 1);
  EXPECT_THROW(embed_binary(map_A(op), tau, RealVector(16, 0.0)), InvalidInput);
}

TEST(Estimate, Arithmetic) {
  const double kappa = std::sqrt(std::numbers::pi / 2.0);
  const BinaryCode a(10);
  EXPECT_EQ(estimate_distance(a, a, 1.0, kappa), 0.0);
  EXPECT_NEAR(estimate_distance(a, a.complement(), 1.0, kappa), std::sqrt(2.0 * std::numbers::pi),
              1e-12);
  Rng rng(9);
  const auto b = random_code(10, rng);
  EXPECT_EQ(estimate_distance(a, b, 2.0, kappa), estimate_distance(b, a, 2.0, kappa));
  EXPECT_LE(estimate_distance(a, b, 2.0, kappa), 2.0 * 2.0 * kappa);
}

TEST(Estimate, UnbiasedForGaussianOperator) {
  Rng rng(10);
  const auto x = random_unit(256, rng);
  auto d = random_unit(256, rng);
  RealVector y(256);
  for (std::size_t i = 0; i < 256; ++i) y[i] = x[i] + 0.5 * d[i];
  ASSERT_NEAR(l2_distance(x, y), 0.5, 1e-12);

  // Unit constants give lambda ~ 1.5, where |<a, x>| > lambda often enough to
  // bias the estimate low; the calibrated constants keep clipping rare.
  const PlanConstants constants = AcceptanceConfig{}.plan;
  const double lambda = plan_lambda(std::max(l2_norm(x), l2_norm(y)), 0.1, constants);
  double mean = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto g = GaussianDenseOperator::build(4096, 256, 900 + s);
    const auto tau = DitherVector::make(4096, lambda, 1900 + s);
    const auto fx = embed_binary(map_of(g), tau, x);
    const auto fy = embed_binary(map_of(g), tau, y);
    mean += estimate_distance(fx, fy, lambda, constants.kappa) / 100.0;
  }
  EXPECT_NEAR(mean, 0.5, 0.05);
}

TEST(Estimate, TranslationConsistency) {
  Rng rng(11);
  const std::size_t n = 64;
  const std::size_t m = 256;
  const double lambda = 5.0;
  const auto x = random_unit(n, rng);
  const auto y = random_unit(n, rng);
  auto v = random_unit(n, rng);
  for (auto& c : v) c *= 0.3;
  RealVector xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[i] + v[i];
    ys[i] = y[i] + v[i];
  }

  auto stats = [&](const RealVector& a, const RealVector& b, std::uint64_t base) {
    constexpr int kTrials = 200;
    double sum = 0.0;
    double sq = 0.0;
    for (int t = 0; t < kTrials; ++t) {
      const auto g = GaussianDenseOperator::build(m, n, trial_seed(base, t));
      const auto tau = DitherVector::make(m, lambda, trial_seed(base + 1, t));
      const double dh =
          static_cast<double>(hamming(embed_binary(map_of(g), tau, a), embed_binary(map_of(g), tau, b)));
      sum += dh;
      sq += dh * dh;
    }
    const double mean = sum / kTrials;
    const double var = (sq - kTrials * mean * mean) / (kTrials - 1);
    return std::pair{mean, var / kTrials};
  };
  const auto [m0, v0] = stats(x, y, 100);
  const auto [m1, v1] = stats(xs, ys, 200);
  EXPECT_LE(std::abs(m0 - m1), 3.0 * std::sqrt(v0 + v1));
}

TEST(Planner, DegenerateInputsAreInfeasible) {
  const PlanConstants c;
  EXPECT_NEAR(plan_lambda(1.0, 0.5, c), 1.0, 1e-15);
  EXPECT_NEAR(plan_theta(1.0, 0.5, c), 0.5 / std::sqrt(std::log(2.0 * std::numbers::e)), 1e-15);
  EXPECT_THROW(plan_parameters(1.0, 0.5, 0.0, 0.0, c), PlanInfeasible);
}

TEST(Planner, HandEvaluatedRowCount) {
  const PlanConstants c;
  const auto plan = plan_parameters(1.0, 0.1, 10.0, 4.0, c);
  const double lambda = std::sqrt(std::log(10.0));
  const double m = std::ceil(lambda * lambda * 10.0 / 0.01 + lambda * 4.0 / 0.001);
  EXPECT_NEAR(plan.lambda, lambda, 1e-14);
  EXPECT_EQ(static_cast<double>(plan.m), m);
  EXPECT_EQ(plan.k, static_cast<std::size_t>(std::floor(0.1 * m / lambda)));
  EXPECT_NEAR(plan.theta, 0.1 / std::sqrt(std::log(std::numbers::e * lambda / 0.1)), 1e-14);
  EXPECT_GT(plan.theta, 0.0);
  EXPECT_LT(plan.theta, plan.delta);
}

TEST(Planner, LogFloorBelowE) {
  // log(R/delta) < 1 is floored at 1 inside the root.
  PlanConstants c;
  c.c1 = 2.0;
  EXPECT_NEAR(plan_lambda(1.0, 0.45, c), 2.0, 1e-15);
  EXPECT_NEAR(plan_lambda(3.0, 0.01, c), 6.0 * std::sqrt(std::log(300.0)), 1e-12);
}

TEST(Planner, LargerDeltaNeverNeedsMoreRows) {
  const PlanConstants c;
  std::size_t previous = 0;
  bool first = true;
  for (double delta : {0.01, 0.02, 0.04, 0.08, 0.16, 0.32}) {
    const auto plan = plan_parameters(1.0, delta, 5.0, 1.0, c);
    if (!first) EXPECT_LE(plan.m, previous) << "delta=" << delta;
    previous = plan.m;
    first = false;
  }
}

TEST(Planner, PreconditionsAndKZero) {
  const PlanConstants c;
  EXPECT_THROW(plan_parameters(1.0, 0.6, 1.0, 1.0, c), InvalidInput);
  EXPECT_THROW(plan_parameters(1.0, 0.0, 1.0, 1.0, c), InvalidInput);
  EXPECT_THROW(plan_parameters(0.0, 0.1, 1.0, 1.0, c), InvalidInput);
  PlanConstants bad;
  bad.c3 = 0.0;
  EXPECT_THROW(plan_parameters(1.0, 0.1, 1.0, 1.0, bad), InvalidInput);
  // Tiny c3 leaves m so small that floor(delta m / lambda) = 0.
  PlanConstants tiny;
  tiny.c3 = 1e-6;
  EXPECT_THROW(plan_parameters(1.0, 0.1, 1.0, 0.0, tiny), PlanInfeasible);
}

TEST(Planner, ForPointsRecordsDimension) {
  Rng rng(12);
  std::vector<RealVector> rows{random_unit(32, rng), random_unit(32, rng)};
  const auto t = PointSet::from_rows(rows);
  const auto plan = plan_for_points(t, 0.1, PlanConstants{}, 50, 3);
  EXPECT_EQ(plan.n, 32u);
  EXPECT_NEAR(plan.radius, 1.0, 1e-12);
  EXPECT_GE(plan.k, 1u);
  EXPECT_THROW(plan_for_points(t, 0.8, PlanConstants{}, 50, 3), InvalidInput);
}

}  // namespace
}  // namespace hcube
