#include "hcube/quantize.hpp"

#include <bit>
#include <string>

#include "hcube/complexity.hpp"
#include "hcube/error.hpp"
#include "hcube/rng.hpp"

namespace hcube {

DitherVector DitherVector::make(std::size_t m, double lambda, std::uint64_t seed) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidInput("dither range lambda must be positive, got " + std::to_string(lambda));
  }
  if (m == 0) throw InvalidInput("dither length must be at least 1");
  Rng rng(derive_seed(seed, stream::kDither));
  std::vector<double> v(m);
  for (auto& e : v) e = rng.uniform(-lambda, lambda);
  return DitherVector(std::move(v), lambda);
}

DitherVector::DitherVector(std::vector<double> values, double lambda)
    : values_(std::move(values)), lambda_(lambda) {
  if (!(lambda > 0.0)) throw InvalidInput("dither range lambda must be positive");
  for (double v : values_) {
    if (!(v >= -lambda && v <= lambda)) throw InvalidInput("dither entry outside [-lambda, lambda]");
  }
}

BinaryCode::BinaryCode(std::size_t m) : m_(m), words_((m + 63) / 64, 0) {}

void BinaryCode::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

BinaryCode BinaryCode::from_signs(std::span<const double> values) {
  BinaryCode code(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= 0.0) code.words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return code;
}

BinaryCode BinaryCode::from_bytes(std::size_t m, std::span<const std::uint8_t> bytes) {
  const std::size_t want = (m + 7) / 8;
  if (bytes.size() != want) {
    throw LoadError("code of " + std::to_string(m) + " bits needs " + std::to_string(want) +
                    " bytes, got " + std::to_string(bytes.size()));
  }
  BinaryCode code(m);
  for (std::size_t b = 0; b < bytes.size(); ++b) {
    code.words_[b / 8] |= std::uint64_t{bytes[b]} << (8 * (b % 8));
  }
  if (m % 8 != 0 && (bytes.back() >> (m % 8)) != 0) {
    throw LoadError("code has nonzero padding bits");
  }
  return code;
}

std::vector<std::uint8_t> BinaryCode::to_bytes() const {
  std::vector<std::uint8_t> out((m_ + 7) / 8);
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] = static_cast<std::uint8_t>(words_[b / 8] >> (8 * (b % 8)));
  }
  return out;
}

BinaryCode BinaryCode::complement() const {
  BinaryCode out(m_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
  if (m_ % 64 != 0) out.words_.back() &= (std::uint64_t{1} << (m_ % 64)) - 1;
  return out;
}

BinaryCode embed_binary(const LinearMap& a, const DitherVector& tau, std::span<const double> x) {
  if (tau.size() != a.output_dim()) {
    throw InvalidInput("dither length " + std::to_string(tau.size()) +
                       " does not match operator output " + std::to_string(a.output_dim()));
  }
  RealVector y = a(x);
  const auto t = tau.values();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += t[i];
  return BinaryCode::from_signs(y);
}

std::vector<BinaryCode> embed_all(const LinearMap& a, const DitherVector& tau, const PointSet& t) {
  if (tau.size() != a.output_dim()) {
    throw InvalidInput("dither length " + std::to_string(tau.size()) +
                       " does not match operator output " + std::to_string(a.output_dim()));
  }
  RowMatrix images = a.apply_rows(t.matrix());
  const auto d = tau.values();
  std::vector<BinaryCode> codes;
  codes.reserve(t.count());
  RealVector shifted(a.output_dim());
  for (Eigen::Index r = 0; r < images.rows(); ++r) {
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      shifted[i] = images(r, static_cast<Eigen::Index>(i)) + d[i];
    }
    codes.push_back(BinaryCode::from_signs(shifted));
  }
  return codes;
}

std::size_t hamming(const BinaryCode& a, const BinaryCode& b) {
  if (a.size() != b.size()) {
    throw InvalidInput("hamming distance between codes of length " + std::to_string(a.size()) +
                       " and " + std::to_string(b.size()));
  }
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t count = 0;
  for (std::size_t w = 0; w < wa.size(); ++w) {
    std::uint64_t diff = wa[w] ^ wb[w];
    if (w + 1 == wa.size() && a.size() % 64 != 0) diff &= (std::uint64_t{1} << (a.size() % 64)) - 1;
    count += static_cast<std::size_t>(std::popcount(diff));
  }
  return count;
}

double plan_lambda(double radius, double delta, const PlanConstants& c) {
  return c.c1 * radius * std::sqrt(std::max(std::log(radius / delta), 1.0));
}

double plan_theta(double lambda, double delta, const PlanConstants& c) {
  return delta / (c.c0 * std::sqrt(std::log(std::numbers::e * lambda / delta)));
}

EmbeddingPlan plan_parameters(double radius, double delta, double log_net_size,
                              double local_width_sq, const PlanConstants& constants) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidInput("radius R must be positive, got " + std::to_string(radius));
  }
  if (!(delta > 0.0) || delta > radius / 2.0) {
    throw InvalidInput("delta must satisfy 0 < delta < R/2 (got delta=" + std::to_string(delta) +
                       ", R=" + std::to_string(radius) + ")");
  }
  if (!(constants.c0 > 0 && constants.c1 > 0 && constants.c2 > 0 && constants.c3 > 0 &&
        constants.kappa > 0)) {
    throw InvalidInput("plan constants must all be positive");
  }
  if (log_net_size < 0.0 || local_width_sq < 0.0) {
    throw InvalidInput("complexity inputs must be nonnegative");
  }

  EmbeddingPlan plan;
  plan.delta = delta;
  plan.radius = radius;
  plan.constants = constants;
  plan.kappa = constants.kappa;
  plan.log_net_size = log_net_size;
  plan.local_width_sq = local_width_sq;
  plan.lambda = plan_lambda(radius, delta, constants);
  plan.theta = plan_theta(plan.lambda, delta, constants);

  const double bound =
      constants.c3 * (plan.lambda * plan.lambda * log_net_size / (delta * delta) +
                      plan.lambda * local_width_sq / (delta * delta * delta));
  plan.m = static_cast<std::size_t>(std::ceil(bound));
  if (plan.m == 0) {
    throw PlanInfeasible("row bound evaluates to m = 0 (empty complexity inputs); a larger m is "
                         "needed for k = floor(delta m / lambda) >= 1");
  }
  plan.k = static_cast<std::size_t>(std::floor(delta * static_cast<double>(plan.m) / plan.lambda));
  if (plan.k == 0) {
    throw PlanInfeasible("k = floor(delta m / lambda) = 0 with m = " + std::to_string(plan.m) +
                         "; increase m (c3) so that m >= lambda / delta");
  }
  return plan;
}

EmbeddingPlan plan_for_points(const PointSet& t, double delta, const PlanConstants& constants,
                              std::size_t width_trials, std::uint64_t seed) {
  const double radius = t.radius();
  if (!(radius > 0.0)) throw InvalidInput("point set has radius 0; nothing to embed");
  if (!(delta > 0.0) || delta > radius / 2.0) {
    throw InvalidInput("delta must satisfy 0 < delta < R/2 (got delta=" + std::to_string(delta) +
                       ", R=" + std::to_string(radius) + ")");
  }
  const double lambda = plan_lambda(radius, delta, constants);
  const double theta = plan_theta(lambda, delta, constants);
  const double log_net = std::log(static_cast<double>(greedy_net_indices(t, theta).size()));
  const double width_sq = localized_width(t, theta, width_trials, seed).value;
  EmbeddingPlan plan = plan_parameters(radius, delta, log_net, width_sq, constants);
  plan.n = t.dim();
  return plan;
}

double estimate_distance(const BinaryCode& a, const BinaryCode& b, double lambda, double kappa) {
  const std::size_t d = hamming(a, b);
  if (a.size() == 0) return 0.0;
  return 2.0 * lambda * kappa / static_cast<double>(a.size()) * static_cast<double>(d);
}

double estimate_distance(const BinaryCode& a, const BinaryCode& b, const EmbeddingPlan& plan) {
  return estimate_distance(a, b, plan.lambda, plan.kappa);
}

}  // namespace hcube
