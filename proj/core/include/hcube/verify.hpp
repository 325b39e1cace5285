#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hcube/operators.hpp"
#include "hcube/point_set.hpp"
#include "hcube/quantize.hpp"

namespace hcube {

// Unit vectors with exactly r nonzero entries: uniform support, Gaussian
// values, normalized. Sample i depends only on (seed, i).
class SparseSampler {
 public:
  SparseSampler(std::size_t r, std::size_t n, std::size_t samples, std::uint64_t seed);

  std::size_t sparsity() const { return r_; }
  std::size_t dim() const { return n_; }
  std::size_t samples() const { return samples_; }
  std::uint64_t seed() const { return seed_; }

  RealVector sample(std::size_t index) const;
  // All samples, one per row.
  RowMatrix draw_all() const;

 private:
  std::size_t r_;
  std::size_t n_;
  std::size_t samples_;
  std::uint64_t seed_;
};

// sup over pairs i < j of |(kappa/m) ||A(x_i - x_j)||_1 - ||x_i - x_j||_2|,
// m the output dimension of A. With include_origin every point is also
// paired with 0.
double check_l1_concentration(const LinearMap& a, const PointSet& points, double kappa,
                              bool include_origin = false);

// {x - y : x, y in T, ||x - y||_2 <= theta} plus the zero vector; one
// orientation per pair.
PointSet difference_set(const PointSet& t, double theta);

struct WellSpreadResult {
  // (1/sqrt(k)) sup_{x in net} ||Ax||_[k]
  double net_value = 0.0;
  // (1/sqrt(k)) sup_{x in diffs} ||Ax||_[k]
  double diff_value = 0.0;
  bool net_pass = false;   // net_value <= lambda
  bool diff_pass = false;  // diff_value <= delta
};

WellSpreadResult check_well_spread(const LinearMap& a, const PointSet& net, const PointSet& diffs,
                                   std::size_t k, double lambda, double delta);

// |‖Bx‖² - 1| for every sample, in sample order.
std::vector<double> rip_sample_deviations(const LinearMap& b, const SparseSampler& sampler);

// Observed sup of |‖Bx‖² - 1| over the sampler's unit r-sparse vectors.
// A lower bound on the true RIP constant.
double check_rip(const LinearMap& b, const SparseSampler& sampler);

struct RegularityRecord {
  std::size_t r = 0;
  double rip_deviation = 0.0;     // observed sup |‖Bx‖² - 1|
  double spread_deviation = 0.0;  // observed sup ‖Bx‖_[r]
};

struct RegularityProfile {
  std::vector<RegularityRecord> records;
  // max_r max(rip, spread) / sqrt(r)
  double rho_hat = 0.0;
  // log^{5/2}(n) / sqrt(m), the predicted rate without its constant.
  double predicted_rate = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;
};

// Profiles r over {1, 2, 4, ...} up to r_max (r_max itself included). The
// samples for each r come from derive_seed(seed, r).
RegularityProfile check_strong_regularity(const LinearMap& b, std::size_t r_max,
                                          std::size_t samples, std::uint64_t seed);

enum class BlockSampling {
  kMixed,  // (cos phi x, sin phi y) with phi uniform on [0, pi/2]
  kXOnly,  // (x, 0)
  kYOnly,  // (0, y)
};

struct BlockRegularityResult {
  double augmented_deviation = 0.0;  // observed sup |‖Bx + y‖² - ‖x‖² - ‖y‖²|
  double base_rip = 0.0;             // over the normalized x parts
  double base_spread = 0.0;          // sup ‖B x̂‖_[r] over the same x parts
  double bound = 0.0;                // 3 base_rip + 2 base_spread + tolerance
  bool holds = false;
};

// Samples r-sparse x in R^n and r-sparse y in R^m with ‖(x, y)‖ = 1 and
// compares the augmented map (x, y) -> Bx + y against the decomposition
// |‖Bx‖² - ‖x‖²| + 2 |<Bx, y>|.
BlockRegularityResult check_block_regularity(const LinearMap& b, std::size_t r,
                                             std::size_t samples, std::uint64_t seed,
                                             BlockSampling sampling = BlockSampling::kMixed,
                                             double tolerance = 1e-12);

// sup over pairs of |estimate_distance(f(x), f(y)) - ‖x - y‖|, f = sign(A . + tau).
double measure_binary_distortion(const LinearMap& a, const DitherVector& tau,
                                 const EmbeddingPlan& plan, const PointSet& t);

// sup over pairs with x != y of | ‖C(x - y)‖_1 / ‖x - y‖_2 - 1 |.
// Throws InvalidInput if all points coincide.
double measure_l2l1_distortion(const LinearMap& c, const PointSet& t);

struct BenchRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::string op;  // "double_circulant" or "gaussian"
  double median_us = 0.0;
  double p90_us = 0.0;
};

struct BenchOptions {
  bool include_dense = true;
  std::uint64_t seed = 1;
};

// Median and 90th percentile wall time of one apply at each n. Sizes are
// timed round-robin, one apply per size per repetition.
std::vector<BenchRow> bench_scaling(std::span<const std::size_t> n_list,
                                    const std::function<std::size_t(std::size_t)>& m_rule,
                                    std::size_t repetitions, const BenchOptions& options = {});

inline constexpr const char* kBenchCsvHeader = "n,m,operator,median_us,p90_us";
std::string bench_csv(std::span<const BenchRow> rows);

double median(std::vector<double> values);
double percentile(std::vector<double> values, double q);

// One named verification outcome.
struct CheckResult {
  std::string name;
  std::map<std::string, double> parameters;
  std::vector<std::uint64_t> seeds;
  double observed = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double wall_time_s = 0.0;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
};

// JSON with sorted keys: {"checks":[{"name":...,"observed":...,...}]}.
std::string report_to_json(const VerificationReport& report, int indent = -1);
VerificationReport report_from_json(const std::string& text);

}  // namespace hcube
