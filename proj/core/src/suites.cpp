#include "hcube/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "hcube/complexity.hpp"
#include "hcube/data.hpp"
#include "hcube/error.hpp"
#include "hcube/oracles.hpp"
#include "hcube/parallel.hpp"
#include "hcube/rng.hpp"
#include "hcube/spectral.hpp"

namespace hcube {
namespace {

// Per-criterion stream tags, mixed into the suite seed.
enum : std::uint64_t {
  kSpectralPairs = 0x0101,
  kDiagonalPairs = 0x0102,
  kOperatorBuild = 0x0201,
  kOperatorVectors = 0x0202,
  kNormalization = 0x0301,
  kNormalizationPoint = 0x0302,
  kJlPoints = 0x0401,
  kJlCirculant = 0x0402,
  kJlGaussian = 0x0403,
  kBinaryPoints = 0x0501,
  kBinaryPlan = 0x0502,
  kBinaryCirculant = 0x0503,
  kBinaryGaussian = 0x0504,
  kBinaryDither = 0x0505,
  kRegularityOperator = 0x0701,
  kRegularitySampler = 0x0702,
  kBlockOperator = 0x0703,
  kBlockSampler = 0x0704,
  kKnormVectors = 0x0801,
  kBench = 0x0901,
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CheckResult at_most(std::string name, int criterion, double observed, double threshold) {
  CheckResult c;
  c.name = std::move(name);
  c.parameters["criterion"] = criterion;
  c.observed = observed;
  c.threshold = threshold;
  c.pass = observed <= threshold;
  c.note = "observed <= threshold";
  return c;
}

CheckResult at_least(std::string name, int criterion, double observed, double threshold) {
  CheckResult c;
  c.name = std::move(name);
  c.parameters["criterion"] = criterion;
  c.observed = observed;
  c.threshold = threshold;
  c.pass = observed >= threshold;
  c.note = "observed >= threshold";
  return c;
}

std::vector<std::uint64_t> trial_seeds(std::uint64_t base, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = trial_seed(base, i);
  return out;
}

RealVector gaussian_vector(std::size_t n, Rng& rng) {
  RealVector v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

double relative_error(std::span<const double> got, std::span<const double> want) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    num += (got[i] - want[i]) * (got[i] - want[i]);
    den += want[i] * want[i];
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

std::size_t count_true(const std::vector<char>& flags) {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
}

// ---- criterion 1 ---------------------------------------------------------

std::vector<CheckResult> spectral_checks(const AcceptanceConfig& cfg) {
  constexpr std::size_t kPairs = 100;
  const std::size_t conv_sizes[] = {8, 12, 64, 512, 4096};

  Stopwatch conv_clock;
  double worst = 0.0;
  for (std::size_t n : conv_sizes) {
    const std::uint64_t base = derive_seed(cfg.seed, kSpectralPairs + (n << 16));
    for (std::size_t p = 0; p < kPairs; ++p) {
      Rng rng(trial_seed(base, p));
      const RealVector x = gaussian_vector(n, rng);
      const RealVector y = gaussian_vector(n, rng);
      worst = std::max(worst, relative_error(circ_convolve(x, y), circ_convolve_direct(x, y)));
    }
  }
  auto conv = at_most("spectral.convolution", 1, worst, cfg.convolution_tol);
  conv.parameters["pairs_per_n"] = kPairs;
  conv.seeds = {cfg.seed};
  conv.wall_time_s = conv_clock.seconds();

  Stopwatch diag_clock;
  const std::pair<std::size_t, std::size_t> diag_sizes[] = {{8, 20}, {64, 20}, {512, 10}, {4096, 3}};
  double diag_worst = 0.0;
  for (auto [n, pairs] : diag_sizes) {
    const std::uint64_t base = derive_seed(cfg.seed, kDiagonalPairs + (n << 16));
    for (std::size_t p = 0; p < pairs; ++p) {
      Rng rng(trial_seed(base, p));
      const RealVector x = gaussian_vector(n, rng);
      const RealVector g = gaussian_vector(n, rng);
      diag_worst = std::max(diag_worst, diagonalization_residual(x, g).value);
    }
  }
  auto diag = at_most("spectral.diagonalization", 1, diag_worst, cfg.convolution_tol);
  diag.seeds = {cfg.seed};
  diag.wall_time_s = diag_clock.seconds();
  return {conv, diag};
}

// ---- criterion 2 ---------------------------------------------------------

std::vector<CheckResult> operator_identity_checks(const AcceptanceConfig& cfg) {
  constexpr std::size_t kVectors = 50;
  Stopwatch clock;
  double mat_worst = 0.0;
  double fac_worst = 0.0;
  std::size_t cases = 0;
  for (std::size_t n : {16, 64, 256}) {
    for (IndexMode mode : {IndexMode::kFixed, IndexMode::kSelectors}) {
      const std::size_t m = n / 2;
      const std::uint64_t op_seed =
          derive_seed(cfg.seed, kOperatorBuild + (n << 16) + static_cast<std::uint64_t>(mode));
      const auto op = DoubleCirculantOperator::build(n, m, mode, op_seed);
      const Eigen::MatrixXd dense = op.materialize();
      const double root_rows = std::sqrt(static_cast<double>(op.scaling_rows()));
      const auto eps = op.eps().entries();
      Rng rng(derive_seed(op_seed, kOperatorVectors));
      for (std::size_t v = 0; v < kVectors; ++v) {
        const RealVector x = gaussian_vector(n, rng);
        const RealVector fast = op.apply(x);
        const Eigen::VectorXd slow = dense * Eigen::Map<const Eigen::VectorXd>(x.data(), n);
        mat_worst = std::max(mat_worst, relative_error(fast, {slow.data(), fast.size()}));

        RealVector dx(n);
        for (std::size_t i = 0; i < n; ++i) dx[i] = eps[i] * x[i];
        RealVector via_b = op.apply_B(dx);
        for (auto& value : via_b) value *= root_rows;
        fac_worst = std::max(fac_worst, relative_error(via_b, fast));
      }
      ++cases;
    }
  }
  auto mat = at_most("operator.materialize", 2, mat_worst, cfg.materialize_tol);
  mat.parameters["vectors"] = kVectors;
  mat.parameters["cases"] = static_cast<double>(cases);
  mat.seeds = {cfg.seed};
  mat.wall_time_s = clock.seconds();
  auto fac = at_most("operator.factorization", 2, fac_worst, cfg.factorization_tol);
  fac.seeds = {cfg.seed};
  fac.wall_time_s = mat.wall_time_s;
  return {mat, fac};
}

// ---- criterion 3 ---------------------------------------------------------

std::vector<CheckResult> normalization_checks(const AcceptanceConfig& cfg) {
  constexpr std::size_t kOperators = 200;
  constexpr std::size_t n = 1024;
  constexpr std::size_t m = 256;
  Stopwatch clock;
  const PointSet point = generate(
      {.kind = GeneratorKind::kSphere, .count = 1, .n = n,
       .seed = derive_seed(cfg.seed, kNormalizationPoint)});
  const auto seeds = trial_seeds(derive_seed(cfg.seed, kNormalization), kOperators);
  std::vector<double> values(kOperators);
  parallel_for(kOperators, [&](std::size_t i) {
    const auto op = DoubleCirculantOperator::build(n, m, IndexMode::kFixed, seeds[i]);
    values[i] = l1_norm(op.apply_C(point.row(0)));
  });
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(kOperators);
  auto c = at_most("operator.l1_normalization", 3, std::abs(mean - 1.0), cfg.l1_mean_tol);
  c.parameters["mean"] = mean;
  c.parameters["n"] = n;
  c.parameters["m"] = m;
  c.seeds = seeds;
  c.wall_time_s = clock.seconds();
  return {c};
}

// ---- criterion 4 ---------------------------------------------------------

std::vector<CheckResult> jl_checks(const AcceptanceConfig& cfg) {
  constexpr std::size_t n = 4096;
  constexpr std::size_t points = 64;
  constexpr double eps = 0.25;
  const auto m = static_cast<std::size_t>(
      std::ceil(cfg.jl_c / (eps * eps) * std::log(static_cast<double>(points))));
  const PointSet t = generate({.kind = GeneratorKind::kSphere, .count = points, .n = n,
                               .seed = derive_seed(cfg.seed, kJlPoints)});
  const double kappa = std::sqrt(std::numbers::pi / 2.0);

  auto run = [&](bool circulant) {
    Stopwatch clock;
    const auto seeds =
        trial_seeds(derive_seed(cfg.seed, circulant ? kJlCirculant : kJlGaussian), cfg.seeds);
    std::vector<double> errors(cfg.seeds);
    parallel_for(cfg.seeds, [&](std::size_t i) {
      if (circulant) {
        const auto op = DoubleCirculantOperator::build(n, m, IndexMode::kSelectors, seeds[i]);
        errors[i] = measure_l2l1_distortion(map_C(op), t);
      } else {
        const auto g = GaussianDenseOperator::build(m, n, seeds[i]);
        errors[i] = measure_l2l1_distortion(map_of(g).scaled(kappa / static_cast<double>(m)), t);
      }
    });
    const auto passing = static_cast<double>(
        std::count_if(errors.begin(), errors.end(), [&](double e) { return e <= eps; }));
    auto c = at_least(circulant ? "l1.double_circulant" : "l1.gaussian", 4, passing,
                      static_cast<double>(circulant ? cfg.min_jl_dc : cfg.min_jl_gaussian));
    c.parameters["n"] = n;
    c.parameters["m"] = static_cast<double>(m);
    c.parameters["c"] = cfg.jl_c;
    c.parameters["epsilon"] = eps;
    c.parameters["seeds"] = static_cast<double>(cfg.seeds);
    c.parameters["median_error"] = median(errors);
    c.parameters["max_error"] = percentile(errors, 1.0);
    c.seeds = seeds;
    c.wall_time_s = clock.seconds();
    return c;
  };
  return {run(true), run(false)};
}

// ---- criteria 5 and 6 ----------------------------------------------------

struct BinarySetup {
  PointSet points;
  EmbeddingPlan plan;
  std::size_t n;
};

constexpr double kBinaryDelta = 0.25;

BinarySetup binary_setup(const AcceptanceConfig& cfg) {
  constexpr std::size_t n = 2048;
  PointSet t = generate({.kind = GeneratorKind::kSphere, .count = 32, .n = n,
                         .seed = derive_seed(cfg.seed, kBinaryPoints)});
  EmbeddingPlan plan = plan_for_points(t, kBinaryDelta, cfg.plan, cfg.width_trials,
                                       derive_seed(cfg.seed, kBinaryPlan));
  return {std::move(t), plan, n};
}

void describe_plan(CheckResult& c, const BinarySetup& s) {
  c.parameters["n"] = static_cast<double>(s.n);
  c.parameters["delta"] = s.plan.delta;
  c.parameters["lambda"] = s.plan.lambda;
  c.parameters["theta"] = s.plan.theta;
  c.parameters["m"] = static_cast<double>(s.plan.m);
  c.parameters["k"] = static_cast<double>(s.plan.k);
  c.parameters["c0"] = s.plan.constants.c0;
  c.parameters["c1"] = s.plan.constants.c1;
  c.parameters["c2"] = s.plan.constants.c2;
  c.parameters["c3"] = s.plan.constants.c3;
}

CheckResult unfit_plan(std::string name, int criterion, const BinarySetup& s) {
  auto c = at_least(std::move(name), criterion, 0.0, 1.0);
  describe_plan(c, s);
  c.note = "plan needs m=" + std::to_string(s.plan.m) + " rows, more than n=" +
           std::to_string(s.n) + " allows";
  return c;
}

std::vector<CheckResult> binary_checks(const AcceptanceConfig& cfg) {
  Stopwatch setup_clock;
  const BinarySetup s = binary_setup(cfg);
  const double setup_time = setup_clock.seconds();
  const auto dither_seeds = trial_seeds(derive_seed(cfg.seed, kBinaryDither), cfg.seeds);

  auto run = [&](bool circulant) -> CheckResult {
    const char* name = circulant ? "distortion.double_circulant" : "distortion.gaussian";
    if (circulant && !s.plan.fits_dimension(s.n)) return unfit_plan(name, 5, s);
    Stopwatch clock;
    const auto seeds = trial_seeds(
        derive_seed(cfg.seed, circulant ? kBinaryCirculant : kBinaryGaussian), cfg.seeds);
    std::vector<double> errors(cfg.seeds);
    parallel_for(cfg.seeds, [&](std::size_t i) {
      const auto tau = DitherVector::make(s.plan.m, s.plan.lambda, dither_seeds[i]);
      if (circulant) {
        const auto op = DoubleCirculantOperator::build(s.n, s.plan.m, IndexMode::kFixed, seeds[i]);
        errors[i] = measure_binary_distortion(map_A(op), tau, s.plan, s.points);
      } else {
        const auto g = GaussianDenseOperator::build(s.plan.m, s.n, seeds[i]);
        errors[i] = measure_binary_distortion(map_of(g), tau, s.plan, s.points);
      }
    });
    const auto passing = static_cast<double>(std::count_if(
        errors.begin(), errors.end(), [&](double e) { return e <= s.plan.delta; }));
    auto c = at_least(name, 5, passing,
                      static_cast<double>(circulant ? cfg.min_binary_dc : cfg.min_binary_gaussian));
    describe_plan(c, s);
    c.parameters["seeds"] = static_cast<double>(cfg.seeds);
    c.parameters["median_error"] = median(errors);
    c.parameters["max_error"] = percentile(errors, 1.0);
    c.seeds = seeds;
    c.wall_time_s = clock.seconds() + setup_time;
    return c;
  };
  return {run(true), run(false)};
}

std::vector<CheckResult> condition_checks(const AcceptanceConfig& cfg) {
  Stopwatch clock;
  const BinarySetup s = binary_setup(cfg);
  if (!s.plan.fits_dimension(s.n)) return {unfit_plan("spread.conditions", 6, s)};
  const PointSet net = greedy_net(s.points, s.plan.theta);
  const PointSet diffs = difference_set(s.points, s.plan.theta);
  const auto seeds = trial_seeds(derive_seed(cfg.seed, kBinaryCirculant), cfg.seeds);

  std::vector<char> held(cfg.seeds, 0);
  std::vector<double> l1(cfg.seeds), spread(cfg.seeds);
  parallel_for(cfg.seeds, [&](std::size_t i) {
    const auto op = DoubleCirculantOperator::build(s.n, s.plan.m, IndexMode::kFixed, seeds[i]);
    const LinearMap a = map_A(op);
    l1[i] = check_l1_concentration(a, net, s.plan.kappa);
    const auto ws = check_well_spread(a, net, diffs, s.plan.k, s.plan.lambda, s.plan.delta);
    spread[i] = ws.net_value;
    held[i] = l1[i] <= s.plan.delta && ws.net_pass && ws.diff_pass;
  });
  auto c = at_least("spread.conditions", 6, static_cast<double>(count_true(held)),
                    static_cast<double>(cfg.min_conditions));
  describe_plan(c, s);
  c.parameters["net_size"] = static_cast<double>(net.count());
  c.parameters["difference_set_size"] = static_cast<double>(diffs.count());
  c.parameters["max_l1_deviation"] = percentile(l1, 1.0);
  c.parameters["max_net_knorm"] = percentile(spread, 1.0);
  c.seeds = seeds;
  c.wall_time_s = clock.seconds();
  return {c};
}

// ---- criterion 7 ---------------------------------------------------------

std::vector<CheckResult> regularity_checks(const AcceptanceConfig& cfg) {
  constexpr std::size_t n = 4096;
  constexpr std::size_t m = 256;
  Stopwatch clock;
  const auto op_seeds = trial_seeds(derive_seed(cfg.seed, kRegularityOperator), cfg.seeds);
  const auto sample_seeds = trial_seeds(derive_seed(cfg.seed, kRegularitySampler), cfg.seeds);
  const double envelope = cfg.regularity_envelope * std::pow(std::log(static_cast<double>(n)), 2.5);

  std::vector<double> scaled(cfg.seeds), rho_m(cfg.seeds), rho_4m(cfg.seeds);
  parallel_for(cfg.seeds, [&](std::size_t i) {
    const auto op = DoubleCirculantOperator::build(n, m, IndexMode::kFixed, op_seeds[i]);
    const auto op4 = DoubleCirculantOperator::build(n, 4 * m, IndexMode::kFixed, op_seeds[i]);
    rho_m[i] = check_strong_regularity(map_B(op), cfg.regularity_r_max, cfg.regularity_samples,
                                       sample_seeds[i]).rho_hat;
    rho_4m[i] = check_strong_regularity(map_B(op4), cfg.regularity_r_max,
                                        cfg.regularity_samples, sample_seeds[i]).rho_hat;
    scaled[i] = rho_m[i] * std::sqrt(static_cast<double>(m));
  });
  const double elapsed = clock.seconds();

  std::size_t within = 0;
  std::size_t decreased = 0;
  for (std::size_t i = 0; i < cfg.seeds; ++i) {
    within += scaled[i] <= envelope;
    decreased += rho_4m[i] < rho_m[i];
  }
  auto env = at_least("regularity.envelope", 7, static_cast<double>(within),
                      static_cast<double>(cfg.min_envelope));
  env.parameters["n"] = n;
  env.parameters["m"] = m;
  env.parameters["envelope"] = envelope;
  env.parameters["envelope_constant"] = cfg.regularity_envelope;
  env.parameters["r_max"] = static_cast<double>(cfg.regularity_r_max);
  env.parameters["samples"] = static_cast<double>(cfg.regularity_samples);
  env.parameters["median_rho_sqrt_m"] = median(scaled);
  env.parameters["max_rho_sqrt_m"] = percentile(scaled, 1.0);
  env.seeds = op_seeds;
  env.wall_time_s = elapsed;

  std::vector<double> ratios(cfg.seeds);
  for (std::size_t i = 0; i < cfg.seeds; ++i) ratios[i] = rho_4m[i] / rho_m[i];
  auto rate = at_least("regularity.rate", 7, static_cast<double>(decreased),
                       static_cast<double>(cfg.min_rate));
  rate.parameters["n"] = n;
  rate.parameters["m"] = m;
  rate.parameters["m_large"] = 4 * m;
  rate.parameters["median_ratio"] = median(ratios);
  rate.seeds = op_seeds;
  rate.wall_time_s = elapsed;

  Stopwatch block_clock;
  constexpr std::size_t block_n = 128;
  constexpr std::size_t block_m = 64;
  const auto block_seeds = trial_seeds(derive_seed(cfg.seed, kBlockOperator), cfg.seeds);
  std::vector<char> held(cfg.seeds, 0);
  parallel_for(cfg.seeds, [&](std::size_t i) {
    const auto op =
        DoubleCirculantOperator::build(block_n, block_m, IndexMode::kFixed, block_seeds[i]);
    const LinearMap b = map_B(op);
    bool ok = true;
    for (std::size_t r : {1, 2, 4, 8}) {
      ok = ok && check_block_regularity(b, r, cfg.block_samples,
                                        derive_seed(block_seeds[i], kBlockSampler + r))
                     .holds;
    }
    held[i] = ok;
  });
  auto block = at_least("regularity.block", 7, static_cast<double>(count_true(held)),
                        static_cast<double>(cfg.min_block));
  block.parameters["n"] = block_n;
  block.parameters["m"] = block_m;
  block.parameters["samples"] = static_cast<double>(cfg.block_samples);
  block.seeds = block_seeds;
  block.wall_time_s = block_clock.seconds();
  return {env, rate, block};
}

// ---- criterion 8 ---------------------------------------------------------

std::vector<CheckResult> knorm_checks(const AcceptanceConfig& cfg) {
  constexpr std::size_t kVectors = 100;
  constexpr std::size_t n = 8;
  Stopwatch clock;
  Rng rng(derive_seed(cfg.seed, kKnormVectors));
  double worst = 0.0;
  for (std::size_t v = 0; v < kVectors; ++v) {
    RealVector x = gaussian_vector(n, rng);
    // Every fourth vector gets repeated magnitudes to exercise ties.
    if (v % 4 == 3) {
      for (auto& value : x) value = std::round(value * 2.0) / 2.0;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      worst = std::max(worst, std::abs(k_support_norm(x, k) - oracle::k_support_norm_subsets(x, k)));
    }
  }
  auto c = at_most("spread.k_support_norm", 8, worst, cfg.knorm_tol);
  c.parameters["vectors"] = kVectors;
  c.parameters["n"] = n;
  c.seeds = {cfg.seed};
  c.wall_time_s = clock.seconds();
  return {c};
}

// ---- criterion 9 ---------------------------------------------------------

std::vector<CheckResult> scaling_checks(const AcceptanceConfig& cfg) {
  const std::vector<std::size_t> sizes{std::size_t{1} << 14, std::size_t{1} << 15,
                                       std::size_t{1} << 16, std::size_t{1} << 17};
  Stopwatch clock;
  BenchOptions options;
  options.include_dense = false;
  options.seed = derive_seed(cfg.seed, kBench);
  const auto rows = bench_scaling(sizes, [](std::size_t n) { return n / 4; },
                                  cfg.bench_repetitions, options);
  double worst_ratio = 0.0;
  CheckResult timing;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = rows[i].median_us / rows[i - 1].median_us;
    worst_ratio = std::max(worst_ratio, ratio);
    timing.parameters["ratio_" + std::to_string(rows[i].n)] = ratio;
  }
  for (const auto& row : rows) timing.parameters["median_us_" + std::to_string(row.n)] = row.median_us;
  auto params = timing.parameters;
  timing = at_most("operator.scaling", 9, worst_ratio, cfg.scaling_ratio);
  timing.parameters.insert(params.begin(), params.end());
  timing.parameters["repetitions"] = static_cast<double>(cfg.bench_repetitions);
  timing.seeds = {options.seed};
  timing.wall_time_s = clock.seconds();

  Stopwatch state_clock;
  double worst_per_n = 0.0;
  CheckResult state;
  for (std::size_t n : sizes) {
    const auto op = DoubleCirculantOperator::build(n, n / 4, IndexMode::kFixed, options.seed);
    const double per_n = static_cast<double>(op.state_size()) / static_cast<double>(n);
    worst_per_n = std::max(worst_per_n, per_n);
    state.parameters["state_per_n_" + std::to_string(n)] = per_n;
  }
  params = state.parameters;
  state = at_most("operator.state", 9, worst_per_n, cfg.state_per_n);
  state.parameters.insert(params.begin(), params.end());
  state.seeds = {options.seed};
  state.wall_time_s = state_clock.seconds();
  return {timing, state};
}

}  // namespace

AcceptanceConfig AcceptanceConfig::from(const KeyValueConfig& kv) {
  static const std::set<std::string> known = {
      "version", "seed", "seeds", "c0", "c1", "c2", "c3", "width_trials", "jl_c",
      "regularity_envelope", "regularity_samples", "regularity_r_max", "block_samples",
      "bench_repetitions", "min_jl_dc", "min_jl_gaussian", "min_binary_dc",
      "min_binary_gaussian", "min_conditions", "min_envelope", "min_rate", "min_block",
      "convolution_tol", "materialize_tol", "factorization_tol", "l1_mean_tol", "knorm_tol",
      "scaling_ratio", "state_per_n"};
  for (const auto& [key, value] : kv.entries()) {
    if (!known.contains(key)) throw InvalidInput("unknown acceptance key '" + key + "'");
  }
  AcceptanceConfig c;
  c.seed = kv.get_size("seed", c.seed);
  c.seeds = kv.get_size("seeds", c.seeds);
  c.plan.c0 = kv.get_double("c0", c.plan.c0);
  c.plan.c1 = kv.get_double("c1", c.plan.c1);
  c.plan.c2 = kv.get_double("c2", c.plan.c2);
  c.plan.c3 = kv.get_double("c3", c.plan.c3);
  c.width_trials = kv.get_size("width_trials", c.width_trials);
  c.jl_c = kv.get_double("jl_c", c.jl_c);
  c.regularity_envelope = kv.get_double("regularity_envelope", c.regularity_envelope);
  c.regularity_samples = kv.get_size("regularity_samples", c.regularity_samples);
  c.regularity_r_max = kv.get_size("regularity_r_max", c.regularity_r_max);
  c.block_samples = kv.get_size("block_samples", c.block_samples);
  c.bench_repetitions = kv.get_size("bench_repetitions", c.bench_repetitions);
  c.min_jl_dc = kv.get_size("min_jl_dc", c.min_jl_dc);
  c.min_jl_gaussian = kv.get_size("min_jl_gaussian", c.min_jl_gaussian);
  c.min_binary_dc = kv.get_size("min_binary_dc", c.min_binary_dc);
  c.min_binary_gaussian = kv.get_size("min_binary_gaussian", c.min_binary_gaussian);
  c.min_conditions = kv.get_size("min_conditions", c.min_conditions);
  c.min_envelope = kv.get_size("min_envelope", c.min_envelope);
  c.min_rate = kv.get_size("min_rate", c.min_rate);
  c.min_block = kv.get_size("min_block", c.min_block);
  c.convolution_tol = kv.get_double("convolution_tol", c.convolution_tol);
  c.materialize_tol = kv.get_double("materialize_tol", c.materialize_tol);
  c.factorization_tol = kv.get_double("factorization_tol", c.factorization_tol);
  c.l1_mean_tol = kv.get_double("l1_mean_tol", c.l1_mean_tol);
  c.knorm_tol = kv.get_double("knorm_tol", c.knorm_tol);
  c.scaling_ratio = kv.get_double("scaling_ratio", c.scaling_ratio);
  c.state_per_n = kv.get_double("state_per_n", c.state_per_n);

  if (c.seeds == 0) throw InvalidInput("acceptance seeds must be at least 1");
  if (c.plan.c0 <= 0 || c.plan.c1 <= 0 || c.plan.c2 <= 0 || c.plan.c3 <= 0 || c.jl_c <= 0 ||
      c.regularity_envelope <= 0) {
    throw InvalidInput("acceptance constants must be positive");
  }
  if (c.regularity_samples == 0 || c.block_samples == 0 || c.bench_repetitions == 0 ||
      c.width_trials == 0) {
    throw InvalidInput("acceptance sample counts must be at least 1");
  }
  return c;
}

AcceptanceConfig AcceptanceConfig::load(const std::filesystem::path& path) {
  return from(KeyValueConfig::load(path));
}

std::vector<std::string> suite_names() {
  return {"spectral", "operator", "l1", "distortion", "spread", "regularity", "all"};
}

std::vector<int> suite_criteria(const std::string& name) {
  if (name == "spectral") return {1};
  if (name == "operator") return {2, 3, 9};
  if (name == "l1") return {4};
  if (name == "distortion") return {5};
  if (name == "spread") return {6, 8};
  if (name == "regularity") return {7};
  if (name == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9};
  throw InvalidInput("unknown suite '" + name + "'");
}

std::vector<CheckResult> run_criterion(int criterion, const AcceptanceConfig& config) {
  switch (criterion) {
    case 1: return spectral_checks(config);
    case 2: return operator_identity_checks(config);
    case 3: return normalization_checks(config);
    case 4: return jl_checks(config);
    case 5: return binary_checks(config);
    case 6: return condition_checks(config);
    case 7: return regularity_checks(config);
    case 8: return knorm_checks(config);
    case 9: return scaling_checks(config);
    default: throw InvalidInput("criterion must be in 1..9, got " + std::to_string(criterion));
  }
}

VerificationReport run_suite(const std::string& name, const AcceptanceConfig& config) {
  VerificationReport report;
  for (int criterion : suite_criteria(name)) {
    auto checks = run_criterion(criterion, config);
    for (auto& c : checks) report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace hcube
