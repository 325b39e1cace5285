#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hcube/config.hpp"
#include "hcube/quantize.hpp"
#include "hcube/verify.hpp"

namespace hcube {

// Calibrated constants and protocol sizes for the verification suites. The
// defaults are the values shipped in config/acceptance.conf.
struct AcceptanceConfig {
  std::uint64_t seed = 20240601;
  std::size_t seeds = 100;

  // Binary embedding plan (dither range, row count, net scale).
  PlanConstants plan{.c0 = 1.0, .c1 = 2.1, .c2 = 1.0, .c3 = 6.0};
  std::size_t width_trials = 200;

  // Row multiplier for the l2 -> l1 embedding: m = ceil(c eps^-2 log|T|).
  double jl_c = 4.0;

  // rho_hat sqrt(m) <= regularity_envelope * log(n)^{5/2}.
  double regularity_envelope = 0.045;
  std::size_t regularity_samples = 500;
  std::size_t regularity_r_max = 16;
  std::size_t block_samples = 200;

  std::size_t bench_repetitions = 100;

  // Minimum passing seeds and error tolerances. Reports compare observed
  // values against these; the acceptance binary keeps its own pinned copy.
  std::size_t min_jl_dc = 85;
  std::size_t min_jl_gaussian = 95;
  std::size_t min_binary_dc = 85;
  std::size_t min_binary_gaussian = 90;
  std::size_t min_conditions = 85;
  std::size_t min_envelope = 90;
  std::size_t min_rate = 80;
  std::size_t min_block = 95;
  double convolution_tol = 1e-9;
  double materialize_tol = 1e-9;
  double factorization_tol = 1e-10;
  double l1_mean_tol = 0.05;
  double knorm_tol = 1e-12;
  double scaling_ratio = 2.6;
  double state_per_n = 16.0;

  // Unknown keys are rejected so that typos do not silently keep defaults.
  static AcceptanceConfig from(const KeyValueConfig& kv);
  static AcceptanceConfig load(const std::filesystem::path& path);
};

// "spectral", "operator", "l1", "distortion", "spread", "regularity", "all".
std::vector<std::string> suite_names();

// Checks belonging to one numbered acceptance criterion (1..9).
std::vector<CheckResult> run_criterion(int criterion, const AcceptanceConfig& config);

// Criteria per suite: spectral {1}, operator {2, 3, 9}, l1 {4},
// distortion {5}, spread {6, 8}, regularity {7}, all {1..9}.
std::vector<int> suite_criteria(const std::string& name);

VerificationReport run_suite(const std::string& name, const AcceptanceConfig& config);

}  // namespace hcube
