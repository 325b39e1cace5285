// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.
// Calibrated constants (plan constants, JL multiplier, regularity envelope)
// come from the acceptance config; every threshold and time limit is pinned
// here and does not depend on the config file.
//
// usage: hcube_acceptance [config] [--report path] [--only N]...

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hcube/data.hpp"
#include "hcube/suites.hpp"

namespace {

struct Pinned {
  bool at_least;
  double threshold;
};

// Threshold per check name; counts are out of 100 seeds.
const std::map<std::string, Pinned>& pinned() {
  static const std::map<std::string, Pinned> table = {
      {"spectral.convolution", {false, 1e-9}},
      {"spectral.diagonalization", {false, 1e-9}},
      {"operator.materialize", {false, 1e-9}},
      {"operator.factorization", {false, 1e-10}},
      {"operator.l1_normalization", {false, 0.05}},
      {"l1.double_circulant", {true, 85}},
      {"l1.gaussian", {true, 95}},
      {"distortion.double_circulant", {true, 85}},
      {"distortion.gaussian", {true, 90}},
      {"spread.conditions", {true, 85}},
      {"regularity.envelope", {true, 90}},
      {"regularity.rate", {true, 80}},
      {"regularity.block", {true, 95}},
      {"spread.k_support_norm", {false, 1e-12}},
      {"operator.scaling", {false, 2.6}},
      {"operator.state", {false, 16.0}},
  };
  return table;
}

// Wall-time limit in seconds per criterion.
const double kTimeLimit[10] = {0, 10, 30, 120, 600, 900, 600, 1200, 5, 300};

// The scaling ratio bound is strict; all other bounds are inclusive.
bool judge(const std::string& name, double observed) {
  const Pinned& p = pinned().at(name);
  if (name == "operator.scaling") return observed < p.threshold;
  return p.at_least ? observed >= p.threshold : observed <= p.threshold;
}

}  // namespace

int main(int argc, char** argv) {
  std::string config_path = HCUBE_ACCEPTANCE_CONFIG;
  std::string report_path;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--report" && i + 1 < argc) {
      report_path = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      only.insert(std::atoi(argv[++i]));
    } else {
      config_path = arg;
    }
  }

  hcube::AcceptanceConfig config;
  try {
    config = hcube::AcceptanceConfig::load(config_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cannot load %s: %s\n", config_path.c_str(), e.what());
    return 2;
  }
  // Pass counts are pinned against a 100-seed protocol.
  config.seeds = 100;

  hcube::VerificationReport report;
  bool all = true;
  for (int criterion = 1; criterion <= 9; ++criterion) {
    if (!only.empty() && !only.contains(criterion)) continue;
    const auto start = std::chrono::steady_clock::now();
    std::vector<hcube::CheckResult> checks;
    std::string failure;
    try {
      checks = hcube::run_criterion(criterion, config);
    } catch (const std::exception& e) {
      failure = std::string("error: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool ok = failure.empty();
    std::string detail;
    for (const auto& c : checks) {
      const bool pass = judge(c.name, c.observed);
      ok = ok && pass;
      const Pinned& p = pinned().at(c.name);
      const char* op = p.at_least ? ">=" : (c.name == "operator.scaling" ? "<" : "<=");
      char buf[256];
      std::snprintf(buf, sizeof buf, " %s=%.4g%s%.4g%s", c.name.c_str(), c.observed, op,
                    p.threshold, pass ? "" : "(fail)");
      detail += buf;
      report.checks.push_back(c);
    }
    if (elapsed >= kTimeLimit[criterion]) {
      ok = false;
      detail += " time limit exceeded";
    }
    all = all && ok;
    std::printf("criterion %d: %s%s%s [%.1fs < %.0fs]\n", criterion, ok ? "PASS" : "FAIL",
                detail.c_str(), failure.empty() ? "" : (" " + failure).c_str(), elapsed,
                kTimeLimit[criterion]);
    std::fflush(stdout);
  }

  if (!report_path.empty()) hcube::write_report(report_path, report);
  return all ? 0 : 1;
}
