#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hcube/config.hpp"
#include "hcube/data.hpp"
#include "hcube/error.hpp"
#include "hcube/rng.hpp"
#include "hcube/spectral.hpp"
#include "hcube/suites.hpp"

namespace hcube::cli {
namespace {

// Raised for semantic flag errors found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Globals {
  std::string config_path;
  std::optional<double> c0, c1, c2, c3;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;

  Config resolve() const {
    Config cfg;
    if (!config_path.empty()) cfg = Config::from(KeyValueConfig::load(config_path));
    if (c0) cfg.constants.c0 = *c0;
    if (c1) cfg.constants.c1 = *c1;
    if (c2) cfg.constants.c2 = *c2;
    if (c3) cfg.constants.c3 = *c3;
    if (trials) cfg.trials = *trials;
    if (seed) cfg.seed = *seed;
    if (threads) cfg.threads = *threads;
    cfg.validate();
    if (cfg.threads > 0) ::setenv("HC_THREADS", std::to_string(cfg.threads).c_str(), 1);
    return cfg;
  }
};

// ---- gen -----------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::size_t count = 0;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> r;
  std::optional<std::size_t> d;
  std::optional<std::size_t> clusters;
  double spread = 0.1;
  std::string out;
};

int cmd_gen(const GenArgs& a, const Config& cfg, std::ostream& out) {
  GeneratorSpec spec;
  try {
    spec.kind = parse_generator_kind(a.kind);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  spec.count = a.count;
  spec.n = a.n;
  spec.seed = a.seed.value_or(cfg.seed);
  spec.spread = a.spread;
  if (spec.kind == GeneratorKind::kSparse) {
    if (!a.r) throw UsageError("--kind sparse requires --r (nonzeros per point)");
    spec.sparsity = *a.r;
  }
  if (spec.kind == GeneratorKind::kSubspace) {
    if (!a.d) throw UsageError("--kind subspace requires --d (subspace dimension)");
    spec.subspace_dim = *a.d;
  }
  if (spec.kind == GeneratorKind::kClusters) {
    if (!a.clusters) throw UsageError("--kind clusters requires --clusters");
    spec.clusters = *a.clusters;
  }
  PointSet points = [&] {
    try {
      return generate(spec);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
  }();
  write_points(a.out, points);
  out << "wrote " << points.count() << " points of dimension " << points.dim() << " to " << a.out
      << "\n";
  return kOk;
}

// ---- plan ----------------------------------------------------------------

struct PlanArgs {
  std::string points;
  double delta = 0.0;
  std::string out;
};

int cmd_plan(const PlanArgs& a, const Config& cfg, std::ostream& out, std::ostream& err) {
  const PointSet t = read_points(a.points);
  const double radius = t.radius();
  if (!(a.delta > 0.0) || a.delta > radius / 2.0) {
    err << "infeasible plan: need 0 < delta < R/2, got delta=" << format_double(a.delta)
        << " with measured R=" << format_double(radius) << "\n";
    return kInfeasible;
  }
  const EmbeddingPlan plan =
      plan_for_points(t, a.delta, cfg.constants, cfg.trials, derive_seed(cfg.seed, stream::kWidth));
  if (!a.out.empty()) write_plan(a.out, plan);
  out << plan_to_json(plan) << "\n";
  return kOk;
}

// ---- embed ---------------------------------------------------------------

struct EmbedArgs {
  std::string points;
  std::string plan;
  std::string op = "dc";
  std::string mode = "fixed";
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_embed(const EmbedArgs& a, const Config& cfg, std::ostream& out, std::ostream& err) {
  const PointSet t = read_points(a.points);
  const EmbeddingPlan plan = read_plan(a.plan);
  const std::size_t n = t.dim();
  if (plan.n != 0 && plan.n != n) {
    throw UsageError("plan was made for dimension " + std::to_string(plan.n) +
                     " but the points have dimension " + std::to_string(n));
  }
  const std::uint64_t seed = a.seed.value_or(cfg.seed);

  std::vector<BinaryCode> codes;
  std::size_t m = plan.m;
  if (a.op == "dc") {
    if (!is_power_of_two(n)) {
      throw UsageError("double circulant embedding needs power-of-two n, got " + std::to_string(n));
    }
    if (plan.m > n) {
      throw UsageError("plan asks for m=" + std::to_string(plan.m) + " rows but n=" +
                       std::to_string(n) + "; use --operator gauss or more dimensions");
    }
    if (!plan.fits_dimension(n)) {
      err << "warning: n=" << n << " is below c2*m=" << format_double(plan.constants.c2 * plan.m)
          << "\n";
    }
    if (a.mode != "fixed" && a.mode != "selectors") {
      throw UsageError("--mode must be fixed or selectors, got " + a.mode);
    }
    const IndexMode mode = a.mode == "fixed" ? IndexMode::kFixed : IndexMode::kSelectors;
    const auto op = DoubleCirculantOperator::build(n, plan.m, mode, seed);
    m = op.output_dim();
    if (mode == IndexMode::kSelectors) {
      err << "selector mode: realized |I| = " << m << " (nominal " << plan.m << ")\n";
      if (m == 0) throw UsageError("selector draw kept no rows; try another --seed");
    }
    const auto tau = DitherVector::make(m, plan.lambda, derive_seed(seed, stream::kDither));
    codes = embed_all(map_A(op), tau, t);
  } else if (a.op == "gauss") {
    const auto g = GaussianDenseOperator::build(plan.m, n, seed);
    const auto tau = DitherVector::make(m, plan.lambda, derive_seed(seed, stream::kDither));
    codes = embed_all(map_of(g), tau, t);
  } else {
    throw UsageError("--operator must be dc or gauss, got " + a.op);
  }
  write_codes(a.out, codes, m);
  out << "wrote " << codes.size() << " codes of " << m << " bits to " << a.out << "\n";
  return kOk;
}

// ---- estimate ------------------------------------------------------------

struct EstimateArgs {
  std::string codes;
  std::string plan;
  std::string pairs = "all";
  bool selectors = false;
};

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& spec,
                                                             std::size_t count) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (spec == "all") {
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
  }
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dash = item.find('-');
    std::size_t i = 0;
    std::size_t j = 0;
    try {
      if (dash == std::string::npos) throw std::invalid_argument(item);
      std::size_t used = 0;
      i = std::stoul(item.substr(0, dash), &used);
      if (used != dash) throw std::invalid_argument(item);
      j = std::stoul(item.substr(dash + 1), &used);
      if (used != item.size() - dash - 1) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("--pairs expects 'all' or a list like 0-1,2-3; bad item '" + item + "'");
    }
    if (i >= count || j >= count) {
      throw UsageError("pair " + item + " is out of range for " + std::to_string(count) + " codes");
    }
    pairs.emplace_back(i, j);
  }
  if (pairs.empty()) throw UsageError("--pairs list is empty");
  return pairs;
}

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  const auto codes = read_codes(a.codes);
  const EmbeddingPlan plan = read_plan(a.plan);
  if (!codes.empty() && codes.front().size() != plan.m) {
    if (!a.selectors || (plan.n != 0 && codes.front().size() > plan.n)) {
      throw UsageError("codes have " + std::to_string(codes.front().size()) +
                       " bits but the plan has m=" + std::to_string(plan.m) +
                       (a.selectors ? "" : "; pass --selectors for selector-mode codes"));
    }
  }
  out << "i,j,d_hamming,estimate\n";
  for (auto [i, j] : parse_pairs(a.pairs, codes.size())) {
    out << i << "," << j << "," << hamming(codes[i], codes[j]) << ","
        << format_double(estimate_distance(codes[i], codes[j], plan)) << "\n";
  }
  return kOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::optional<std::size_t> seeds;
  std::string acceptance;
  std::vector<std::string> overrides;
  std::string report;
};

int cmd_verify(const VerifyArgs& a, const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), a.suite) == names.end()) {
    throw UsageError("unknown suite '" + a.suite + "'");
  }
  std::string path = a.acceptance.empty() ? cfg.acceptance_path : a.acceptance;
#ifdef HCUBE_DEFAULT_ACCEPTANCE
  if (path.empty() && std::filesystem::exists(HCUBE_DEFAULT_ACCEPTANCE)) {
    path = HCUBE_DEFAULT_ACCEPTANCE;
  }
#endif
  KeyValueConfig kv = path.empty() ? KeyValueConfig{} : KeyValueConfig::load(path);
  for (const auto& o : a.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got " + o);
    kv.set(o.substr(0, eq), o.substr(eq + 1));
  }
  AcceptanceConfig acceptance = [&] {
    try {
      return AcceptanceConfig::from(kv);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
  }();
  if (a.seeds) {
    if (*a.seeds == 0) throw UsageError("--seeds must be at least 1");
    acceptance.seeds = *a.seeds;
  }

  const VerificationReport report = run_suite(a.suite, acceptance);
  const std::string json = report_to_json(report, 2);
  if (a.report.empty()) {
    out << json << "\n";
  } else {
    write_file_atomic(a.report, json + "\n");
  }
  for (const auto& c : report.checks) {
    if (!c.pass) {
      err << "FAIL " << c.name << ": observed " << format_double(c.observed) << ", threshold "
          << format_double(c.threshold) << " (" << c.note << ")\n";
    }
  }
  return report.all_passed() ? kOk : kFailure;
}

// ---- bench ---------------------------------------------------------------

struct BenchArgs {
  std::string n_list;
  std::optional<std::size_t> m;
  std::size_t reps = 10;
  bool no_dense = false;
  std::string out;
};

int cmd_bench(const BenchArgs& a, const Config& cfg, std::ostream& out) {
  std::vector<std::size_t> sizes;
  std::stringstream in(a.n_list);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    std::size_t n = 0;
    try {
      n = std::stoul(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !is_power_of_two(n)) {
      throw UsageError("--n-list entries must be powers of two, got '" + item + "'");
    }
    if (a.m && *a.m > n) {
      throw UsageError("--m " + std::to_string(*a.m) + " exceeds n=" + std::to_string(n));
    }
    sizes.push_back(n);
  }
  if (sizes.empty()) throw UsageError("--n-list is empty");
  if (a.reps == 0) throw UsageError("--reps must be at least 1");
  BenchOptions options;
  options.include_dense = !a.no_dense;
  options.seed = cfg.seed;
  const std::optional<std::size_t> fixed_m = a.m;
  const auto rows = bench_scaling(
      sizes, [&](std::size_t n) { return fixed_m ? *fixed_m : std::max<std::size_t>(1, n / 4); },
      a.reps, options);
  const std::string csv = bench_csv(rows);
  if (a.out.empty()) {
    out << csv;
  } else {
    write_file_atomic(a.out, csv);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hcube: fast binary embeddings with double circulant matrices", "hcube"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");

  Globals g;
  app.add_option("--config", g.config_path, "key=value config file")->check(CLI::ExistingFile);
  app.add_option("--c0", g.c0, "net scale constant");
  app.add_option("--c1", g.c1, "dither range constant");
  app.add_option("--c2", g.c2, "dimension requirement constant");
  app.add_option("--c3", g.c3, "row count constant");
  app.add_option("--trials", g.trials, "Monte Carlo trials for width estimates");
  app.add_option("--threads", g.threads, "worker threads (sets HC_THREADS)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a point set");
  gen_cmd->add_option("--kind", gen.kind, "sphere|sparse|subspace|clusters|grid")->required();
  gen_cmd->add_option("--count", gen.count, "number of points")->required();
  gen_cmd->add_option("--n", gen.n, "ambient dimension")->required();
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--r", gen.r, "nonzeros per point (sparse)");
  gen_cmd->add_option("--d", gen.d, "subspace dimension (subspace)");
  gen_cmd->add_option("--clusters", gen.clusters, "number of centers (clusters)");
  gen_cmd->add_option("--spread", gen.spread, "noise scale (clusters)");
  gen_cmd->add_option("--out", gen.out, "output file (.hcps or .csv)")->required();

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "plan embedding parameters for a point set");
  plan_cmd->add_option("--points", plan.points, "point file")->required();
  plan_cmd->add_option("--delta", plan.delta, "target accuracy")->required();
  plan_cmd->add_option("--seed", g.seed, "seed for width estimates");
  plan_cmd->add_option("--out", plan.out, "also write the plan to this file");

  EmbedArgs embed;
  auto* embed_cmd = app.add_subcommand("embed", "embed points into the Hamming cube");
  embed_cmd->add_option("--points", embed.points, "point file")->required();
  embed_cmd->add_option("--plan", embed.plan, "plan file")->required();
  embed_cmd->add_option("--operator", embed.op, "dc or gauss");
  embed_cmd->add_option("--mode", embed.mode, "fixed or selectors (dc only)");
  embed_cmd->add_option("--seed", embed.seed, "operator and dither seed");
  embed_cmd->add_option("--out", embed.out, "output code file")->required();

  EstimateArgs estimate;
  auto* estimate_cmd = app.add_subcommand("estimate", "estimate distances from codes");
  estimate_cmd->add_option("--codes", estimate.codes, "code file")->required();
  estimate_cmd->add_option("--plan", estimate.plan, "plan file")->required();
  estimate_cmd->add_option("--pairs", estimate.pairs, "'all' or a list like 0-1,2-3");
  estimate_cmd->add_flag("--selectors", estimate.selectors,
                         "codes come from selector mode; accept a realized length");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", verify.suite,
                         "spectral|operator|l1|distortion|spread|regularity|all")
      ->required();
  verify_cmd->add_option("--seeds", verify.seeds, "seeds per probabilistic check");
  verify_cmd->add_option("--acceptance", verify.acceptance, "acceptance config file");
  verify_cmd->add_option("--set", verify.overrides, "override an acceptance key (key=value)");
  verify_cmd->add_option("--report", verify.report, "write the JSON report here, not stdout");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "time operator application");
  bench_cmd->add_option("--n-list", bench.n_list, "comma-separated powers of two")->required();
  bench_cmd->add_option("--m", bench.m, "rows (default n/4)");
  bench_cmd->add_option("--reps", bench.reps, "timed repetitions per size");
  bench_cmd->add_flag("--no-dense", bench.no_dense, "skip the dense Gaussian baseline");
  bench_cmd->add_option("--seed", g.seed, "operator seed");
  bench_cmd->add_option("--out", bench.out, "write CSV here, not stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Config cfg = g.resolve();
    if (gen_cmd->parsed()) return cmd_gen(gen, cfg, out);
    if (plan_cmd->parsed()) return cmd_plan(plan, cfg, out, err);
    if (embed_cmd->parsed()) return cmd_embed(embed, cfg, out, err);
    if (estimate_cmd->parsed()) return cmd_estimate(estimate, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, cfg, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PlanInfeasible& e) {
    err << "infeasible plan: " << e.what() << "\n";
    return kInfeasible;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace hcube::cli
