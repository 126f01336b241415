#include "dimlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dimlab/bench.hpp"
#include "dimlab/error.hpp"
#include "dimlab/estimators.hpp"
#include "dimlab/geometry.hpp"
#include "dimlab/io.hpp"
#include "dimlab/tuning.hpp"

namespace dimlab {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("bad " + what + ": '" + s + "'");
  }
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_double(item, what));
  return out;
}

// "uniform" or "beta:a,b"
std::optional<BetaShape> parse_dist(const std::string& s) {
  if (s == "uniform") return std::nullopt;
  if (s == "beta") return BetaShape{};
  if (s.rfind("beta:", 0) == 0) {
    const auto v = parse_list(s.substr(5), "beta shape");
    if (v.size() != 2) throw InputError("--dist beta:a,b needs two shape values");
    return BetaShape{v[0], v[1]};
  }
  throw InputError("unknown distribution '" + s + "' (uniform or beta:a,b)");
}

std::vector<Method> parse_methods(const std::string& s) {
  std::vector<Method> out;
  for (const auto& name : split(s, ',')) {
    if (name == "all") return {std::begin(kAllMethods), std::end(kAllMethods)};
    out.push_back(method_from_string(name));
  }
  if (out.empty()) throw InputError("no method given");
  return out;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Common {
  std::uint64_t seed = 0;
};

struct SampleArgs {
  std::string manifold;
  std::size_t n = 1000;
  std::string dist = "uniform";
  double sigma = 0.0;
  std::optional<std::size_t> ambient;
  std::string out;
};

struct EstimateArgs {
  std::string input;
  char delimiter = ',';
  bool header = false;
  std::string method = "mle";
  bool tune = false;
  std::optional<int> K;
  std::optional<double> alpha;
  std::string grid;
  std::string metric = "l2";
  int splits = 10;
  bool mle_k_minus_one = false;
  bool with_center = false;
  bool with_danco = false;
  bool csv = false;
};

struct PlanArgs {
  std::string preset;
  std::optional<int> replicates;
  std::string estimators;
  std::string manifolds;
  std::string out;
  bool no_timing = false;
  int threads = 0;
  // custom sweeps
  std::string factor;
  std::string values;
  std::string manifold = "M11";
  std::size_t n = 1000;
  std::string dist = "uniform";
  double sigma = 0.0;
  int K = 20;
  double alpha = 5.0;
  bool tuned = false;
  bool fixed = false;
};

int cmd_sample(const SampleArgs& a, const Common& c, std::ostream& out) {
  ManifoldSpec spec = catalog_entry(a.manifold);
  if (a.ambient) spec.ambient_p = *a.ambient;
  SampleConfig cfg;
  cfg.n = a.n;
  cfg.beta = parse_dist(a.dist);
  cfg.noise_sigma = a.sigma;
  cfg.seed = c.seed;
  const PointCloud cloud = sample_manifold(spec, cfg);
  if (a.out.empty() || a.out == "-") {
    write_points(out, cloud.points());
  } else {
    write_points(a.out, cloud.points());
  }
  return kExitOk;
}

int cmd_estimate(const EstimateArgs& a, const Common& c, std::ostream& out) {
  const PointCloud cloud(read_points(DatasetFile{a.input, a.delimiter, a.header}));
  std::vector<Method> methods = parse_methods(a.method);
  const bool all = a.method == "all";
  if (all && cloud.p() > 100 && !a.with_danco)
    methods.erase(std::remove(methods.begin(), methods.end(), Method::danco), methods.end());
  const std::vector<double> grid = a.grid.empty() ? std::vector<double>{} : parse_list(a.grid, "grid");
  if (!grid.empty() && methods.size() > 1) throw InputError("--grid applies to a single method");

  if (a.csv) out << "method,d_hat,tuned,window_lo,window_hi\n";
  for (Method m : methods) {
    EstimatorConfig cfg;
    cfg.method = m;
    if (a.K) cfg.K = *a.K;
    if (a.alpha) cfg.alpha = *a.alpha;
    cfg.ground_metric = ground_metric_from_string(a.metric);
    cfg.splits = a.splits;
    cfg.mle_k_minus_one = a.mle_k_minus_one;
    if (a.with_center) cfg.local_cov = LocalCovariance::with_center;
    cfg.seed = c.seed;
    double d_hat = 0.0;
    std::optional<std::pair<double, double>> window;
    if (a.tune) {
      const TunedReport t = tuned_estimate(cloud, cfg, grid);
      d_hat = t.report.d_hat;
      if (!t.grid.empty()) window.emplace(t.grid[t.window.k1 - 1], t.grid[t.window.k2 - 1]);
    } else {
      validate(cfg, cloud.n(), cloud.p());
      d_hat = estimate(cloud, cfg).d_hat;
    }
    const std::string name(to_string(m));
    if (a.csv) {
      out << name << ',' << g17(d_hat) << ',' << (a.tune ? 1 : 0) << ',' << (window ? g6(window->first) : "") << ','
          << (window ? g6(window->second) : "") << '\n';
    } else {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%-12s %10.4f", name.c_str(), d_hat);
      out << buf;
      if (window)
        out << "  window " << (m == Method::wasserstein ? "alpha" : "K") << " = [" << g6(window->first) << ", "
            << g6(window->second) << "]";
      out << '\n';
    }
  }
  return kExitOk;
}

ExperimentPlan custom_plan(const PlanArgs& a, const Common& c) {
  if (a.factor.empty()) throw InputError("sweep needs --preset or --factor with --values");
  const auto values = parse_list(a.values, "factor value");
  if (values.empty()) throw InputError("--values is empty");
  const std::vector<Method> methods = parse_methods(a.estimators.empty() ? "mle" : a.estimators);
  ExperimentPlan plan;
  plan.factor = a.factor;
  plan.base_seed = c.seed;
  plan.replicates = a.replicates.value_or(100);
  const ManifoldSpec base = catalog_entry(a.manifold);
  for (double v : values) {
    for (Method m : methods) {
      PlanCell cell;
      cell.manifold = base;
      cell.sample.n = a.n;
      cell.sample.beta = parse_dist(a.dist);
      cell.sample.noise_sigma = a.sigma;
      cell.method.config.method = m;
      cell.method.config.K = a.K;
      cell.method.config.alpha = a.alpha;
      cell.method.tuned = a.tuned;
      cell.factor_value = v;
      if (a.factor == "K") {
        cell.method.config.K = static_cast<int>(v);
      } else if (a.factor == "alpha") {
        cell.method.config.alpha = v;
      } else if (a.factor == "n") {
        cell.sample.n = static_cast<std::size_t>(v);
      } else if (a.factor == "p") {
        cell.manifold.ambient_p = static_cast<std::size_t>(v);
      } else if (a.factor == "R") {
        cell.manifold.params.R = v;
      } else if (a.factor == "c") {
        cell.manifold.params.c = v;
      } else if (a.factor == "sigma") {
        cell.sample.noise_sigma = v;
      } else {
        throw InputError("unknown factor '" + a.factor + "' (K, alpha, n, p, R, c, sigma)");
      }
      plan.cells.push_back(std::move(cell));
    }
  }
  return plan;
}

int emit_plan(ExperimentPlan plan, const PlanArgs& a, std::ostream& out, std::ostream& err) {
  plan.record_timing = !a.no_timing;
  plan.output_path.clear();
  const SweepResult res = run_plan(plan, a.threads);
  for (const auto& f : res.failures) err << "warning: " << f << '\n';
  if (a.out.empty() || a.out == "-") {
    write_summary_csv(out, res.rows);
  } else {
    write_summary_csv(a.out, res.rows);
  }
  return kExitOk;
}

PresetOptions preset_options(const PlanArgs& a, const Common& c) {
  PresetOptions o;
  o.replicates = a.replicates;
  o.base_seed = c.seed;
  if (!a.estimators.empty()) o.methods = parse_methods(a.estimators);
  o.manifold_ids = split(a.manifolds, ',');
  return o;
}

void add_plan_flags(CLI::App* cmd, PlanArgs& a) {
  cmd->add_option("--replicates", a.replicates, "replicates per cell")->check(CLI::PositiveNumber);
  cmd->add_option("--estimators,--methods", a.estimators, "comma-separated methods, or all");
  cmd->add_option("--manifolds", a.manifolds, "comma-separated catalog ids (suites)");
  cmd->add_option("--out", a.out, "output CSV (default stdout)");
  cmd->add_flag("--no-timing", a.no_timing, "write 0 in the seconds column");
  cmd->add_option("--threads", a.threads, "worker threads (default DIMLAB_THREADS or all cores)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intrinsic dimension estimation and Monte Carlo benchmarks", "dimlab"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "base seed (default 0)");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "draw a point cloud from a catalog manifold");
  sample->add_option("--manifold", sa.manifold, "catalog id (M11..M43, M5..M10)")->required();
  sample->add_option("--n", sa.n, "number of points");
  sample->add_option("--dist", sa.dist, "uniform or beta:a,b");
  sample->add_option("--sigma", sa.sigma, "Gaussian noise standard deviation");
  sample->add_option("--p", sa.ambient, "override the ambient dimension");
  sample->add_option("--out", sa.out, "output CSV (default stdout)");
  sample->add_option("--seed", common.seed, "seed");

  EstimateArgs ea;
  auto* est = app.add_subcommand("estimate", "estimate the dimension of a CSV point cloud");
  est->add_option("--input", ea.input, "CSV file, one point per row")->required();
  est->add_option("--delimiter", ea.delimiter, "field separator");
  est->add_flag("--header", ea.header, "skip the first non-blank line");
  est->add_option("--method", ea.method, "method name, comma list, or all");
  est->add_flag("--tune", ea.tune, "select K or alpha with the stability rule");
  est->add_option("--K", ea.K, "neighborhood size");
  est->add_option("--alpha", ea.alpha, "Wasserstein sample-size ratio");
  est->add_option("--grid", ea.grid, "tuning grid, comma-separated");
  est->add_option("--metric", ea.metric, "Wasserstein ground metric: l1 or l2");
  est->add_option("--splits", ea.splits, "Wasserstein random splits");
  est->add_flag("--mle-k-minus-one", ea.mle_k_minus_one, "MLE normalizer K-1");
  est->add_flag("--cov-with-center", ea.with_center, "PCA methods: include the center point, divisor K");
  est->add_flag("--with-danco", ea.with_danco, "include DanCo in --method all when p > 100");
  est->add_flag("--csv", ea.csv, "machine-readable output");
  est->add_option("--seed", common.seed, "seed");

  PlanArgs pa;
  auto* sweep = app.add_subcommand("sweep", "run a factor sweep");
  sweep->add_option("--preset", pa.preset, "named design, e.g. table-n, table-p, suite-500u");
  add_plan_flags(sweep, pa);
  sweep->add_option("--factor", pa.factor, "swept variable: K, alpha, n, p, R, c, sigma");
  sweep->add_option("--values", pa.values, "comma-separated factor values");
  sweep->add_option("--manifold", pa.manifold, "catalog id");
  sweep->add_option("--n", pa.n, "sample size");
  sweep->add_option("--dist", pa.dist, "uniform or beta:a,b");
  sweep->add_option("--sigma", pa.sigma, "noise level");
  sweep->add_option("--K", pa.K, "neighborhood size");
  sweep->add_option("--alpha", pa.alpha, "Wasserstein ratio");
  sweep->add_flag("--tuned", pa.tuned, "tune each replicate");
  sweep->add_option("--seed", common.seed, "base seed");

  PlanArgs su;
  auto* suite = app.add_subcommand("suite", "run the catalog comparison");
  suite->add_option("--preset", su.preset, "suite-{500,2000}{u,b,n}");
  add_plan_flags(suite, su);
  suite->add_option("--n", su.n, "sample size")->default_val(500);
  suite->add_option("--dist", su.dist, "uniform or beta:a,b");
  suite->add_option("--sigma", su.sigma, "noise level");
  suite->add_flag("--fixed", su.fixed, "fixed hyperparameters instead of tuning");
  suite->add_option("--seed", common.seed, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*sample) return cmd_sample(sa, common, out);
    if (*est) return cmd_estimate(ea, common, out);
    if (*sweep) {
      if (!pa.preset.empty()) return emit_plan(preset_plan(pa.preset, preset_options(pa, common)), pa, out, err);
      return emit_plan(custom_plan(pa, common), pa, out, err);
    }
    if (*suite) {
      if (!su.preset.empty()) {
        if (su.preset.rfind("suite-", 0) != 0) throw InputError("suite presets are suite-{500,2000}{u,b,n}");
        return emit_plan(preset_plan(su.preset, preset_options(su, common)), su, out, err);
      }
      SuiteOptions o;
      o.n = su.n;
      o.beta = parse_dist(su.dist);
      o.noise_sigma = su.sigma;
      if (!su.estimators.empty()) o.methods = parse_methods(su.estimators);
      o.manifold_ids = split(su.manifolds, ',');
      o.tuned = !su.fixed;
      o.replicates = su.replicates.value_or(100);
      o.base_seed = common.seed;
      return emit_plan(suite_plan(o), su, out, err);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  }
  return kExitInput;
}

}  // namespace dimlab
