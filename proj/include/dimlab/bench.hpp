#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dimlab/estimators.hpp"
#include "dimlab/geometry.hpp"
#include "dimlab/tuning.hpp"

namespace dimlab {

struct MethodSpec {
  EstimatorConfig config;
  bool tuned = false;
  std::vector<double> grid;  // tuning grid; empty selects default_grid
};

/// One (manifold, sample, estimator, factor value) combination of a plan.
struct PlanCell {
  ManifoldSpec manifold;
  SampleConfig sample;  // seed and stream_id are set per replicate
  MethodSpec method;
  double factor_value = 0.0;
};

struct ExperimentPlan {
  std::string factor;  // K, alpha, n, p, R, d, c, sigma, or "manifold" for suites
  std::vector<PlanCell> cells;
  int replicates = 100;
  std::uint64_t base_seed = 0;
  bool record_timing = true;  // false writes 0 seconds, making the CSV reproducible byte for byte
  std::string output_path;    // empty: no file
  /// Test hook replacing the estimator call: (cloud, cell, replicate) -> estimate.
  std::function<double(const PointCloud&, const PlanCell&, std::size_t)> estimator_override;
};

struct SummaryRow {
  std::string manifold;
  std::string method;
  std::string factor;
  double factor_value = 0.0;
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  int replicates = 0;  // successful replicates
  int failures = 0;
  double seconds = 0.0;
};

struct SweepResult {
  std::vector<SummaryRow> rows;                // one per cell, plan order
  std::vector<std::vector<double>> estimates;  // [cell][replicate], NaN on failure
  std::vector<std::string> failures;           // "cell i replicate r: message"
};

/// Worker count: DIMLAB_THREADS when set (>= 1), else the hardware concurrency.
int worker_count();

/// Runs every cell for every replicate. Replicate r samples with
/// (base_seed, stream_id = r) and seeds stochastic estimators with
/// derive_seed(base_seed, r), so results do not depend on scheduling.
SweepResult run_plan(const ExperimentPlan& plan, int threads = 0);

/// run_plan plus the CSV file at plan.output_path (when set).
std::vector<SummaryRow> run_sweep(const ExperimentPlan& plan, int threads = 0);

struct SuiteOptions {
  std::size_t n = 500;
  std::optional<BetaShape> beta;  // nullopt: uniform
  double noise_sigma = 0.0;
  std::vector<Method> methods;            // empty: all eight
  std::vector<std::string> manifold_ids;  // empty: whole catalog
  bool tuned = true;
  int replicates = 100;
  std::uint64_t base_seed = 0;
  bool record_timing = true;
  std::string output_path;
};

ExperimentPlan suite_plan(const SuiteOptions& opts);
std::vector<SummaryRow> run_suite(const SuiteOptions& opts, int threads = 0);

struct PresetOptions {
  std::optional<int> replicates;  // default: 100, or 25 for DanCo-only presets
  std::uint64_t base_seed = 0;
  std::vector<Method> methods;  // empty: the preset's own list
  std::vector<std::string> manifold_ids;
  bool record_timing = true;
  std::string output_path;
};

/// Plans reproducing the factor experiments and the comparative suites:
/// table-k, table-k-danco, table-alpha, table-n, table-p, table-curvature,
/// table-curvature-d, table-curvature-c, table-noise, suite-{500,2000}{u,b,n}.
ExperimentPlan preset_plan(std::string_view name, const PresetOptions& opts = {});
const std::vector<std::string>& preset_names();

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);

/// Spearman rank correlation (average ranks for ties); NaN when either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

std::string method_label(const MethodSpec& m);

}  // namespace dimlab
