#include "dimlab/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "dimlab/error.hpp"
#include "dimlab/rng.hpp"

namespace dimlab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string sample_key(const PlanCell& c) {
  std::ostringstream os;
  os << std::hexfloat;
  const auto& m = c.manifold;
  os << m.id << '|' << static_cast<int>(m.kind) << '|' << m.d << '|' << m.params.R << '|' << m.params.r << '|'
     << m.params.c << '|' << m.params.sigma_g << '|' << m.ambient_p << '|' << m.embed_seed << '|' << c.sample.n << '|'
     << c.sample.noise_sigma << '|';
  if (c.sample.beta) os << c.sample.beta->a << ',' << c.sample.beta->b;
  return os.str();
}

// Largest neighborhood any cell of a group will read.
std::size_t neighbors_needed(const PlanCell& c) {
  const auto& cfg = c.method.config;
  if (cfg.method == Method::wasserstein) return 0;
  if (cfg.method == Method::twonn) return 2;
  if (c.method.tuned) {
    const auto grid = c.method.grid.empty() ? default_grid(cfg.method, c.sample.n) : c.method.grid;
    return grid.empty() ? 0 : static_cast<std::size_t>(grid.back());
  }
  return static_cast<std::size_t>(std::max(cfg.K, 0));
}

std::string format_g(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

MethodSpec fixed(Method m, int K, double alpha = 5.0) {
  MethodSpec s;
  s.config.method = m;
  s.config.K = K;
  s.config.alpha = alpha;
  return s;
}

// Fixed-hyperparameter methods of the factor experiments: K = 100 (10 for DanCo), alpha = 5.
std::vector<MethodSpec> factor_methods(const std::vector<Method>& wanted) {
  std::vector<MethodSpec> out;
  for (Method m : kAllMethods) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), m) == wanted.end()) continue;
    out.push_back(fixed(m, m == Method::danco ? 10 : 100));
  }
  return out;
}

bool wanted_method(const std::vector<Method>& wanted, Method m) {
  return wanted.empty() || std::find(wanted.begin(), wanted.end(), m) != wanted.end();
}

SampleConfig uniform_sample(std::size_t n, double sigma = 0.0) {
  SampleConfig s;
  s.n = n;
  s.noise_sigma = sigma;
  return s;
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("DIMLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string method_label(const MethodSpec& m) {
  std::string s(to_string(m.config.method));
  if (m.tuned && m.config.method != Method::twonn) s += "_tuned";
  return s;
}

SweepResult run_plan(const ExperimentPlan& plan, int threads) {
  if (plan.replicates < 1) throw InputError("replicates must be at least 1");
  const std::size_t ncell = plan.cells.size();
  const auto reps = static_cast<std::size_t>(plan.replicates);

  std::vector<std::vector<std::size_t>> groups;
  {
    std::map<std::string, std::size_t> by_key;
    for (std::size_t i = 0; i < ncell; ++i) {
      const auto key = sample_key(plan.cells[i]);
      auto [it, fresh] = by_key.emplace(key, groups.size());
      if (fresh) groups.emplace_back();
      groups[it->second].push_back(i);
    }
  }

  SweepResult res;
  res.estimates.assign(ncell, std::vector<double>(reps, kNaN));
  std::vector<std::vector<double>> secs(ncell, std::vector<double>(reps, 0.0));
  std::vector<std::vector<std::string>> errors(ncell, std::vector<std::string>(reps));

  const std::size_t ntask = groups.size() * reps;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= ntask) return;
      const auto& group = groups[t / reps];
      const std::size_t r = t % reps;
      const PlanCell& head = plan.cells[group.front()];
      std::optional<PointCloud> cloud;
      std::vector<NeighborSet> nbrs;
      try {
        SampleConfig sc = head.sample;
        sc.seed = plan.base_seed;
        sc.stream_id = r;
        cloud.emplace(sample_manifold(head.manifold, sc));
        std::size_t kmax = 0;
        for (std::size_t c : group) kmax = std::max(kmax, neighbors_needed(plan.cells[c]));
        kmax = std::min(kmax, cloud->n() - 1);
        if (kmax > 0 && !plan.estimator_override) nbrs = knn_all(*cloud, kmax);
      } catch (const std::exception& e) {
        for (std::size_t c : group) errors[c][r] = std::string("sampling: ") + e.what();
        continue;
      }
      for (std::size_t c : group) {
        const PlanCell& cell = plan.cells[c];
        const auto t0 = std::chrono::steady_clock::now();
        try {
          double d;
          if (plan.estimator_override) {
            d = plan.estimator_override(*cloud, cell, r);
          } else {
            EstimatorConfig cfg = cell.method.config;
            cfg.seed = derive_seed(plan.base_seed, r);
            const std::size_t need = neighbors_needed(cell);
            const bool share = need > 0 && !nbrs.empty() && nbrs.front().indices.size() >= need;
            d = cell.method.tuned ? tuned_estimate(*cloud, cfg, cell.method.grid, share ? &nbrs : nullptr).report.d_hat
                                  : estimate(*cloud, cfg, share ? &nbrs : nullptr).d_hat;
          }
          res.estimates[c][r] = d;
        } catch (const std::exception& e) {
          errors[c][r] = e.what();
        }
        secs[c][r] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(threads > 0 ? threads : worker_count(), static_cast<int>(ntask)));
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  std::size_t total_ok = 0;
  for (std::size_t c = 0; c < ncell; ++c) {
    const PlanCell& cell = plan.cells[c];
    SummaryRow row;
    row.manifold = cell.manifold.id;
    row.method = method_label(cell.method);
    row.factor = plan.factor;
    row.factor_value = cell.factor_value;
    row.n = cell.sample.n;
    double s = 0.0, t = 0.0;
    int ok = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      t += secs[c][r];
      if (!errors[c][r].empty() || !std::isfinite(res.estimates[c][r])) {
        if (errors[c][r].empty()) errors[c][r] = "non-finite estimate";
        res.estimates[c][r] = kNaN;
        res.failures.push_back("cell " + std::to_string(c) + " replicate " + std::to_string(r) + ": " + errors[c][r]);
        continue;
      }
      s += res.estimates[c][r];
      ++ok;
    }
    row.replicates = ok;
    row.failures = plan.replicates - ok;
    row.mean = ok > 0 ? s / ok : kNaN;
    double ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r)
      if (std::isfinite(res.estimates[c][r])) ss += (res.estimates[c][r] - row.mean) * (res.estimates[c][r] - row.mean);
    row.sd = ok > 1 ? std::sqrt(ss / (ok - 1)) : (ok == 1 ? 0.0 : kNaN);
    row.seconds = plan.record_timing ? t : 0.0;
    total_ok += static_cast<std::size_t>(ok);
    res.rows.push_back(std::move(row));
  }
  if (ncell > 0 && total_ok == 0)
    throw InfeasibleError("every replicate failed; first error: " + (res.failures.empty() ? std::string("?") : res.failures.front()));
  return res;
}

std::vector<SummaryRow> run_sweep(const ExperimentPlan& plan, int threads) {
  SweepResult res = run_plan(plan, threads);
  if (!plan.output_path.empty()) write_summary_csv(plan.output_path, res.rows);
  return std::move(res.rows);
}

ExperimentPlan suite_plan(const SuiteOptions& opts) {
  ExperimentPlan plan;
  plan.factor = "manifold";
  plan.replicates = opts.replicates;
  plan.base_seed = opts.base_seed;
  plan.record_timing = opts.record_timing;
  plan.output_path = opts.output_path;
  std::vector<Method> methods = opts.methods;
  if (methods.empty()) methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
  for (const auto& spec : manifold_catalog()) {
    if (!opts.manifold_ids.empty() &&
        std::find(opts.manifold_ids.begin(), opts.manifold_ids.end(), spec.id) == opts.manifold_ids.end())
      continue;
    for (Method m : methods) {
      PlanCell cell;
      cell.manifold = spec;
      cell.sample = uniform_sample(opts.n, opts.noise_sigma);
      cell.sample.beta = opts.beta;
      cell.method = fixed(m, m == Method::danco ? 10 : 20);
      cell.method.tuned = opts.tuned;
      cell.factor_value = spec.d;
      plan.cells.push_back(std::move(cell));
    }
  }
  if (plan.cells.empty()) throw InputError("suite selects no manifold");
  return plan;
}

std::vector<SummaryRow> run_suite(const SuiteOptions& opts, int threads) { return run_sweep(suite_plan(opts), threads); }

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{
      "table-k",           "table-k-danco",     "table-alpha", "table-n",     "table-p",     "table-curvature",
      "table-curvature-d", "table-curvature-c", "table-noise", "suite-500u",  "suite-2000u", "suite-500b",
      "suite-2000b",       "suite-500n",        "suite-2000n"};
  return names;
}

ExperimentPlan preset_plan(std::string_view name, const PresetOptions& opts) {
  if (name.starts_with("suite-")) {
    const std::string_view rest = name.substr(6);
    if (rest.empty()) throw InputError("unknown preset: " + std::string(name));
    const char kind = rest.back();
    const std::string_view size = rest.substr(0, rest.size() - 1);
    if ((size != "500" && size != "2000") || (kind != 'u' && kind != 'b' && kind != 'n'))
      throw InputError("unknown preset: " + std::string(name));
    SuiteOptions s;
    s.n = size == "500" ? 500 : 2000;
    if (kind == 'b') s.beta = BetaShape{};
    if (kind == 'n') s.noise_sigma = 0.05;
    s.methods = opts.methods;
    s.manifold_ids = opts.manifold_ids;
    s.replicates = opts.replicates.value_or(100);
    s.base_seed = opts.base_seed;
    s.record_timing = opts.record_timing;
    s.output_path = opts.output_path;
    return suite_plan(s);
  }

  ExperimentPlan plan;
  plan.base_seed = opts.base_seed;
  plan.record_timing = opts.record_timing;
  plan.output_path = opts.output_path;
  plan.replicates = opts.replicates.value_or(100);
  const ManifoldSpec sphere5 = make_sphere(5, 10);
  auto add = [&](const ManifoldSpec& m, const SampleConfig& s, const MethodSpec& ms, double v) {
    plan.cells.push_back(PlanCell{m, s, ms, v});
  };

  if (name == "table-k") {
    plan.factor = "K";
    const Method ms[] = {Method::local_pca, Method::mada, Method::mle, Method::tle, Method::ca_pca};
    for (int K : {5, 10, 20, 30, 40, 50, 100, 200, 500, 750})
      for (Method m : ms)
        if (wanted_method(opts.methods, m)) add(sphere5, uniform_sample(1000), fixed(m, K), K);
  } else if (name == "table-k-danco") {
    plan.factor = "K";
    plan.replicates = opts.replicates.value_or(25);
    for (int K = 2; K <= 20; K += 2) add(sphere5, uniform_sample(1000), fixed(Method::danco, K), K);
  } else if (name == "table-alpha") {
    plan.factor = "alpha";
    for (double a : {1.01, 1.2, 1.4, 1.6, 1.8, 2.0, 4.0, 6.0, 8.0, 10.0})
      add(sphere5, uniform_sample(1000), fixed(Method::wasserstein, 0, a), a);
  } else if (name == "table-n") {
    plan.factor = "n";
    for (int n : {200, 400, 600, 800, 1000, 2000, 3000, 4000, 5000, 10000})
      for (const auto& ms : factor_methods(opts.methods)) add(sphere5, uniform_sample(n), ms, n);
  } else if (name == "table-p") {
    plan.factor = "p";
    for (int p : {6, 10, 15, 20, 25, 30, 35, 40, 45, 50})
      for (const auto& ms : factor_methods(opts.methods)) add(make_sphere(5, p), uniform_sample(1000), ms, p);
  } else if (name == "table-curvature") {
    plan.factor = "R";
    for (double R : {0.001, 0.01, 0.05, 0.1, 1.0, 5.0, 10.0, 20.0, 50.0, 100.0})
      for (const auto& ms : factor_methods(opts.methods)) add(make_sphere(5, 10, R), uniform_sample(1000), ms, R);
  } else if (name == "table-curvature-d") {
    plan.factor = "d";
    for (int d = 2; d <= 20; d += 2)
      for (const auto& ms : factor_methods(opts.methods))
        add(make_sphere(d, static_cast<std::size_t>(2 * d)), uniform_sample(1000), ms, d);
  } else if (name == "table-curvature-c") {
    plan.factor = "c";
    for (double c : {0.0001, 0.001, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 4.0})
      for (const auto& ms : factor_methods(opts.methods)) add(make_deformed_sphere(3, c), uniform_sample(1000), ms, c);
  } else if (name == "table-noise") {
    plan.factor = "sigma";
    for (int i = 0; i <= 9; ++i) {
      const double sigma = 0.01 * i;
      for (const auto& ms : factor_methods(opts.methods)) add(sphere5, uniform_sample(1000, sigma), ms, sigma);
    }
  } else {
    throw InputError("unknown preset: " + std::string(name));
  }
  if (plan.cells.empty()) throw InputError("preset selects no estimator");
  return plan;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "manifold,method,factor,factor_value,n,mean,sd,replicates,failures,seconds\n";
  for (const auto& r : rows) {
    char secs[64];
    std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
    out << r.manifold << ',' << r.method << ',' << r.factor << ',' << format_g(r.factor_value) << ',' << r.n << ','
        << format_g(r.mean) << ',' << format_g(r.sd) << ',' << r.replicates << ',' << r.failures << ',' << secs << '\n';
  }
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  write_summary_csv(f, rows);
  f.flush();
  if (!f) throw IoError("failed writing " + path);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("spearman: need two equal-length sequences of size >= 2");
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return kNaN;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace dimlab
