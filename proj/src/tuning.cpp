#include "dimlab/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dimlab/error.hpp"

namespace dimlab {

Window stable_window(std::span<const double> d) {
  const std::size_t kmax = d.size();
  if (kmax < 3) throw InputError("stable_window: need at least 3 estimates");
  double s_min = std::numeric_limits<double>::infinity();
  double s_max = 0.0;
  std::size_t k_star = 0;
  for (std::size_t k = 1; k + 2 <= kmax; ++k) {
    const double a = d[k - 1], b = d[k], c = d[k + 1];
    const double mean = (a + b + c) / 3.0;
    const double s = std::sqrt(((a - mean) * (a - mean) + (b - mean) * (b - mean) + (c - mean) * (c - mean)) / 3.0);
    if (s < s_min) {
      s_min = s;
      k_star = k;
    }
    if (s > s_max) s_max = s;
  }
  if (s_max > 1.25 * s_min) return {k_star, k_star + 2};
  return {1, kmax};
}

std::vector<double> default_grid(Method method, std::size_t n) {
  switch (method) {
    case Method::twonn:
      return {};
    case Method::wasserstein:
      return {1.2, 1.6, 2.0, 4.0, 6.0, 8.0, 10.0};
    case Method::danco: {
      std::vector<double> g;
      for (int k = 4; k <= 20; k += 2)
        if (static_cast<std::size_t>(k) + 1 <= n) g.push_back(k);
      return g;
    }
    default: {
      std::vector<double> g;
      for (int k : {5, 10, 20, 30, 40, 50, 100})
        if (4 * static_cast<std::size_t>(k) <= n) g.push_back(k);
      return g;
    }
  }
}

TunedReport tuned_estimate(const PointCloud& cloud, const EstimatorConfig& base, std::vector<double> grid) {
  return tuned_estimate(cloud, base, std::move(grid), nullptr);
}

TunedReport tuned_estimate(const PointCloud& cloud, const EstimatorConfig& base, std::vector<double> grid,
                           const std::vector<NeighborSet>* nbrs) {
  TunedReport out;
  if (base.method == Method::twonn) {
    out.report = estimate(cloud, base, nbrs);
    return out;
  }
  if (grid.empty()) grid = default_grid(base.method, cloud.n());
  if (grid.size() < 3) throw InfeasibleError("tuning grid has fewer than 3 values for n = " + std::to_string(cloud.n()));
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw InputError("tuning grid must be strictly increasing");

  const bool by_alpha = base.method == Method::wasserstein;
  std::vector<NeighborSet> own;
  if (!by_alpha && !nbrs) {
    const auto kmax = static_cast<std::size_t>(grid.back());
    if (kmax + 1 > cloud.n()) throw InfeasibleError("tuning grid K exceeds n - 1");
    own = knn_all(cloud, kmax);
    nbrs = &own;
  }
  out.grid = grid;
  for (double g : grid) {
    EstimatorConfig cfg = base;
    if (by_alpha) {
      cfg.alpha = g;
    } else {
      if (g != std::floor(g)) throw InputError("K grid values must be integers");
      cfg.K = static_cast<int>(g);
    }
    out.estimates.push_back(estimate(cloud, cfg, by_alpha ? nullptr : nbrs).d_hat);
  }
  out.window = stable_window(out.estimates);
  double s = 0.0;
  for (std::size_t k = out.window.k1; k <= out.window.k2; ++k) s += out.estimates[k - 1];
  out.report.method = base.method;
  out.report.config_echo = base;
  out.report.d_hat = s / static_cast<double>(out.window.k2 - out.window.k1 + 1);
  return out;
}

}  // namespace dimlab
