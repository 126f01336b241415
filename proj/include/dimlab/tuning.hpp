#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dimlab/estimators.hpp"

namespace dimlab {

/// 1-based inclusive index range into a hyperparameter grid.
struct Window {
  std::size_t k1 = 1;
  std::size_t k2 = 1;
  friend bool operator==(const Window&, const Window&) = default;
};

/// Stable-window rule: width-3 sliding population standard deviation; the window with
/// the smallest one wins when the largest exceeds it by more than a factor 1.25,
/// otherwise the whole grid. Earlier windows win ties.
Window stable_window(std::span<const double> estimates);

/// Default grid for a method on n points: K in {5,10,20,30,40,50,100} capped at n/4,
/// K in {4,6,...,20} for DanCo, alpha in {1.2,1.6,2,4,6,8,10} for Wasserstein.
/// Empty for TwoNN (no hyperparameter).
std::vector<double> default_grid(Method method, std::size_t n);

struct TunedReport {
  EstimateReport report;          // d_hat is the tuned value
  std::vector<double> grid;       // empty for TwoNN
  std::vector<double> estimates;  // one per grid value
  Window window;
};

/// Evaluates `base.method` at every grid value (K or alpha) and averages the
/// estimates inside the stable window. An empty grid selects default_grid.
TunedReport tuned_estimate(const PointCloud& cloud, const EstimatorConfig& base, std::vector<double> grid = {});

/// Same, reusing neighbor sets computed at the largest grid K or beyond.
TunedReport tuned_estimate(const PointCloud& cloud, const EstimatorConfig& base, std::vector<double> grid,
                           const std::vector<NeighborSet>* nbrs);

}  // namespace dimlab
