#pragma once

#include <cstddef>
#include <vector>

#include "dimlab/geometry.hpp"

namespace dimlab {

/// Ordered neighbors of one point: nearest first, ties by ascending index.
struct NeighborSet {
  std::size_t center_index = 0;
  std::vector<std::size_t> indices;
  std::vector<double> distances;
};

/// Exact brute-force K nearest neighbors of every point (center excluded).
std::vector<NeighborSet> knn_all(const PointCloud& cloud, std::size_t K);

/// Same, over a raw row-major matrix (used by simulated clouds inside estimators).
std::vector<NeighborSet> knn_all(const Matrix& points, std::size_t K);

/// Keeps only the first K entries of every set.
std::vector<NeighborSet> truncate(const std::vector<NeighborSet>& sets, std::size_t K);

}  // namespace dimlab
