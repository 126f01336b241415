#include "dimlab/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dimlab/error.hpp"

namespace dimlab {

std::vector<NeighborSet> knn_all(const Matrix& points, std::size_t K) {
  const std::size_t n = points.rows();
  if (K < 1 || K + 1 > n) throw InputError("knn_all: K must lie in [1, n-1]");
  std::vector<NeighborSet> out(n);
  std::vector<std::pair<double, std::size_t>> cand(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = points.row(i);
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      cand[c++] = {squared_distance(xi, points.row(j)), j};
    }
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(K), cand.end());
    NeighborSet& ns = out[i];
    ns.center_index = i;
    ns.indices.resize(K);
    ns.distances.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
      ns.indices[k] = cand[k].second;
      ns.distances[k] = std::sqrt(cand[k].first);
    }
  }
  return out;
}

std::vector<NeighborSet> knn_all(const PointCloud& cloud, std::size_t K) { return knn_all(cloud.points(), K); }

std::vector<NeighborSet> truncate(const std::vector<NeighborSet>& sets, std::size_t K) {
  std::vector<NeighborSet> out;
  out.reserve(sets.size());
  for (const auto& s : sets) {
    if (s.indices.size() < K) throw InputError("truncate: neighbor sets shorter than K");
    NeighborSet t;
    t.center_index = s.center_index;
    t.indices.assign(s.indices.begin(), s.indices.begin() + static_cast<std::ptrdiff_t>(K));
    t.distances.assign(s.distances.begin(), s.distances.begin() + static_cast<std::ptrdiff_t>(K));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace dimlab
