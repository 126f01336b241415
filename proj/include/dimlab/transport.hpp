#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "dimlab/matrix.hpp"

namespace dimlab {

enum class GroundMetric { l1, l2 };

std::string_view to_string(GroundMetric metric);
GroundMetric ground_metric_from_string(std::string_view name);

struct Assignment {
  std::vector<std::size_t> target;  // target[i] = column matched to row i
  double cost = 0.0;
};

/// Minimum-cost perfect matching on a square non-negative cost matrix
/// (shortest augmenting paths with dual potentials, O(m^3)).
Assignment solve_assignment(const Matrix& cost);

Matrix cost_matrix(const Matrix& a, const Matrix& b, GroundMetric metric);

/// W1 between the uniform empirical measures on the rows of a and b.
double w1_empirical(const Matrix& a, const Matrix& b, GroundMetric metric = GroundMetric::l1);

}  // namespace dimlab
