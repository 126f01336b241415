#include "dimlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dimlab/error.hpp"

namespace dimlab {

std::string_view to_string(GroundMetric metric) { return metric == GroundMetric::l1 ? "l1" : "l2"; }

GroundMetric ground_metric_from_string(std::string_view name) {
  if (name == "l1") return GroundMetric::l1;
  if (name == "l2") return GroundMetric::l2;
  throw InputError("unknown ground metric: " + std::string(name));
}

Assignment solve_assignment(const Matrix& cost) {
  const std::size_t m = cost.rows();
  if (m == 0 || cost.cols() != m) throw InputError("solve_assignment: cost matrix must be square and non-empty");
  for (double c : cost.data())
    if (!std::isfinite(c) || c < 0.0) throw InputError("solve_assignment: costs must be finite and non-negative");

  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual source.
  std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (std::size_t i = 1; i <= m; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      const auto row = cost.row(i0 - 1);
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = row[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment a;
  a.target.assign(m, 0);
  for (std::size_t j = 1; j <= m; ++j) a.target[match[j] - 1] = j - 1;
  // Sum the chosen entries directly rather than trusting the potentials.
  for (std::size_t i = 0; i < m; ++i) a.cost += cost(i, a.target[i]);
  return a;
}

Matrix cost_matrix(const Matrix& a, const Matrix& b, GroundMetric metric) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("w1_empirical: samples must have equal shape");
  if (a.rows() == 0) throw InputError("w1_empirical: empty samples");
  for (double x : a.data())
    if (!std::isfinite(x)) throw InputError("w1_empirical: non-finite coordinate");
  for (double x : b.data())
    if (!std::isfinite(x)) throw InputError("w1_empirical: non-finite coordinate");
  const std::size_t m = a.rows();
  Matrix c(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto x = a.row(i);
      const auto y = b.row(j);
      double s = 0.0;
      if (metric == GroundMetric::l1) {
        for (std::size_t k = 0; k < x.size(); ++k) s += std::abs(x[k] - y[k]);
      } else {
        for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
        s = std::sqrt(s);
      }
      c(i, j) = s;
    }
  return c;
}

double w1_empirical(const Matrix& a, const Matrix& b, GroundMetric metric) {
  const Matrix c = cost_matrix(a, b, metric);
  return solve_assignment(c).cost / static_cast<double>(a.rows());
}

}  // namespace dimlab
