#pragma once

#include <functional>

namespace dimlab {

struct QuadratureOptions {
  double abs_tol = 1e-9;
  double endpoint_offset = 1e-12;
  long max_subdivisions = 1'000'000;
};

/// Adaptive Simpson integral of f over (a, b). Endpoints are approached with a small
/// offset so integrable endpoint singularities are never evaluated.
double quad_1d(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opts = {});

}  // namespace dimlab
