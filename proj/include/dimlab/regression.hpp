#pragma once

#include <span>

namespace dimlab {

/// Least-squares slope of y = b x with no intercept: sum(xy) / sum(x^2).
double ls_through_origin(std::span<const double> xs, std::span<const double> ys);

}  // namespace dimlab
