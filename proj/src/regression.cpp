#include "dimlab/regression.hpp"

#include <cmath>

#include "dimlab/error.hpp"

namespace dimlab {

double ls_through_origin(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || xs.size() != ys.size()) throw InputError("ls_through_origin: need equal, non-zero lengths");
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += xs[i] * ys[i];
    sxx += xs[i] * xs[i];
  }
  if (!(sxx > 0.0)) throw InputError("ls_through_origin: predictors are all zero");
  return sxy / sxx;
}

}  // namespace dimlab
