#include "dimlab/special.hpp"

#include <cmath>
#include <numbers>

#include "dimlab/error.hpp"

namespace dimlab {
namespace {

constexpr double kSeriesLimit = 15.0;

void check_argument(double x, const char* who) {
  if (!std::isfinite(x) || x < 0.0) throw InputError(std::string(who) + ": argument must be finite and >= 0");
}

// sum_k (x/2)^{2k+nu} / (k! (k+nu)!)
double power_series(double x, int nu) {
  const double q = 0.25 * x * x;
  double term = nu == 0 ? 1.0 : 0.5 * x;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + nu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// sqrt(2 pi x) e^{-x} I_nu(x) ~ sum_k (-1)^k prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! (8x)^k)
double asymptotic_scaled(double x, int nu) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;  // series started diverging
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double bessel_i0(double x) {
  check_argument(x, "bessel_i0");
  if (x < kSeriesLimit) return power_series(x, 0);
  return asymptotic_scaled(x, 0) * std::exp(x);
}

double bessel_i1(double x) {
  check_argument(x, "bessel_i1");
  if (x < kSeriesLimit) return power_series(x, 1);
  return asymptotic_scaled(x, 1) * std::exp(x);
}

double bessel_i0e(double x) {
  check_argument(x, "bessel_i0e");
  if (x < kSeriesLimit) return power_series(x, 0) * std::exp(-x);
  return asymptotic_scaled(x, 0);
}

double bessel_i1e(double x) {
  check_argument(x, "bessel_i1e");
  if (x < kSeriesLimit) return power_series(x, 1) * std::exp(-x);
  return asymptotic_scaled(x, 1);
}

}  // namespace dimlab
