#include "dimlab/circular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dimlab/error.hpp"
#include "dimlab/special.hpp"

namespace dimlab {
namespace {

double bessel_ratio(double tau) {
  if (tau == 0.0) return 0.0;
  return bessel_i1e(tau) / bessel_i0e(tau);
}

}  // namespace

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(theta, two_pi);  // [-pi, pi]
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

double von_mises_concentration(double rbar) {
  if (!(rbar >= 0.0)) throw InputError("von_mises_concentration: mean resultant length must be >= 0");
  if (rbar <= 0.0) return 0.0;
  if (rbar >= bessel_ratio(kVonMisesTauCap)) return kVonMisesTauCap;

  // Best & Fisher starting point, then safeguarded Newton on A(tau) - rbar.
  double tau;
  if (rbar < 0.53)
    tau = 2.0 * rbar + rbar * rbar * rbar + 5.0 * std::pow(rbar, 5) / 6.0;
  else if (rbar < 0.85)
    tau = -0.4 + 1.39 * rbar + 0.43 / (1.0 - rbar);
  else
    tau = 1.0 / (rbar * rbar * rbar - 4.0 * rbar * rbar + 3.0 * rbar);

  double lo = 0.0;
  double hi = kVonMisesTauCap;
  tau = std::clamp(tau, lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double a = bessel_ratio(tau);
    const double f = a - rbar;
    if (f > 0.0)
      hi = tau;
    else
      lo = tau;
    const double deriv = tau > 0.0 ? 1.0 - a / tau - a * a : 0.5;
    double next = deriv > 0.0 ? tau - f / deriv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - tau) <= 1e-10 * std::max(1.0, tau)) return next;
    tau = next;
  }
  return tau;
}

VonMisesFit fit_von_mises(std::span<const double> angles) {
  if (angles.size() < 2) throw InputError("fit_von_mises: need at least 2 angles");
  double c = 0.0;
  double s = 0.0;
  for (double theta : angles) {
    c += std::cos(theta);
    s += std::sin(theta);
  }
  const double n = static_cast<double>(angles.size());
  c /= n;
  s /= n;
  const double rbar = std::min(1.0, std::hypot(c, s));
  VonMisesFit fit;
  fit.nu = wrap_angle(std::atan2(s, c));
  fit.tau = von_mises_concentration(rbar);
  return fit;
}

double von_mises_log_density(double theta, const VonMisesFit& fit) {
  // tau cos(theta - nu) - log(2 pi I0(tau)), written against the scaled Bessel
  // function so large concentrations do not overflow.
  return fit.tau * (std::cos(theta - fit.nu) - 1.0) - std::log(2.0 * std::numbers::pi * bessel_i0e(fit.tau));
}

}  // namespace dimlab
