#pragma once

#include <span>

namespace dimlab {

/// Von Mises parameters: mean direction nu in (-pi, pi], concentration tau >= 0.
struct VonMisesFit {
  double nu = 0.0;
  double tau = 0.0;
};

inline constexpr double kVonMisesTauCap = 1e4;

/// Maximum-likelihood von Mises fit: nu is the circular mean, tau solves
/// I1(tau)/I0(tau) = mean resultant length (Newton, tol 1e-10, capped at 1e4).
VonMisesFit fit_von_mises(std::span<const double> angles);

/// Solves I1(tau)/I0(tau) = rbar for tau in [0, kVonMisesTauCap].
double von_mises_concentration(double rbar);

/// log of exp(tau cos(theta - nu)) / (2 pi I0(tau)).
double von_mises_log_density(double theta, const VonMisesFit& fit);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double theta);

}  // namespace dimlab
