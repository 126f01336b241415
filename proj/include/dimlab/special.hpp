#pragma once

namespace dimlab {

/// Modified Bessel function of the first kind, order 0. Power series below 15,
/// large-argument asymptotic expansion above. Relative error <= 1e-10.
double bessel_i0(double x);
/// Order 1 counterpart of bessel_i0.
double bessel_i1(double x);

/// Exponentially scaled variants e^{-x} I_nu(x); finite for any x >= 0.
double bessel_i0e(double x);
double bessel_i1e(double x);

}  // namespace dimlab
