#include "dimlab/quadrature.hpp"

#include <cmath>

#include "dimlab/error.hpp"

namespace dimlab {
namespace {

constexpr int kInitialPanels = 32;
constexpr int kMaxDepth = 60;

struct Simpson {
  const std::function<double(double)>& f;
  long budget;
  long used = 0;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    if (++used > budget) throw ConvergenceError("quad_1d: subdivision budget exhausted");
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= kMaxDepth || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double quad_1d(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opts) {
  if (!(a < b)) throw InputError("quad_1d: require a < b");
  const double lo = a + opts.endpoint_offset;
  const double hi = b - opts.endpoint_offset;
  Simpson s{f, opts.max_subdivisions};
  const double h = (hi - lo) / kInitialPanels;
  const double tol = opts.abs_tol / kInitialPanels;
  double total = 0.0;
  double x0 = lo;
  double f0 = f(x0);
  for (int i = 0; i < kInitialPanels; ++i) {
    const double x1 = i + 1 == kInitialPanels ? hi : lo + (i + 1) * h;
    const double xm = 0.5 * (x0 + x1);
    const double fm = f(xm);
    const double f1 = f(x1);
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += s.recurse(x0, x1, f0, fm, f1, whole, tol, 0);
    x0 = x1;
    f0 = f1;
  }
  if (!std::isfinite(total)) throw ConvergenceError("quad_1d: integral is not finite");
  return total;
}

}  // namespace dimlab
