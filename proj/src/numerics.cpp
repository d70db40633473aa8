#include "satqkd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include "satqkd/errors.hpp"

namespace satqkd::num {

namespace {
constexpr unsigned kMaxDepth = 25;
}

double integrate(const Fn& f, double a, double b, double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, kMaxDepth, rel_tol, &err, &l1);
  if (!std::isfinite(v)) throw NumericalError("quadrature produced a non-finite value");
  // Kronrod error estimates are pessimistic for smooth integrands; allow a small slack.
  const double allowed = std::max(10.0 * rel_tol * std::max(std::abs(v), 1e-300), abs_tol);
  if (err > allowed && err > 1e-300) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "]: estimate " << v
        << ", error " << err;
    throw NumericalError(msg.str());
  }
  return v;
}

double integrate_pieces(const Fn& f, double a, double b, const std::vector<double>& breaks,
                 double rel_tol, double abs_tol) {
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  std::sort(pts.begin() + 1, pts.end());
  pts.push_back(b);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    sum += integrate(f, pts[i], pts[i + 1], rel_tol, abs_tol);
  return sum;
}

double integrate_singular(const Fn& f, double a, double b, double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  // the rule grows its abscissa tables lazily, so keep one per thread
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0;
  const double v = ts.integrate(f, a, b, rel_tol, &err);
  if (!std::isfinite(v)) throw NumericalError("quadrature produced a non-finite value");
  if (err > std::max({10.0 * rel_tol * std::abs(v), abs_tol, 1e-300})) {
    std::ostringstream msg;
    msg << "tanh-sinh quadrature did not converge on [" << a << ", " << b << "]: estimate " << v
        << ", error " << err;
    throw NumericalError(msg.str());
  }
  return v;
}

double bisect(const Fn& f, double lo, double hi, double x_tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw NumericalError("bisect: no sign change in bracket");
  while (hi - lo > x_tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Minimum minimize(const Fn& f, double lo, double hi, int bits) {
  if (lo == hi) return {lo, f(lo)};
  auto r = boost::math::tools::brent_find_minima(f, lo, hi, bits);
  return {r.first, r.second};
}

}  // namespace satqkd::num
