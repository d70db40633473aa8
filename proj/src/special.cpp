#include "satqkd/special.hpp"

#include <cmath>
#include <numbers>

#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"

namespace satqkd {

namespace {

// Below this argument the power series is summed directly (all terms positive, so no
// cancellation); above it the Hankel expansion is accurate to well below 1e-15.
constexpr double kSplit = 30.0;

// sum_{k>=k0} (x/2)^(2k+nu) / (k! (k+nu)!)
double series(double x, int nu, int k0) {
  const double q = 0.25 * x * x;
  double term = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
  for (int k = 1; k <= k0; ++k) term *= q / (k * double(k + nu));
  double sum = 0.0;
  for (int k = k0; k < 500; ++k) {
    sum += term;
    if (term < 1e-17 * sum) break;
    term *= q / ((k + 1.0) * (k + 1.0 + nu));
  }
  return sum;
}

double hankel(double x, int nu) {
  const double m = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (m - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2 * kPi * x);
}

}  // namespace

double bessel_i0e(double x) {
  if (x < 0) throw DomainError("bessel_i0e: negative argument");
  if (x <= kSplit) return std::exp(-x) * series(x, 0, 0);
  return hankel(x, 0);
}

double bessel_i1e(double x) {
  if (x < 0) throw DomainError("bessel_i1e: negative argument");
  if (x <= kSplit) return std::exp(-x) * series(x, 1, 0);
  return hankel(x, 1);
}

double one_minus_i0e(double x) {
  if (x < 0) throw DomainError("one_minus_i0e: negative argument");
  if (x <= kSplit) return -std::expm1(-x) - std::exp(-x) * series(x, 0, 1);
  return 1.0 - hankel(x, 0);
}

double entropy_h(double x) {
  if (x < 0) throw DomainError("entropy_h: negative mean photon number");
  if (x == 0) return 0.0;
  return ((x + 1) * std::log1p(x) - x * std::log(x)) / std::numbers::ln2;
}

}  // namespace satqkd
