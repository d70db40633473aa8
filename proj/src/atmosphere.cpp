#include "satqkd/atmosphere.hpp"

#include <algorithm>
#include <cmath>

#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"
#include "satqkd/numerics.hpp"

namespace satqkd {

namespace {

// g(h, theta) = int_0^z exp(-h(y, theta)/h_tilde) dy. The path is cut where the
// integrand has dropped by e^-30, so the neglected tail stays below 1e-13 of g.
double path_integral(double h, double theta, double h_tilde) {
  const double top = std::min(h, 30.0 * h_tilde);
  const double z_top = slant_range(top, theta);
  if (z_top == 0.0) return 0.0;
  auto f = [&](double y) { return std::exp(-altitude_from_slant(y, theta) / h_tilde); };
  // break points roughly one, three and six scale heights along the path
  const double stretch = z_top / std::max(top, 1.0);
  std::vector<double> breaks{h_tilde * stretch, 3 * h_tilde * stretch, 6 * h_tilde * stretch};
  return num::integrate_pieces(f, 0.0, z_top, breaks, 1e-10);
}

}  // namespace

double ExtinctionModel::alpha(double h) const { return alpha0 * std::exp(-h / h_tilde); }

double eta_atm_zenith(double h, const ExtinctionModel& ext) {
  if (h < 0) throw DomainError("eta_atm_zenith: negative altitude");
  return std::exp(ext.alpha0 * ext.h_tilde * std::expm1(-h / ext.h_tilde));
}

double eta_atm(double h, double theta, const ExtinctionModel& ext) {
  if (h < 0) throw DomainError("eta_atm: negative altitude");
  if (std::abs(theta) > kPi / 2 + 1e-12) throw DomainError("eta_atm: zenith angle beyond horizon");
  if (theta == 0.0) return eta_atm_zenith(h, ext);
  return std::exp(-ext.alpha0 * path_integral(h, theta, ext.h_tilde));
}

double eta_atm_secant(double, double theta, const ExtinctionModel& ext) {
  const double zen = std::exp(-ext.alpha0 * ext.h_tilde);
  return std::pow(zen, 1.0 / std::cos(theta));
}

double eta_atm_refracted(double h, double theta_app, const Elongation& elongation,
                         const ExtinctionModel& ext) {
  // With y = eps * u the refracted integral is eps times the unrefracted one at theta(theta_app).
  const double theta = true_zenith(theta_app);
  const double eps = elongation(theta_app);
  const double g = theta == 0.0 ? -ext.h_tilde * std::expm1(-h / ext.h_tilde)
                                : path_integral(h, theta, ext.h_tilde);
  return std::exp(-ext.alpha0 * eps * g);
}

double to_db(double eta) { return -10.0 * std::log10(eta); }

}  // namespace satqkd
