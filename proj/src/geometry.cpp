#include "satqkd/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"

namespace satqkd {

using earth::R_E;

namespace {

void check_theta(double theta) {
  if (!(std::abs(theta) <= kPi / 2 + 1e-12))
    throw DomainError("zenith angle outside [-pi/2, pi/2]");
}

// Stable form of sqrt(a^2 + d) - a for d small against a^2.
double sqrt_minus(double a, double d) {
  const double s = std::sqrt(a * a + d);
  return a >= 0 ? d / (s + a) : s - a;
}

}  // namespace

LinkGeometry make_link(double h, double theta, double h0) {
  const double z = h0 == 0.0 ? slant_range(h, theta) : slant_range_elevated(h, theta, h0);
  return {h, theta, z, h0};
}

double slant_range(double h, double theta) {
  if (h < 0) throw DomainError("slant_range: negative altitude");
  check_theta(theta);
  const double c = std::cos(std::abs(theta));
  return sqrt_minus(R_E * c, h * h + 2 * h * R_E);
}

double altitude_from_slant(double z, double theta) {
  if (z < 0) throw DomainError("altitude_from_slant: negative slant range");
  return sqrt_minus(R_E, z * z + 2 * z * R_E * std::cos(std::abs(theta)));
}

double zenith_from(double z, double h) {
  if (!(z > 0)) throw DomainError("zenith_from: slant range must be positive");
  const double c = h / z + (h * h - z * z) / (2 * z * R_E);
  if (c > 1 + 1e-12 || c < -1 - 1e-12) throw DomainError("zenith_from: inconsistent (z, h) pair");
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double slant_range_elevated(double h, double theta, double h0) {
  if (h0 < 0 || h0 >= h) throw DomainError("slant_range_elevated: need 0 <= h0 < h");
  check_theta(theta);
  const double rg = R_E + h0;
  const double c = std::cos(std::abs(theta));
  // R_S^2 + R_G^2 (cos^2 - 1) = (R_G c)^2 + (R_S^2 - R_G^2)
  return sqrt_minus(rg * c, (h - h0) * (2 * R_E + h + h0));
}

double altitude_elevated(double z, double theta, double h0) {
  if (z < 0) throw DomainError("altitude_elevated: negative slant range");
  if (h0 < 0) throw DomainError("altitude_elevated: negative station altitude");
  const double rg = R_E + h0;
  return h0 + sqrt_minus(rg, z * z + 2 * z * rg * std::cos(std::abs(theta)));
}

double slant_orbital(double R_S, double alpha) {
  if (!(R_S > R_E)) throw DomainError("slant_orbital: orbit below the surface");
  const double s = std::sin(alpha / 2);
  // R_E^2 + R_S^2 - 2 R_E R_S cos(alpha), written to avoid cancellation at small alpha
  const double d = R_S - R_E;
  return std::sqrt(d * d + 4 * R_E * R_S * s * s);
}

double apparent_zenith(double theta) {
  check_theta(theta);
  return std::asin(std::sin(theta) / earth::n0);
}

double true_zenith(double theta_app) {
  const double s = earth::n0 * std::sin(theta_app);
  if (std::abs(s) > 1) throw DomainError("apparent zenith angle beyond the refracted horizon");
  return std::asin(s);
}

Elongation::Elongation(std::vector<std::pair<double, double>> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  for (const auto& [x, y] : nodes_)
    if (!(y >= 1.0)) throw DomainError("elongation factor must be >= 1");
}

double Elongation::operator()(double theta_app) const {
  if (nodes_.empty()) return 1.0;
  const double x = std::abs(theta_app);
  if (x <= nodes_.front().first) return nodes_.front().second;
  if (x >= nodes_.back().first) return nodes_.back().second;
  auto hi = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                             [](double v, const auto& n) { return v < n.first; });
  auto lo = hi - 1;
  const double t = (x - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

double refracted_slant(double h, double theta_app, const Elongation& elongation) {
  const double eps = elongation(theta_app);
  if (eps < 1) throw DomainError("elongation factor must be >= 1");
  return eps * slant_range(h, true_zenith(theta_app));
}

double refracted_altitude(double z_ref, double theta_app, const Elongation& elongation) {
  return altitude_from_slant(z_ref / elongation(theta_app), true_zenith(theta_app));
}

}  // namespace satqkd
