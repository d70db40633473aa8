#include "satqkd/noise.hpp"

#include <cmath>

#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"

namespace satqkd {

namespace {
constexpr double kAlbedoEarth = 0.3;
constexpr double kAlbedoMoon = 0.12;
constexpr double kMoonRadius = 1.737e6;
constexpr double kEarthMoon = 3.84e8;
}  // namespace

NoiseEnvironment NoiseEnvironment::from_scenario(const std::string& name) {
  NoiseEnvironment e;
  if (name == "night-up") {
    e.direction = Direction::Up;
    e.period = Period::Night;
    e.kappa = kappa_night();
  } else if (name == "day-up") {
    e.direction = Direction::Up;
    e.period = Period::Day;
    e.kappa = kappa_day();
  } else if (name == "night-down") {
    e.H_sky = kHSkyNight;
  } else if (name == "day-down-clear") {
    e.period = Period::Day;
    e.H_sky = kHSkyClearDay;
  } else if (name == "day-down-cloudy") {
    e.period = Period::Day;
    e.sky = Sky::Cloudy;
    e.H_sky = kHSkyCloudyDay;
  } else {
    throw ConfigError("unknown noise scenario '" + name + "'");
  }
  return e;
}

std::string NoiseEnvironment::scenario_name() const {
  const std::string p = period == Period::Day ? "day" : "night";
  if (direction == Direction::Up) return p + "-up";
  if (period == Period::Night) return "night-down";
  return sky == Sky::Cloudy ? "day-down-cloudy" : "day-down-clear";
}

double gamma_R(const ReceiverParams& rx) {
  return rx.Delta_lambda * 1e9 * rx.Delta_t * rx.Omega_fov * rx.a_R * rx.a_R;
}

double kappa_day() { return kAlbedoEarth; }

double kappa_night() {
  const double r = kMoonRadius / kEarthMoon;
  return kAlbedoEarth * kAlbedoMoon * r * r;
}

double nbar_background(const NoiseEnvironment& env, const ReceiverParams& rx) {
  if (env.direction == Direction::Up) return env.kappa * env.H_sun * gamma_R(rx);
  return env.H_sky * gamma_R(rx);
}

double nbar_total(const NoiseEnvironment& env, const ReceiverParams& rx) {
  return rx.eta_eff * nbar_background(env, rx) + rx.n_ex;
}

double nbar_env(double nbar, double tau) {
  if (tau >= 1) throw DomainError("nbar_env: tau = 1 needs an infinite environment");
  return nbar / (1 - tau);
}

double blackbody_radiance(double lambda, double T) {
  if (!(lambda > 0) || T < 0) throw DomainError("blackbody_radiance: bad arguments");
  if (T == 0) return 0.0;
  const double x = phys::h * phys::c / (lambda * phys::k_B * T);
  const double per_m = 2 * phys::c / std::pow(lambda, 4) / std::expm1(x);
  return per_m * 1e-9;
}

double nbar_body(const ReceiverParams& rx, double lambda, double T) {
  return blackbody_radiance(lambda, T) * gamma_R(rx);
}

}  // namespace satqkd
