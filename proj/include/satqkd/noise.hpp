#pragma once

#include <string>

#include "satqkd/turbulence.hpp"

namespace satqkd {

enum class Period { Day, Night };
enum class Sky { Clear, Cloudy };

// Spectral irradiances in photons m^-2 s^-1 nm^-1 sr^-1 at 800 nm.
inline constexpr double kHSun = 4.61e18;
inline constexpr double kHSkyNight = 1.9e13;
inline constexpr double kHSkyClearDay = 1.9e16;
inline constexpr double kHSkyCloudyDay = 1.9e18;

struct NoiseEnvironment {
  Direction direction = Direction::Down;
  Period period = Period::Night;
  Sky sky = Sky::Clear;
  double H_sun = kHSun;
  double H_sky = kHSkyNight;
  double kappa = 0.0;  // uplink albedo-geometry factor

  // night-up, night-down, day-up, day-down-clear, day-down-cloudy
  static NoiseEnvironment from_scenario(const std::string& name);
  std::string scenario_name() const;
};

// Delta_lambda (nm) * Delta_t * Omega_fov * a_R^2, in m^2 s nm sr.
double gamma_R(const ReceiverParams& rx);

double kappa_day();
double kappa_night();

double nbar_background(const NoiseEnvironment& env, const ReceiverParams& rx);
// eta_eff * nbar_B + n_ex
double nbar_total(const NoiseEnvironment& env, const ReceiverParams& rx);
// nbar / (1 - tau)
double nbar_env(double nbar, double tau);

// Black-body spectral photon radiance per nm of bandwidth.
double blackbody_radiance(double lambda, double T);
double nbar_body(const ReceiverParams& rx, double lambda, double T);

}  // namespace satqkd
