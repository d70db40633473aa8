#pragma once

#include <string>
#include <vector>

#include "satqkd/cvqkd.hpp"
#include "satqkd/noise.hpp"
#include "satqkd/orbit.hpp"

namespace satqkd {

// Spot-size setups: transmitter waist, receiver aperture, filter width.
struct Setup {
  double w0;
  double a_R;
  double delta_lambda;  // m
};
Setup setup_preset(int index);  // 1..4
void apply_setup(int index, BeamParams& beam, ReceiverParams& rx);

struct Scenario {
  BeamParams beam;
  ReceiverParams rx;
  ExtinctionModel ext;
  TurbulenceProfile profile = TurbulenceProfile::hv_night();
  NoiseEnvironment env;
  ProtocolParams protocol;
  double pointing_error = 1e-6;

  Direction direction() const { return env.direction; }
  FadingModel fading(double h, double theta) const;
  double nbar() const;
  double nbar_prime() const;
  RateResult rate(double h, double theta) const;
  RateResult rate(const FadingModel& m, const ProtocolParams& p) const;
};

// `profile` = "auto" picks hv-day for day scenarios and hv-night otherwise.
Scenario make_scenario(const std::string& noise, int setup, const std::string& profile = "auto");

struct PassReport {
  double h = 0;
  double t_Q = 0;
  double t_T = 0;
  double inclination_deg = 0;
  double period_s = 0;
  double orbits_per_day = 0;
  SlicePlan plan;
  OrbitalRate rate;
  double mu = 0;
  double phi = 0;
  bool optimized = false;
  double bits_per_pass = 0;
  double bits_per_day = 0;  // one zenith-crossing pass per day
};

// Orbital average for one zenith pass. With `optimize`, (mu, phi) are tuned for the
// edge of the window (|theta| = 1) before slicing.
PassReport build_pass(const Scenario& s, double h, int n_bks, bool optimize, unsigned jobs = 1);

}  // namespace satqkd
