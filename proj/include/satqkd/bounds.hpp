#pragma once

#include "satqkd/clamped.hpp"
#include "satqkd/fading.hpp"
#include "satqkd/noise.hpp"
#include "satqkd/special.hpp"

namespace satqkd {

// Thermal-loss channel bound; 0 when nbar > tau.
double phi_thermal(double tau, double nbar);

// Wandering correction Delta(eta, sigma) in (0, 1].
double delta_factor(double eta, double sigma2, double gamma, double r0);

// B = -Delta log2(1 - eta)
double bound_B(double eta, double sigma2, double gamma, double r0);
double bound_B(const FadingModel& m);

double thermal_correction_T(double nbar, double eta, double sigma2, double gamma, double r0);

Clamped thermal_upper(double nbar, const FadingModel& m);

struct ThermalLower {
  Clamped integral;  // B - int P h(nbar/(1-tau))
  Clamped simple;    // B - h(nbar/(1-eta))
};
ThermalLower thermal_lower(double nbar, const FadingModel& m);

// Diffraction-only range limit Sigma/(kappa H_sun) or Sigma/H_sky.
double max_range_simple(const NoiseEnvironment& env, const ReceiverParams& rx,
                        const BeamParams& beam);

struct MaxRange {
  double z = 0;                      // m
  bool breaking_everywhere = false;  // no secure range at all
  bool capped = false;               // still secure at the 1e9 m cap
};

// Zenith link with h = z; root of B - T by bisection to 1 km.
MaxRange max_range_tight(const NoiseEnvironment& env, const ReceiverParams& rx,
                         const BeamParams& beam, const TurbulenceProfile& profile,
                         const ExtinctionModel& ext = {}, double pointing_error = 1e-6);

double bound_slow(const FadingModel& m, const ReceiverParams& rx, double eta_atm);

}  // namespace satqkd
