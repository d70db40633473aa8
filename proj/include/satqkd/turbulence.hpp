#pragma once

#include <string>

#include "satqkd/beam.hpp"

namespace satqkd {

enum class Direction { Up, Down };

struct TurbulenceProfile {
  enum class Kind { HufnagelValley, HufnagelStanley };

  Kind kind = Kind::HufnagelValley;
  double A = 1.7e-14;  // ground C_n^2 (m^-2/3), H-V only
  double v = 21.0;     // wind speed (m/s), H-V only
  double c1 = 4.2e-14;  // Hufnagel-Stanley amplitude
  double c2 = 3200.0;   // Hufnagel-Stanley scale (m)
  std::string name = "hv-night";

  static TurbulenceProfile hv_night();
  static TurbulenceProfile hv_day();
  static TurbulenceProfile hv_worst_day();
  static TurbulenceProfile hufnagel_stanley();
  // Accepts hv-night, hv-day, hv-worst-day, hufnagel-stanley; throws ConfigError otherwise.
  static TurbulenceProfile from_name(const std::string& name);
};

double cn2(double h, const TurbulenceProfile& p);

// Single-layer average h^-1 int_0^h C_n^2.
double cn2_avg(double h, const TurbulenceProfile& p);

// int_0^h_max C_n^2, memoised per profile.
double I_infty(const TurbulenceProfile& p, double h_max = 100e3);

struct Rytov {
  double value;
  bool weak;  // value < 1
};

Rytov rytov_variance(double h, double theta, double k, const TurbulenceProfile& p, Direction dir);

// Spherical-wave coherence length rho_0 for slant range z.
double coherence_length(double z, double theta, double k, const TurbulenceProfile& p,
                        Direction dir);
// Planar limit [1.46 k^2 sec(theta) I_inf]^-3/5.
double coherence_length_planar(double theta, double k, const TurbulenceProfile& p);

double speckle_count(double a_R, double rho0);

struct SpotCoefficients {
  double a, b, c;
};
SpotCoefficients spot_coefficients(double I_inf);

// z^2 overhead of the short-term spot: w_st^2 = w_d^2 + z^2 Delta(theta).
double spot_overhead(double theta, const BeamParams& beam, double I_inf);

enum class PsiForm { Exact, Linear };

struct SpotSizes {
  double w_d = 0;
  double w_st = 0;
  double w_lt = 0;
  double sigma_TB2 = 0;  // turbulent centroid wandering (m^2)
  double Psi = 1;
  double yura_phi = 0;
  bool yura_marginal = false;  // phi above 0.1, formulas less reliable
};

// Planar-asymptote formulas for uplink; diffraction-limited for downlink.
SpotSizes spot_sizes(double z, double theta, const BeamParams& beam, const TurbulenceProfile& p,
                     Direction dir);

// Formulas in terms of an explicit coherence length (uplink).
SpotSizes spot_sizes_from_rho0(double z, double rho0, const BeamParams& beam,
                               PsiForm psi = PsiForm::Exact);

}  // namespace satqkd
