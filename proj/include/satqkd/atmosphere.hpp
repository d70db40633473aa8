#pragma once

#include "satqkd/geometry.hpp"

namespace satqkd {

// Beer-Lambert extinction with an exponentially thinning coefficient.
struct ExtinctionModel {
  double alpha0 = 5e-6;     // sea-level extinction (1/m), 800 nm
  double h_tilde = 6600.0;  // scale height (m)

  double alpha(double h) const;
};

// Vertical path from the ground up to altitude h (h may be +infinity).
double eta_atm_zenith(double h, const ExtinctionModel& ext = {});

// Slant path, path integral by adaptive quadrature; the path is cut where alpha is negligible.
double eta_atm(double h, double theta, const ExtinctionModel& ext = {});

// Secant law [eta_zen(inf)]^sec(theta).
double eta_atm_secant(double h, double theta, const ExtinctionModel& ext = {});

double eta_atm_refracted(double h, double theta_app, const Elongation& elongation = {},
                         const ExtinctionModel& ext = {});

double to_db(double eta);

}  // namespace satqkd
