#pragma once

#include <limits>

#include "satqkd/atmosphere.hpp"

namespace satqkd {

struct BeamParams {
  double lambda = 800e-9;  // m
  double w0 = 0.2;         // field spot size at the transmitter (m)
  double R0 = std::numeric_limits<double>::infinity();  // curvature radius, inf = collimated

  double k() const;
  double z_R() const;
};

struct ReceiverParams {
  double a_R = 0.4;            // aperture radius (m)
  double Omega_fov = 1e-10;    // field of view (sr)
  double Delta_t = 10e-9;      // detection time (s)
  double Delta_lambda = 1e-9;  // spectral filter (m)
  double eta_eff = 0.4;        // setup efficiency
  double n_ex = 0.0;           // trusted excess photons
};

double diffraction_waist(double z, const BeamParams& beam);

double eta_diffraction(double z, const BeamParams& beam, double a_R);
double eta_diffraction_far(double z, const BeamParams& beam, double a_R);

// -log2(1 - eta); returns +infinity at eta = 1.
double plob(double eta);

// U = (2/ln2) a_R^2 / w_d^2
double diffraction_bound(double z, const BeamParams& beam, double a_R);

// eta_eff * eta_atm * eta_d along the slant path.
double eta_total(double h, double theta, const BeamParams& beam, const ReceiverParams& rx,
                 const ExtinctionModel& ext = {});
double bound_V(double h, double theta, const BeamParams& beam, const ReceiverParams& rx,
               const ExtinctionModel& ext = {});

}  // namespace satqkd
