#include "satqkd/beam.hpp"

#include <cmath>
#include <numbers>

#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"

namespace satqkd {

double BeamParams::k() const { return 2 * kPi / lambda; }

double BeamParams::z_R() const { return kPi * w0 * w0 / lambda; }

double diffraction_waist(double z, const BeamParams& beam) {
  if (z < 0) throw DomainError("diffraction_waist: negative distance");
  const double focus = std::isinf(beam.R0) ? 1.0 : 1.0 - z / beam.R0;
  const double far = z / beam.z_R();
  return beam.w0 * std::sqrt(focus * focus + far * far);
}

double eta_diffraction(double z, const BeamParams& beam, double a_R) {
  const double w = diffraction_waist(z, beam);
  return -std::expm1(-2 * a_R * a_R / (w * w));
}

double eta_diffraction_far(double z, const BeamParams& beam, double a_R) {
  const double w = diffraction_waist(z, beam);
  return 2 * a_R * a_R / (w * w);
}

double plob(double eta) {
  if (eta < 0 || eta > 1) throw DomainError("plob: transmissivity outside [0, 1]");
  if (eta == 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-eta) / std::numbers::ln2;
}

double diffraction_bound(double z, const BeamParams& beam, double a_R) {
  return eta_diffraction_far(z, beam, a_R) / std::numbers::ln2;
}

double eta_total(double h, double theta, const BeamParams& beam, const ReceiverParams& rx,
                 const ExtinctionModel& ext) {
  if (!(rx.eta_eff > 0 && rx.eta_eff <= 1)) throw DomainError("eta_eff outside (0, 1]");
  const double z = slant_range(h, theta);
  return rx.eta_eff * eta_atm(h, theta, ext) * eta_diffraction(z, beam, rx.a_R);
}

double bound_V(double h, double theta, const BeamParams& beam, const ReceiverParams& rx,
               const ExtinctionModel& ext) {
  return plob(eta_total(h, theta, beam, rx, ext));
}

}  // namespace satqkd
