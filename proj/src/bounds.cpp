#include "satqkd/bounds.hpp"

#include <cmath>
#include <numbers>

#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"
#include "satqkd/numerics.hpp"

namespace satqkd {

double phi_thermal(double tau, double nbar) {
  if (!(tau > 0 && tau < 1)) throw DomainError("phi_thermal: tau outside (0, 1)");
  if (nbar < 0) throw DomainError("phi_thermal: negative nbar");
  if (nbar > tau) return 0.0;
  const double ne = nbar / (1 - tau);
  const double log2_term = (std::log1p(-tau) + ne * std::log(tau)) / std::numbers::ln2;
  return -log2_term - entropy_h(ne);
}

double delta_factor(double eta, double sigma2, double gamma, double r0) {
  if (!(eta > 0 && eta < 1)) throw DomainError("delta_factor: eta outside (0, 1)");
  if (!(sigma2 > 0)) return 1.0;
  const double c = r0 * r0 / (2 * sigma2);
  const double p = 2 / gamma;
  // exp(-c x^p)/(e^x - eta), rewritten to stay finite for large x
  auto f = [&](double x) { return std::exp(-c * std::pow(x, p) - x) / (1 - eta * std::exp(-x)); };
  // on [0, 1] substitute w = c x^p so the Weibull factor becomes exp(-w); the Jacobian
  // w^(gamma/2 - 1) is singular at 0 for gamma < 2, so the first piece gets tanh-sinh
  const double q = gamma / 2;
  const double cq = std::pow(c, -q);
  auto g = [&](double w) {
    const double x = cq * std::pow(w, q);
    return std::exp(-w - x) / (1 - eta * std::exp(-x)) * q * std::pow(w, q - 1);
  };
  std::vector<double> pts{0.0};
  for (double k : {1.0, 10.0, 40.0})
    if (k < c) pts.push_back(k);
  pts.push_back(c);
  // the full integral is at most -ln(1 - eta)/eta, which sets the absolute scale
  const double atol = 1e-13 * -std::log1p(-eta) / eta;
  double inner = num::integrate_singular(g, pts[0], pts[1], 1e-11, atol / cq);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    inner += num::integrate(g, pts[i], pts[i + 1], 1e-11, atol / cq);
  inner *= cq;
  const double outer = c > 745 ? 0.0
                               : num::integrate(f, 1.0, std::numeric_limits<double>::infinity(),
                                                1e-11, atol);
  return 1 + eta / std::log1p(-eta) * (inner + outer);
}

double bound_B(double eta, double sigma2, double gamma, double r0) {
  return -delta_factor(eta, sigma2, gamma, r0) * std::log1p(-eta) / std::numbers::ln2;
}

double bound_B(const FadingModel& m) { return bound_B(m.eta, m.sigma2, m.gamma, m.r0); }

double thermal_correction_T(double nbar, double eta, double sigma2, double gamma, double r0) {
  if (nbar == 0) return 0.0;
  if (!(nbar > 0 && nbar <= eta)) throw DomainError("thermal_correction_T: need 0 < nbar <= eta");
  const double c = r0 * r0 / (2 * sigma2);
  const double weight = -std::expm1(-c * std::pow(std::log(eta / nbar), 2 / gamma));
  const double bracket = nbar * std::log2(nbar) / (1 - nbar) + entropy_h(nbar);
  return weight * bracket + bound_B(nbar, sigma2, gamma, r0);
}

Clamped thermal_upper(double nbar, const FadingModel& m) {
  if (nbar >= m.eta) return {0.0, 0.0, true};
  const double b = bound_B(m);
  return clamp0(b - thermal_correction_T(nbar, m.eta, m.sigma2, m.gamma, m.r0));
}

ThermalLower thermal_lower(double nbar, const FadingModel& m) {
  const double b = bound_B(m);
  if (nbar == 0) return {clamp0(b), clamp0(b)};
  const double avg = fading_expectation([&](double tau) { return entropy_h(nbar / (1 - tau)); }, m);
  return {clamp0(b - avg), clamp0(b - entropy_h(nbar / (1 - m.eta)))};
}

double max_range_simple(const NoiseEnvironment& env, const ReceiverParams& rx,
                        const BeamParams& beam) {
  const double sigma = kPi * beam.w0 /
                       (beam.lambda * rx.Delta_lambda * 1e9 * rx.Delta_t * rx.Omega_fov * rx.a_R);
  const double H = env.direction == Direction::Up ? env.kappa * env.H_sun : env.H_sky;
  return sigma / H;
}

MaxRange max_range_tight(const NoiseEnvironment& env, const ReceiverParams& rx,
                         const BeamParams& beam, const TurbulenceProfile& profile,
                         const ExtinctionModel& ext, double pointing_error) {
  constexpr double kLo = 10e3;
  constexpr double kCap = 1e9;
  const double nbar = nbar_total(env, rx);
  MaxRange out;
  if (nbar >= 1) {
    out.breaking_everywhere = true;
    return out;
  }
  auto margin = [&](double z) {
    const FadingModel m =
        build_fading_model(z, 0.0, beam, rx, profile, env.direction, ext, pointing_error);
    if (nbar >= m.eta) return -1.0;
    return bound_B(m) - thermal_correction_T(nbar, m.eta, m.sigma2, m.gamma, m.r0);
  };
  if (margin(kLo) <= 0) {
    out.breaking_everywhere = true;
    return out;
  }
  double lo = kLo;
  while (true) {
    const double hi = std::min(2 * lo, kCap);
    if (margin(hi) <= 0) {
      out.z = num::bisect(margin, lo, hi, 1e3);
      return out;
    }
    if (hi >= kCap) {
      out.z = kCap;
      out.capped = true;
      return out;
    }
    lo = hi;
  }
}

double bound_slow(const FadingModel& m, const ReceiverParams& rx, double eta_atm) {
  const double far = 2 * rx.a_R * rx.a_R / (m.w_lt * m.w_lt + m.sigma_P2) / std::numbers::ln2;
  return std::min(plob(eta_slow(m, rx, eta_atm)), far);
}

}  // namespace satqkd
