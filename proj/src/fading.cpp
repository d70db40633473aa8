#include "satqkd/fading.hpp"

#include <algorithm>
#include <cmath>

#include "satqkd/errors.hpp"
#include "satqkd/geometry.hpp"
#include "satqkd/numerics.hpp"
#include "satqkd/special.hpp"

namespace satqkd {

namespace {
// e^-60 is below any probability we report
constexpr double kVmax = 60.0;
}

double pointing_variance(double z, double error_rad) {
  if (z < 0) throw DomainError("pointing_variance: negative distance");
  return (error_rad * z) * (error_rad * z);
}

double eta_short_term(double w_st, double a_R) { return -std::expm1(-2 * a_R * a_R / (w_st * w_st)); }

double eta_short_term(double z, double theta, const BeamParams& beam, const ReceiverParams& rx,
                      const TurbulenceProfile& p, Direction dir) {
  return eta_short_term(spot_sizes(z, theta, beam, p, dir).w_st, rx.a_R);
}

double f0(double x) { return 1.0 / one_minus_i0e(2 * x); }

double f1(double x) { return bessel_i1e(2 * x); }

WeibullParams fading_params(double eta_st, double eta_st_far, double a_R) {
  // eta_st rounds to 1 once the aperture is several spot sizes wide
  if (!(eta_st > 0 && eta_st <= 1)) throw DomainError("fading_params: eta_st outside (0, 1]");
  if (!(eta_st_far > 0)) throw DomainError("fading_params: eta_st_far must be positive");
  // ln[2 eta_st f0(x)] as a difference of logs keeps precision when the argument is near 1
  const double L = std::log(2 * eta_st) - std::log(one_minus_i0e(2 * eta_st_far));
  if (!(L > 0)) throw DomainError("fading_params: degenerate geometry (log argument <= 1)");
  const double gamma = 4 * eta_st_far * f0(eta_st_far) * f1(eta_st_far) / L;
  const double r0 = a_R / std::pow(L, 1.0 / gamma);
  return {gamma, r0};
}

FadingModel build_fading_model(double h, double theta, const BeamParams& beam,
                               const ReceiverParams& rx, const TurbulenceProfile& p,
                               Direction dir, const ExtinctionModel& ext, double pointing_error) {
  FadingModel m;
  const double z = slant_range(h, theta);
  const SpotSizes s = spot_sizes(z, theta, beam, p, dir);
  m.w_st = s.w_st;
  m.w_lt = s.w_lt;
  m.a_R = rx.a_R;
  m.eta_st_far = 2 * rx.a_R * rx.a_R / (s.w_st * s.w_st);
  m.eta_st = -std::expm1(-m.eta_st_far);
  const auto [gamma, r0] = fading_params(m.eta_st, m.eta_st_far, rx.a_R);
  m.gamma = gamma;
  m.r0 = r0;
  m.eta_atm = eta_atm(h, theta, ext);
  m.eta_eff = rx.eta_eff;
  m.eta = rx.eta_eff * m.eta_atm * m.eta_st;
  m.sigma_P2 = pointing_variance(z, pointing_error);
  m.sigma_TB2 = s.sigma_TB2;
  m.sigma2 = m.sigma_P2 + m.sigma_TB2;
  return m;
}

bool in_support(double tau, const FadingModel& m) { return tau > 0 && tau < m.eta; }

double fading_pdf(double tau, const FadingModel& m) {
  if (!in_support(tau, m)) return 0.0;
  const double L = std::log(m.eta / tau);
  const double c = m.c();
  return m.r0 * m.r0 / (m.gamma * m.sigma2 * tau) * std::pow(L, 2 / m.gamma - 1) *
         std::exp(-c * std::pow(L, 2 / m.gamma));
}

double fading_cdf(double tau, const FadingModel& m) {
  if (tau <= 0) return 0.0;
  if (tau >= m.eta) return 1.0;
  return std::exp(-m.c() * std::pow(std::log(m.eta / tau), 2 / m.gamma));
}

namespace {

// v(tau) = c (ln eta/tau)^(2/gamma); v(eta) = 0, v(0+) = inf
double v_of_tau(double tau, const FadingModel& m) {
  if (tau <= 0) return std::numeric_limits<double>::infinity();
  if (tau >= m.eta) return 0.0;
  return m.c() * std::pow(std::log(m.eta / tau), 2 / m.gamma);
}

double tau_of_v(double v, const FadingModel& m) {
  return m.eta * std::exp(-std::pow(v / m.c(), m.gamma / 2));
}

double mass_between(double v_lo, double v_hi) {
  v_hi = std::min(v_hi, kVmax);
  if (v_lo >= v_hi) return 0.0;
  return num::integrate([](double v) { return std::exp(-v); }, v_lo, v_hi, 1e-12);
}

}  // namespace

double fading_expectation(const std::function<double(double)>& g, const FadingModel& m,
                          const std::vector<double>& tau_breaks) {
  std::vector<double> breaks{1.0, 5.0, 15.0};
  for (double t : tau_breaks)
    if (in_support(t, m)) breaks.push_back(v_of_tau(t, m));
  auto f = [&](double v) { return std::exp(-v) * g(tau_of_v(v, m)); };
  return num::integrate_pieces(f, 0.0, kVmax, breaks, 1e-11, 1e-300);
}

double p_threshold(double eta_th, const FadingModel& m) {
  if (eta_th >= m.eta) return 0.0;
  return mass_between(0.0, v_of_tau(eta_th, m));
}

double p_slot(int k, double delta_tau, const FadingModel& m) {
  if (k < 0 || !(delta_tau > 0)) throw DomainError("p_slot: invalid slot");
  const double lo = k * delta_tau;
  const double hi = std::min((k + 1) * delta_tau, m.eta);
  if (lo >= m.eta) return 0.0;
  return mass_between(v_of_tau(hi, m), v_of_tau(lo, m));
}

FadingSampler::FadingSampler(const FadingModel& m, std::uint64_t seed)
    : m_(m), rng_(seed), normal_(0.0, 1.0) {
  if (m.sigma2 < 0) throw DomainError("FadingSampler: negative wandering variance");
}

double FadingSampler::operator()() {
  const double s = std::sqrt(m_.sigma2);
  const double x = s * normal_(rng_);
  const double y = s * normal_(rng_);
  const double r = std::hypot(x, y);
  return m_.eta * std::exp(-std::pow(r / m_.r0, m_.gamma));
}

double eta_slow(const FadingModel& m, const ReceiverParams& rx, double eta_atm) {
  const double w2 = m.w_lt * m.w_lt + m.sigma_P2;
  return rx.eta_eff * eta_atm * -std::expm1(-2 * rx.a_R * rx.a_R / w2);
}

}  // namespace satqkd
