#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "satqkd/turbulence.hpp"

namespace satqkd {

// Beam-wandering fading channel at one (h, theta).
struct FadingModel {
  double eta = 0;         // maximum transmissivity eta_eff * eta_atm * eta_st
  double eta_st = 0;      // short-term aperture transmissivity
  double eta_st_far = 0;  // far-field form 2 a_R^2 / w_st^2
  double eta_atm = 1;
  double eta_eff = 1;
  double sigma2 = 0;      // total wandering variance (m^2)
  double sigma_P2 = 0;    // pointing part
  double sigma_TB2 = 0;   // turbulence part
  double gamma = 2;       // Weibull shape
  double r0 = 1;          // Weibull scale (m)
  double w_st = 0;
  double w_lt = 0;
  double a_R = 0;

  // r0^2 / (2 sigma^2)
  double c() const { return r0 * r0 / (2 * sigma2); }
};

double pointing_variance(double z, double error_rad = 1e-6);

double eta_short_term(double w_st, double a_R);
double eta_short_term(double z, double theta, const BeamParams& beam, const ReceiverParams& rx,
                      const TurbulenceProfile& p, Direction dir);

double f0(double x);
double f1(double x);

struct WeibullParams {
  double gamma;
  double r0;
};
WeibullParams fading_params(double eta_st, double eta_st_far, double a_R);

FadingModel build_fading_model(double h, double theta, const BeamParams& beam,
                               const ReceiverParams& rx, const TurbulenceProfile& p,
                               Direction dir, const ExtinctionModel& ext = {},
                               double pointing_error = 1e-6);

// Density of tau on (0, eta); 0 outside the support.
double fading_pdf(double tau, const FadingModel& m);
bool in_support(double tau, const FadingModel& m);

// P(T <= tau), closed form.
double fading_cdf(double tau, const FadingModel& m);

// int P(tau) g(tau) dtau over the support, by quadrature in v = c (ln eta/tau)^(2/gamma).
// tau_breaks mark kinks of g.
double fading_expectation(const std::function<double(double)>& g, const FadingModel& m,
                          const std::vector<double>& tau_breaks = {});

// P(T > eta_th) by quadrature.
double p_threshold(double eta_th, const FadingModel& m);
// Probability of slot [k dtau, (k+1) dtau] intersected with the support.
double p_slot(int k, double delta_tau, const FadingModel& m);

// Independent tau stream: centroid offsets x, y ~ N(0, sigma^2).
class FadingSampler {
 public:
  FadingSampler(const FadingModel& m, std::uint64_t seed);
  double operator()();

 private:
  FadingModel m_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

// Transmissivity seen by a detector slower than the wandering.
double eta_slow(const FadingModel& m, const ReceiverParams& rx, double eta_atm);

}  // namespace satqkd
