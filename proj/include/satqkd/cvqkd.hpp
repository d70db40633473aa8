#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "satqkd/clamped.hpp"
#include "satqkd/fading.hpp"

namespace satqkd {

enum class Detection { Homodyne, Heterodyne };
enum class Tail { Gaussian, Hoeffding };
enum class Attack { Collective, General };

// Vacuum units added by the measurement: 1 homodyne, 2 heterodyne.
double nu_add(Detection det);

struct ProtocolParams {
  double N = 1e8;        // block size (pulses)
  double m = 1.5e7;      // pilot pulses
  double f_et = 0.9;     // energy-test fraction (general attacks)
  double beta = 0.96;    // reconciliation efficiency
  double p_ec = 0.9;     // error-correction success probability
  double eps_s = 0x1p-33;
  double eps_h = 0x1p-33;
  double eps_pe = 0x1p-33;
  double eps_cor = 0x1p-33;
  double d = 32;         // alphabet size after digitisation
  double mu = 9.28;      // modulation, sigma_x^2 = mu - 1
  double phi_thr = 0.73; // threshold fraction, eta_th = phi_thr * eta
  double clock_hz = 5e6;
  Detection detection = Detection::Heterodyne;
  Tail tail = Tail::Gaussian;
  Attack attack = Attack::Collective;
  bool llo = false;        // locally generated LO
  double linewidth = 0.0;  // laser linewidth (Hz), LLO only

  double sigma_x2() const { return mu - 1; }
  // Key-generation pulses: N - m, or (N - m)/(1 + f_et) with energy tests.
  double n() const;
  double epsilon() const;

  static ProtocolParams collective();
  static ProtocolParams general();
};

double mutual_information(double tau, double nbar, double sigma_x2, Detection det);

// Same quantity written through the equivalent noise Sigma = (nu_add + 2 nbar)/tau.
double mutual_information_equivalent(double tau, double nbar, double sigma_x2, Detection det);

// Eve's Holevo information on Bob's outcome for an entangling-cloner attack.
double holevo_bound(double tau, double nbar, double mu, Detection det);

double asymptotic_rate(double tau, double nbar, const ProtocolParams& p);

double pe_confidence(double eps_pe, Tail tail);
double worst_case_nbar(double nbar, double m, double nu, double eps_pe, Tail tail);
double worst_case_nbar(double nbar, const ProtocolParams& p);

double delta_aep(const ProtocolParams& p);
double theta_term(const ProtocolParams& p);

struct RateResult {
  Clamped rate;
  double n_eff = 0;     // key-generation pulses actually used
  double p_th = 1;      // post-selection probability
  double K_n = 0;       // energy-test bound (general attacks)
  double eps_prime = 0; // security parameter (general attacks)
  bool no_postselection = false;  // p_th = 0
};

RateResult composable_rate(double tau, double nbar_prime, const ProtocolParams& p);
RateResult general_attack_rate(double tau, double nbar_prime, const ProtocolParams& p);

// Threshold post-selection over the fading model; uses p.attack for the finite-size terms.
RateResult postselected_rate(const FadingModel& m, double nbar_prime, const ProtocolParams& p);

struct LloNoise {
  double eps_LLO;
  double nbar_LLO;
};
LloNoise llo_noise(double sigma_x2, double clock_hz, double linewidth, double tau);

struct Optimum {
  double mu = 0;
  double phi = 0;
  double rate = 0;
  bool feasible = false;
};

// 32x32 grid, then per-axis bracketed refinement around the best cell.
Optimum optimize_protocol(const std::function<double(double, double)>& rate_fn,
                          std::pair<double, double> mu_range, std::pair<double, double> phi_range,
                          unsigned jobs = 1, int grid = 32);

// Monte Carlo pilot emulation at fixed tau.
struct EstimationResult {
  double sqrt_tau_hat = 0;
  double nbar_hat = 0;
};
EstimationResult simulate_pilots(double tau, double nbar, double m, double n_pilot, Detection det,
                                 std::uint64_t seed);
// Analytic variance of the sqrt(tau) estimator, sigma_z^2 / (2 nu m n_p).
double sqrt_tau_variance(double nbar, double m, double n_pilot, Detection det);

}  // namespace satqkd
