#include "satqkd/cvqkd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/erf.hpp>

#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"
#include "satqkd/numerics.hpp"
#include "satqkd/parallel.hpp"
#include "satqkd/special.hpp"

namespace satqkd {

double nu_add(Detection det) { return det == Detection::Homodyne ? 1.0 : 2.0; }

double ProtocolParams::n() const {
  const double base = N - m;
  return attack == Attack::General ? base / (1 + f_et) : base;
}

double ProtocolParams::epsilon() const { return p_ec * eps_pe + eps_cor + eps_s + eps_h; }

ProtocolParams ProtocolParams::collective() { return {}; }

ProtocolParams ProtocolParams::general() {
  ProtocolParams p;
  p.p_ec = 0.1;
  p.eps_s = p.eps_h = p.eps_pe = p.eps_cor = 1e-43;
  p.mu = 7.49;
  p.phi_thr = 0.73;
  p.tail = Tail::Hoeffding;
  p.attack = Attack::General;
  return p;
}

double mutual_information(double tau, double nbar, double sigma_x2, Detection det) {
  if (det == Detection::Homodyne) return 0.5 * std::log2(1 + tau * sigma_x2 / (2 * nbar + 1));
  return std::log2(1 + tau * sigma_x2 / (2 * nbar + 2));
}

double mutual_information_equivalent(double tau, double nbar, double sigma_x2, Detection det) {
  const double nu = nu_add(det);
  const double Sigma = (nu + 2 * nbar) / tau;
  return nu / 2 * std::log2(1 + sigma_x2 / Sigma);
}

namespace {

// Entropy of a thermal mode with symplectic eigenvalue nu >= 1.
double g_nu(double nu) {
  if (nu < 1 - 1e-9) throw NumericalError("non-physical covariance: symplectic eigenvalue < 1");
  return entropy_h(std::max(0.0, (nu - 1) / 2));
}

}  // namespace

double holevo_bound(double tau, double nbar, double mu, Detection det) {
  if (!(tau > 0 && tau < 1)) throw DomainError("holevo_bound: tau outside (0, 1)");
  if (!(mu > 1)) throw DomainError("holevo_bound: need mu > 1");
  const double omega = 2 * nbar / (1 - tau) + 1;
  const double a = mu;
  const double b = tau * mu + (1 - tau) * omega;
  const double c2 = tau * (mu * mu - 1);
  const double D = a * a + b * b - 2 * c2;
  const double dt = a * b - c2;
  const double disc = std::sqrt(std::max(0.0, D * D - 4 * dt * dt));
  const double nu_p = std::sqrt((D + disc) / 2);
  // nu_+ nu_- = det avoids the cancellation in (D - disc)
  const double nu_m = dt / nu_p;
  const double nu_c =
      det == Detection::Heterodyne ? a - c2 / (b + 1) : std::sqrt(a * (a - c2 / b));
  return g_nu(nu_p) + g_nu(nu_m) - g_nu(nu_c);
}

double asymptotic_rate(double tau, double nbar, const ProtocolParams& p) {
  return p.beta * mutual_information(tau, nbar, p.sigma_x2(), p.detection) -
         holevo_bound(tau, nbar, p.mu, p.detection);
}

double pe_confidence(double eps_pe, Tail tail) {
  if (!(eps_pe > 0 && eps_pe < 1)) throw DomainError("pe_confidence: eps_pe outside (0, 1)");
  if (tail == Tail::Hoeffding) return std::sqrt(2 * std::log(1 / eps_pe));
  // one-sided Gaussian tail: P(Z > w) = eps_pe
  return std::sqrt(2.0) * boost::math::erfc_inv(2 * eps_pe);
}

double worst_case_nbar(double nbar, double m, double nu, double eps_pe, Tail tail) {
  if (!(m >= 1)) throw DomainError("worst_case_nbar: need m >= 1");
  return nbar + pe_confidence(eps_pe, tail) * (2 * nbar + nu) / std::sqrt(2 * nu * m);
}

double worst_case_nbar(double nbar, const ProtocolParams& p) {
  return worst_case_nbar(nbar, p.m, nu_add(p.detection), p.eps_pe, p.tail);
}

double delta_aep(const ProtocolParams& p) {
  const double e4 = std::pow(p.eps_s, 4);
  return 4 * std::log2(2 * std::sqrt(p.d) + 1) * std::sqrt(std::log2(18 / (p.p_ec * p.p_ec * e4)));
}

double theta_term(const ProtocolParams& p) {
  return std::log2(p.p_ec * (1 - p.eps_s * p.eps_s / 3)) + 2 * std::log2(std::sqrt(2.0) * p.eps_h);
}

namespace {

// Energy-test bookkeeping for n key-generation pulses.
struct EnergyTest {
  double K;
  double penalty;  // 2 ceil(log2 binom(K + 4, 4))
};

EnergyTest energy_test(double n, const ProtocolParams& p) {
  const double L = std::log(8 / p.epsilon());
  const double num = 1 + 2 * std::sqrt(L / (2 * n)) + L / n;
  const double den = 1 - 2 * std::sqrt(L / (2 * p.f_et * n));
  if (!(den > 0)) throw DomainError("energy test: block too small for the epsilon budget");
  const double nT = p.sigma_x2() / 2;
  const double K = std::max(1.0, 2 * n * nT * num / den);
  const double log2_binom =
      (std::lgamma(K + 5) - std::lgamma(5.0) - std::lgamma(K + 1)) / std::numbers::ln2;
  return {K, 2 * std::ceil(log2_binom - 1e-9)};
}

RateResult finite_size(double tau, double nbar_prime, double n_eff, const ProtocolParams& p) {
  RateResult r;
  r.n_eff = n_eff;
  if (!(n_eff > 0)) {
    r.no_postselection = true;
    return r;
  }
  double theta = theta_term(p);
  if (p.attack == Attack::General) {
    if (p.detection != Detection::Heterodyne)
      throw DomainError("general-attack rate is only defined for heterodyne detection");
    const EnergyTest et = energy_test(n_eff, p);
    r.K_n = et.K;
    r.eps_prime = std::pow(et.K, 4) * p.epsilon() / 50;
    theta -= et.penalty;
  }
  const double Rm = asymptotic_rate(tau, nbar_prime, p);
  double raw = n_eff * p.p_ec / p.N * (Rm - delta_aep(p) / std::sqrt(n_eff) + theta / n_eff);
  if (p.llo) raw *= 0.5;
  r.rate = clamp0(raw);
  return r;
}

}  // namespace

RateResult composable_rate(double tau, double nbar_prime, const ProtocolParams& p) {
  ProtocolParams q = p;
  q.attack = Attack::Collective;
  if (!(q.n() > 0)) throw DomainError("composable_rate: need N > m");
  return finite_size(tau, nbar_prime, q.n(), q);
}

RateResult general_attack_rate(double tau, double nbar_prime, const ProtocolParams& p) {
  ProtocolParams q = p;
  q.attack = Attack::General;
  if (!(q.f_et > 0)) throw DomainError("general_attack_rate: need f_et > 0");
  return finite_size(tau, nbar_prime, q.n(), q);
}

RateResult postselected_rate(const FadingModel& m, double nbar_prime, const ProtocolParams& p) {
  if (!(p.phi_thr > 0 && p.phi_thr < 1)) throw DomainError("threshold fraction outside (0, 1)");
  const double eta_th = p.phi_thr * m.eta;
  const double p_th = p_threshold(eta_th, m);
  double nbar = nbar_prime;
  if (p.llo) nbar += llo_noise(p.sigma_x2(), p.clock_hz, p.linewidth, eta_th).nbar_LLO;
  RateResult r = finite_size(eta_th, nbar, p.n() * p_th, p);
  r.p_th = p_th;
  return r;
}

LloNoise llo_noise(double sigma_x2, double clock_hz, double linewidth, double tau) {
  if (!(clock_hz > 0)) throw DomainError("llo_noise: clock must be positive");
  const double eps = 2 * kPi * sigma_x2 * linewidth / clock_hz;
  return {eps, tau * eps / 2};
}

Optimum optimize_protocol(const std::function<double(double, double)>& rate_fn,
                          std::pair<double, double> mu_range, std::pair<double, double> phi_range,
                          unsigned jobs, int grid) {
  auto [mu_lo, mu_hi] = mu_range;
  auto [phi_lo, phi_hi] = phi_range;
  if (!(mu_lo > 1 && mu_hi <= 100 && mu_lo <= mu_hi)) throw DomainError("mu range must lie in (1, 100]");
  if (!(phi_lo > 0 && phi_hi < 1 && phi_lo <= phi_hi)) throw DomainError("phi range must lie in (0, 1)");
  const int gm = mu_lo == mu_hi ? 1 : grid;
  const int gp = phi_lo == phi_hi ? 1 : grid;
  auto node = [](double lo, double hi, int n, int i) {
    return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  };
  const auto values = parallel_map<double>(gm * gp, jobs, [&](std::size_t k) {
    const int i = static_cast<int>(k) / gp;
    const int j = static_cast<int>(k) % gp;
    return rate_fn(node(mu_lo, mu_hi, gm, i), node(phi_lo, phi_hi, gp, j));
  });
  // row-major scan with strict improvement breaks ties toward smaller mu, then smaller phi
  int bi = 0, bj = 0;
  for (int i = 0; i < gm; ++i)
    for (int j = 0; j < gp; ++j)
      if (values[i * gp + j] > values[bi * gp + bj]) {
        bi = i;
        bj = j;
      }
  Optimum best{node(mu_lo, mu_hi, gm, bi), node(phi_lo, phi_hi, gp, bj), values[bi * gp + bj], false};
  if (!(best.rate > 0)) return best;
  best.feasible = true;
  // two rounds of coordinate refinement inside the neighbouring grid cells
  for (int round = 0; round < 2; ++round) {
    if (gm > 1) {
      const double step = (mu_hi - mu_lo) / (gm - 1);
      const double lo = std::max(mu_lo, best.mu - step), hi = std::min(mu_hi, best.mu + step);
      const auto r = num::minimize([&](double x) { return -rate_fn(x, best.phi); }, lo, hi, 24);
      if (-r.f > best.rate) {
        best.mu = r.x;
        best.rate = -r.f;
      }
    }
    if (gp > 1) {
      const double step = (phi_hi - phi_lo) / (gp - 1);
      const double lo = std::max(phi_lo, best.phi - step), hi = std::min(phi_hi, best.phi + step);
      const auto r = num::minimize([&](double x) { return -rate_fn(best.mu, x); }, lo, hi, 24);
      if (-r.f > best.rate) {
        best.phi = r.x;
        best.rate = -r.f;
      }
    }
  }
  return best;
}

EstimationResult simulate_pilots(double tau, double nbar, double m, double n_pilot, Detection det,
                                 std::uint64_t seed) {
  const double nu = nu_add(det);
  const auto points = static_cast<long long>(std::llround(nu * m));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(2 * nbar + nu));
  const double x = std::sqrt(2 * n_pilot);
  const double st = std::sqrt(tau);
  double ratio_sum = 0, sq_sum = 0;
  for (long long i = 0; i < points; ++i) {
    const double z = noise(rng);
    const double y = st * x + z;
    ratio_sum += y / x;
    sq_sum += (y - st * x) * (y - st * x);
  }
  return {ratio_sum / (m * nu), 0.5 * (sq_sum / (m * nu) - nu)};
}

double sqrt_tau_variance(double nbar, double m, double n_pilot, Detection det) {
  const double nu = nu_add(det);
  return (2 * nbar + nu) / (2 * nu * m * n_pilot);
}

}  // namespace satqkd
