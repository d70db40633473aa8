#include "satqkd/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "satqkd/beam.hpp"
#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"
#include "satqkd/geometry.hpp"
#include "satqkd/numerics.hpp"
#include "satqkd/parallel.hpp"

namespace satqkd {

using earth::R_E;

namespace {

void check_altitude(double h) {
  if (!(h > 0) || !std::isfinite(h)) throw DomainError("orbit altitude must be positive and finite");
}

double mean_motion(double h) { return std::sqrt(earth::mu_G / std::pow(R_E + h, 3)); }

}  // namespace

double orbital_period(double h) {
  check_altitude(h);
  return 2 * kPi / mean_motion(h);
}

double sun_sync_inclination(double h) {
  check_altitude(h);
  if (h > 5.98e6) throw DomainError("no sun-synchronous orbit above 5980 km");
  const double r_km = (R_E + h) / 1e3;
  return 360 / (2 * kPi) * std::acos(-std::pow(r_km / 12352, 3.5));
}

double orbits_per_day(double h) { return kSecondsPerDay / orbital_period(h); }

double orbital_angle(double t, double h) {
  check_altitude(h);
  return t * mean_motion(h);
}

double zenith_angle_at(double t, double h) {
  const double alpha = orbital_angle(t, h);
  const double R_S = R_E + h;
  // the satellite is above the horizon while R_S cos(alpha) >= R_E
  if (std::abs(alpha) > std::acos(R_E / R_S) + 1e-12)
    throw DomainError("time lies outside the visible pass");
  return std::atan2(R_S * std::sin(alpha), R_S * std::cos(alpha) - R_E);
}

double time_of_zenith(double theta, double h) {
  check_altitude(h);
  if (std::abs(theta) > kPi / 2) throw DomainError("time_of_zenith: |theta| > pi/2");
  const double R_S = R_E + h;
  const double a = std::abs(theta);
  const double z = slant_range(h, a);
  const double cos_alpha = std::min(1.0, (R_E + z * std::cos(a)) / R_S);
  return std::copysign(std::acos(cos_alpha) / mean_motion(h), theta);
}

TransitTimes transit_times(double h) {
  return {2 * time_of_zenith(1.0, h), 2 * time_of_zenith(kPi / 2, h)};
}

SlicePlan slice_orbit(double h, int n_bks, double clock_hz, double N) {
  if (n_bks < 1) throw DomainError("slice_orbit: need at least one block");
  if (!(clock_hz > 0 && N > 0)) throw DomainError("slice_orbit: clock and block size must be positive");
  SlicePlan plan;
  const double t_Q = transit_times(h).t_Q;
  const int capacity = static_cast<int>(std::floor(t_Q * clock_hz / N * (1 + 1e-12)));
  plan.n_bks = n_bks;
  if (capacity < n_bks) {
    plan.reduced = true;
    plan.n_bks = capacity;
    plan.diagnostic = "window fits " + std::to_string(capacity) + " blocks, requested " +
                      std::to_string(n_bks);
  }
  if (plan.n_bks == 0) {
    plan.diagnostic = "window too short for a single block";
    return plan;
  }
  const double dt = t_Q / plan.n_bks;
  std::vector<double> edges(plan.n_bks + 1);
  edges.front() = -1.0;
  edges.back() = 1.0;
  for (int i = 1; i < plan.n_bks; ++i) edges[i] = zenith_angle_at(-t_Q / 2 + i * dt, h);
  // exact mirror symmetry about the zenith
  for (int i = 0; i <= plan.n_bks / 2; ++i) {
    const double s = 0.5 * (edges[plan.n_bks - i] - edges[i]);
    edges[i] = -s;
    edges[plan.n_bks - i] = s;
  }
  for (int i = 0; i < plan.n_bks; ++i) plan.slices.push_back({edges[i], edges[i + 1]});
  return plan;
}

OrbitalRate orbital_rate(const std::function<double(double)>& rate_fn,
                         const std::vector<Slice>& slices, unsigned jobs) {
  if (slices.empty()) throw DomainError("orbital_rate: no slices");
  struct Worst {
    double theta, rate;
  };
  const auto worst = parallel_map<Worst>(slices.size(), jobs, [&](std::size_t i) {
    const Slice& s = slices[i];
    Worst w{s.theta_lo, rate_fn(s.theta_lo)};
    const double hi = rate_fn(s.theta_hi);
    if (hi < w.rate) w = {s.theta_hi, hi};
    // interior check in case the rate is not monotone in |theta|
    if (s.theta_hi > s.theta_lo) {
      const auto m = num::minimize(rate_fn, s.theta_lo, s.theta_hi, 20);
      if (m.f < w.rate) w = {m.x, m.f};
    }
    return w;
  });
  OrbitalRate out;
  double sum = 0;
  for (const auto& w : worst) {
    out.per_slice.push_back(w.rate);
    out.worst_theta.push_back(w.theta);
    sum += std::max(0.0, w.rate);
  }
  out.R_orb = sum / slices.size();
  return out;
}

double station_distance(double delta_t, double h) {
  const double T = orbital_period(h);
  if (delta_t < 0 || delta_t > T / 2) throw DomainError("station_distance: need 0 <= delta_t <= T_S/2");
  return 2 * kPi * delta_t * R_E / T;
}

double fiber_transmissivity(double d, double loss_db_per_km) {
  if (d < 0) throw DomainError("fiber length must be non-negative");
  return std::pow(10.0, -loss_db_per_km * (d / 1e3) / 10);
}

double fiber_rate(double d, double loss_db_per_km) { return repeater_rate(d, 0, loss_db_per_km); }

double repeater_rate(double d, int n_rep, double loss_db_per_km) {
  if (n_rep < 0) throw DomainError("repeater count must be non-negative");
  if (d == 0) return std::numeric_limits<double>::infinity();
  // eta^(1/(n+1)) = 10^(-loss d / (10 (n+1)))
  const double log_eta = -loss_db_per_km * (d / 1e3) / 10 * std::log(10.0) / (n_rep + 1);
  return -std::log1p(-std::exp(log_eta)) / std::log(2.0);
}

double bits_per_day(double rate, double clock_hz, double seconds) { return rate * clock_hz * seconds; }

double crossover_distance(const std::function<double(double)>& rate_fn, double clock_hz,
                          double satellite_bits, double d_max) {
  auto gap = [&](double d) { return std::log(bits_per_day(rate_fn(d), clock_hz)) - std::log(satellite_bits); };
  if (gap(d_max) > 0) return 0;
  double lo = 1.0;
  if (gap(lo) < 0) return 0;
  return num::bisect(gap, lo, d_max, 1e-3);
}

}  // namespace satqkd
