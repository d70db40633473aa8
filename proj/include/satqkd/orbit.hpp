#pragma once

#include <functional>
#include <string>
#include <vector>

namespace satqkd {

// Circular orbit at altitude h (m).
double orbital_period(double h);
// Sun-synchronous inclination in degrees; h at most 5980 km.
double sun_sync_inclination(double h);
double orbits_per_day(double h);

// Orbital angle swept in time t from the zenith crossing.
double orbital_angle(double t, double h);
// Signed zenith angle seen from the ground station at time t (t = 0 at zenith).
double zenith_angle_at(double t, double h);
// Inverse of zenith_angle_at.
double time_of_zenith(double theta, double h);

struct TransitTimes {
  double t_Q;  // |theta| <= 1 rad window
  double t_T;  // horizon to horizon
};
TransitTimes transit_times(double h);

struct Slice {
  double theta_lo;
  double theta_hi;
};

struct SlicePlan {
  std::vector<Slice> slices;
  int n_bks = 0;
  bool reduced = false;     // n_bks lowered to fit the window
  std::string diagnostic;
};

// Equal-duration slices of the 1-rad window, one block of N pulses each.
SlicePlan slice_orbit(double h, int n_bks, double clock_hz, double N);

struct OrbitalRate {
  double R_orb = 0;
  std::vector<double> per_slice;  // worst rate in each slice (may be negative)
  std::vector<double> worst_theta;
};

// Average over slices of max(0, min over the slice of rate_fn).
OrbitalRate orbital_rate(const std::function<double(double)>& rate_fn,
                         const std::vector<Slice>& slices, unsigned jobs = 1);

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kFiberLossDbPerKm = 0.2;

// Great-circle separation of two stations crossed delta_t apart.
double station_distance(double delta_t, double h);
double fiber_transmissivity(double d, double loss_db_per_km = kFiberLossDbPerKm);
// Repeaterless PLOB rate over the fiber; +inf at d = 0.
double fiber_rate(double d, double loss_db_per_km = kFiberLossDbPerKm);
// Ideal repeater chain with n_rep repeaters; n_rep = 0 is the bare fiber.
double repeater_rate(double d, int n_rep, double loss_db_per_km = kFiberLossDbPerKm);
double bits_per_day(double rate, double clock_hz, double seconds = kSecondsPerDay);

// Separation at which a ground link delivering `rate_fn(d)` bits/use over a day matches
// `satellite_bits` per day. Returns 0 if the ground link is never worse in [0, d_max].
double crossover_distance(const std::function<double(double)>& rate_fn, double clock_hz,
                          double satellite_bits, double d_max = 2e7);

}  // namespace satqkd
