#include "satqkd/scenario.hpp"

#include <cmath>

#include "satqkd/errors.hpp"

namespace satqkd {

Setup setup_preset(int index) {
  switch (index) {
    case 1: return {0.2, 0.4, 1e-9};
    case 2: return {0.4, 1.0, 1e-9};
    case 3: return {0.4, 2.0, 1e-9};
    case 4: return {0.4, 2.0, 1e-13};
    default: throw ConfigError("setup must be 1, 2, 3 or 4");
  }
}

void apply_setup(int index, BeamParams& beam, ReceiverParams& rx) {
  const Setup s = setup_preset(index);
  beam.w0 = s.w0;
  rx.a_R = s.a_R;
  rx.Delta_lambda = s.delta_lambda;
}

FadingModel Scenario::fading(double h, double theta) const {
  return build_fading_model(h, theta, beam, rx, profile, env.direction, ext, pointing_error);
}

double Scenario::nbar() const { return nbar_total(env, rx); }

double Scenario::nbar_prime() const { return worst_case_nbar(nbar(), protocol); }

RateResult Scenario::rate(double h, double theta) const { return rate(fading(h, theta), protocol); }

RateResult Scenario::rate(const FadingModel& m, const ProtocolParams& p) const {
  return postselected_rate(m, worst_case_nbar(nbar(), p), p);
}

Scenario make_scenario(const std::string& noise, int setup, const std::string& profile) {
  Scenario s;
  s.env = NoiseEnvironment::from_scenario(noise);
  apply_setup(setup, s.beam, s.rx);
  if (profile == "auto")
    s.profile = s.env.period == Period::Day ? TurbulenceProfile::hv_day() : TurbulenceProfile::hv_night();
  else
    s.profile = TurbulenceProfile::from_name(profile);
  return s;
}

PassReport build_pass(const Scenario& s, double h, int n_bks, bool optimize, unsigned jobs) {
  PassReport r;
  r.h = h;
  const TransitTimes tt = transit_times(h);
  r.t_Q = tt.t_Q;
  r.t_T = tt.t_T;
  r.period_s = orbital_period(h);
  r.orbits_per_day = orbits_per_day(h);
  r.inclination_deg = h <= 5.98e6 ? sun_sync_inclination(h) : std::nan("");
  r.plan = slice_orbit(h, n_bks, s.protocol.clock_hz, s.protocol.N);

  ProtocolParams p = s.protocol;
  if (optimize) {
    const FadingModel edge = s.fading(h, 1.0);
    const Optimum best = optimize_protocol(
        [&](double mu, double phi) {
          ProtocolParams q = p;
          q.mu = mu;
          q.phi_thr = phi;
          return s.rate(edge, q).rate.raw;
        },
        {1.5, 30.0}, {0.02, 0.98}, jobs);
    if (best.feasible) {
      p.mu = best.mu;
      p.phi_thr = best.phi;
      r.optimized = true;
    }
  }
  r.mu = p.mu;
  r.phi = p.phi_thr;
  if (r.plan.slices.empty()) return r;

  r.rate = orbital_rate([&](double theta) { return s.rate(s.fading(h, theta), p).rate.raw; },
                        r.plan.slices, jobs);
  r.bits_per_pass = r.rate.R_orb * p.clock_hz * r.t_Q;
  r.bits_per_day = r.bits_per_pass;
  return r;
}

}  // namespace satqkd
