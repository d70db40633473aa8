#include <doctest.h>

#include <cmath>

#include "satqkd/bounds.hpp"
#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"

using namespace satqkd;
using doctest::Approx;

namespace {

FadingModel model(double h, double theta, Direction dir) {
  return build_fading_model(h, theta, BeamParams{}, ReceiverParams{}, TurbulenceProfile::hv_night(), dir);
}

struct DeltaRow {
  double eta, sigma2, gamma, r0, delta;
};

// Delta = E[plob(tau)] / plob(eta), evaluated at 40 digits through the v = c (ln eta/tau)^(2/gamma) map
const DeltaRow kDelta[] = {
    {0.3, 0.1, 2.2, 0.45, 0.48133701875226446},
    {0.01, 1, 2.0, 1.0, 0.33266363241234633},
    {0.39, 1e-4, 4.3, 0.42, 0.99999861316689337},
    {0.14, 0.41, 2.007, 0.665, 0.34004832709440614},
    {0.9, 0.5, 1.5, 0.8, 0.22318250963469765},
    {1e-4, 100, 2, 9, 0.28825023464028764},
};

}  // namespace

TEST_CASE("thermal-loss channel bound") {
  CHECK(phi_thermal(0.3, 0) == Approx(plob(0.3)).epsilon(1e-14));
  CHECK(phi_thermal(0.3, 0.31) == 0);
  for (double tau : {0.01, 0.3, 0.8}) {
    CHECK(std::abs(phi_thermal(tau, tau * (1 - 1e-9))) < 1e-6);
    CHECK(phi_thermal(tau, 0.5 * tau) > 0);
  }
  CHECK_THROWS_AS(phi_thermal(1.2, 0.1), DomainError);
}

TEST_CASE("wandering correction against the 40-digit oracle") {
  for (const auto& r : kDelta) {
    CAPTURE(r.eta);
    CAPTURE(r.gamma);
    CHECK(delta_factor(r.eta, r.sigma2, r.gamma, r.r0) == Approx(r.delta).epsilon(1e-9));
  }
  CHECK(delta_factor(0.3, 0, 2, 0.4) == 1);
  CHECK(delta_factor(0.3, 1e-9, 2, 0.4) == Approx(1.0).epsilon(1e-7));
  CHECK(bound_B(0.3, 1e-9, 2, 0.4) == Approx(plob(0.3)).epsilon(1e-7));
}

TEST_CASE("closed form equals the fading average of PLOB") {
  for (Direction d : {Direction::Up, Direction::Down})
    for (double h : {150e3, 530e3, 2e6, 36e6})
      for (double th : {0.0, 1.0}) {
        const FadingModel m = model(h, th, d);
        const double direct = fading_expectation([](double t) { return plob(t); }, m);
        CAPTURE(h);
        CHECK(bound_B(m) == Approx(direct).epsilon(1e-8));
        const double D = delta_factor(m.eta, m.sigma2, m.gamma, m.r0);
        CHECK(D > 0);
        CHECK(D <= 1);
      }
}

TEST_CASE("thermal correction") {
  const FadingModel m = model(530e3, 0.5, Direction::Down);
  CHECK(thermal_correction_T(0, m.eta, m.sigma2, m.gamma, m.r0) == 0);
  CHECK(thermal_correction_T(1e-12, m.eta, m.sigma2, m.gamma, m.r0) < 1e-9);
  for (double nbar : {1e-6, 1e-3, 0.01}) {
    const double avg = fading_expectation([&](double t) { return phi_thermal(t, nbar); }, m, {nbar});
    CHECK(avg <= thermal_upper(nbar, m).raw + 1e-12);
  }
  CHECK_THROWS_AS(thermal_correction_T(0.9, 0.1, 0.1, 2, 0.4), DomainError);
}

TEST_CASE("upper and lower thermal bounds") {
  const FadingModel m = model(530e3, 0.0, Direction::Down);
  const double B = bound_B(m);
  CHECK(thermal_upper(0, m).value == Approx(B));
  CHECK(thermal_lower(0, m).integral.value == Approx(B));
  CHECK(thermal_lower(0, m).simple.value == Approx(B));
  const Clamped gone = thermal_upper(2 * m.eta, m);
  CHECK(gone.value == 0);
  CHECK(gone.clamped);
  for (double nbar : {1e-7, 1e-4, 1e-2}) {
    const double up = thermal_upper(nbar, m).value;
    const auto lo = thermal_lower(nbar, m);
    CHECK(lo.integral.value <= up + 1e-12);
    CHECK(lo.simple.value <= lo.integral.value + 1e-12);
    CHECK(up <= B);
  }
  // night-time noise: bounds collapse in LEO
  const double night = nbar_total(NoiseEnvironment::from_scenario("night-down"), ReceiverParams{});
  CHECK(thermal_lower(night, m).integral.value == Approx(thermal_upper(night, m).value).epsilon(1e-3));
}

TEST_CASE("simple maximum range") {
  ReceiverParams rx;
  BeamParams b;
  const auto env = NoiseEnvironment::from_scenario("day-down-clear");
  CHECK(max_range_simple(env, rx, b) ==
        Approx(kPi * b.w0 * rx.a_R / (b.lambda * gamma_R(rx)) / env.H_sky).epsilon(1e-12));
}

TEST_CASE("tight maximum range") {
  ReceiverParams rx;
  BeamParams b;
  auto tight = [&](const char* s, const ReceiverParams& r) {
    const auto env = NoiseEnvironment::from_scenario(s);
    const auto p = env.period == Period::Day ? TurbulenceProfile::hv_day() : TurbulenceProfile::hv_night();
    return max_range_tight(env, r, b, p).z / 1e3;
  };
  CHECK(tight("day-up", rx) == Approx(110).epsilon(0.2));
  CHECK(tight("day-down-cloudy", rx) == Approx(650).epsilon(0.2));
  ReceiverParams fast = rx;
  fast.Delta_t /= 10;
  CHECK(tight("day-up", fast) == Approx(340).epsilon(0.05));
  ReceiverParams loud = rx;
  loud.Delta_lambda = 1e-4;
  const MaxRange broken = max_range_tight(NoiseEnvironment::from_scenario("day-down-cloudy"), loud, b,
                                          TurbulenceProfile::hv_day());
  CHECK(broken.breaking_everywhere);
}

TEST_CASE("slow-detection bound") {
  ReceiverParams rx;
  BeamParams b;
  for (Direction d : {Direction::Up, Direction::Down})
    for (double h : {200e3, 1e6, 1e7}) {
      const FadingModel m = model(h, 0.4, d);
      const double slow = bound_slow(m, rx, m.eta_atm);
      const double w2 = m.w_lt * m.w_lt + m.sigma_P2;
      CHECK(plob(eta_slow(m, rx, m.eta_atm)) <= 2 / std::log(2.0) * rx.a_R * rx.a_R / w2);
      CHECK(slow == plob(eta_slow(m, rx, m.eta_atm)));
      CHECK(eta_slow(m, rx, m.eta_atm) <= m.eta);
      // averaging the fading law itself cannot beat the resolved bound
      const double mean = fading_expectation([](double t) { return t; }, m);
      CHECK(plob(mean) <= bound_B(m));
    }
  const FadingModel still =
      build_fading_model(1e6, 0.4, b, rx, TurbulenceProfile::hv_night(), Direction::Down, {}, 0.0);
  CHECK(bound_slow(still, rx, still.eta_atm) == Approx(bound_V(1e6, 0.4, b, rx)).epsilon(1e-12));
}
