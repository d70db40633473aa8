#include "satqkd/turbulence.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "satqkd/constants.hpp"
#include "satqkd/errors.hpp"
#include "satqkd/geometry.hpp"
#include "satqkd/numerics.hpp"

namespace satqkd {

namespace {

constexpr double kTol = 1e-8;

// int_0^upper f(s) ds for profiles that are steep or singular at the ground.
// The first kilometre uses s = t^3, which also absorbs the s^-1/3 of Hufnagel-Stanley.
double integrate_from_ground(const num::Fn& f, double upper) {
  if (upper <= 0) return 0.0;
  const double knee = std::min(upper, 1000.0);
  auto g = [&](double t) { return 3 * t * t * f(t * t * t); };
  double sum = num::integrate(g, 0.0, std::cbrt(knee), kTol);
  if (upper > knee) sum += num::integrate_pieces(f, knee, upper, {2e3, 5e3, 1e4, 2e4, 4e4}, kTol);
  return sum;
}

}  // namespace

TurbulenceProfile TurbulenceProfile::hv_night() { return {}; }

TurbulenceProfile TurbulenceProfile::hv_day() {
  TurbulenceProfile p;
  p.A = 2.75e-14;
  p.name = "hv-day";
  return p;
}

TurbulenceProfile TurbulenceProfile::hv_worst_day() {
  TurbulenceProfile p;
  p.A = 2.75e-14;
  p.v = 57.0;
  p.name = "hv-worst-day";
  return p;
}

TurbulenceProfile TurbulenceProfile::hufnagel_stanley() {
  TurbulenceProfile p;
  p.kind = Kind::HufnagelStanley;
  p.name = "hufnagel-stanley";
  return p;
}

TurbulenceProfile TurbulenceProfile::from_name(const std::string& name) {
  if (name == "hv-night") return hv_night();
  if (name == "hv-day") return hv_day();
  if (name == "hv-worst-day") return hv_worst_day();
  if (name == "hufnagel-stanley") return hufnagel_stanley();
  throw ConfigError("unknown turbulence profile '" + name + "'");
}

double cn2(double h, const TurbulenceProfile& p) {
  if (p.kind == TurbulenceProfile::Kind::HufnagelStanley) {
    if (!(h > 0)) throw DomainError("Hufnagel-Stanley profile is singular at h <= 0");
    return p.c1 * std::pow(h, -1.0 / 3.0) * std::exp(-h / p.c2);
  }
  if (h < 0) throw DomainError("cn2: negative altitude");
  const double w = p.v / 27.0;
  const double h5 = h * h * h * h * h;
  return 5.94e-53 * w * w * h5 * h5 * std::exp(-h / 1000.0) + 2.7e-16 * std::exp(-h / 1500.0) +
         p.A * std::exp(-h / 100.0);
}

double cn2_avg(double h, const TurbulenceProfile& p) {
  if (!(h > 0)) throw DomainError("cn2_avg: altitude must be positive");
  return integrate_from_ground([&](double x) { return cn2(x, p); }, h) / h;
}

double I_infty(const TurbulenceProfile& p, double h_max) {
  using Key = std::tuple<int, double, double, double, double, double>;
  static std::mutex mu;
  static std::map<Key, double> cache;
  const Key key{static_cast<int>(p.kind), p.A, p.v, p.c1, p.c2, h_max};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double v = integrate_from_ground([&](double x) { return cn2(x, p); }, h_max);
  std::lock_guard lock(mu);
  cache.emplace(key, v);
  return v;
}

Rytov rytov_variance(double h, double theta, double k, const TurbulenceProfile& p, Direction dir) {
  if (!(h > 0)) throw DomainError("rytov_variance: altitude must be positive");
  const double top = std::min(h, earth::atmosphere_top);
  const double mu = integrate_from_ground(
      [&](double x) { return cn2(x, p) * std::pow(x / h, 5.0 / 6.0); }, top);
  double value = 2.25 * std::pow(k, 7.0 / 6.0) * std::pow(h, 5.0 / 6.0) *
                 std::pow(1.0 / std::cos(theta), 11.0 / 6.0) * mu;
  if (dir == Direction::Up) {
    const double mu_up = integrate_from_ground(
        [&](double x) {
          return cn2(x, p) * std::pow(x / h, 5.0 / 6.0) * std::pow(1.0 - x / h, 5.0 / 6.0);
        },
        top);
    value *= mu_up / mu;
  }
  return {value, value < 1.0};
}

double coherence_length(double z, double theta, double k, const TurbulenceProfile& p,
                        Direction dir) {
  if (!(z > 0)) throw DomainError("coherence_length: slant range must be positive");
  const double h = altitude_from_slant(z, theta);
  const double z_atm = std::min(z, slant_range(std::min(h, earth::atmosphere_top), theta));
  // s is the distance from the ground station along the path
  auto f = [&](double s) {
    const double w = dir == Direction::Up ? 1.0 - s / z : s / z;
    return std::pow(w, 5.0 / 3.0) * cn2(altitude_from_slant(s, theta), p);
  };
  const double I0 = integrate_from_ground(f, z_atm);
  return std::pow(1.46 * k * k * I0, -3.0 / 5.0);
}

double coherence_length_planar(double theta, double k, const TurbulenceProfile& p) {
  return std::pow(1.46 * k * k * I_infty(p) / std::cos(theta), -3.0 / 5.0);
}

double speckle_count(double a_R, double rho0) {
  if (!(rho0 > 0)) throw DomainError("speckle_count: coherence length must be positive");
  return 1.0 + (a_R / rho0) * (a_R / rho0);
}

SpotCoefficients spot_coefficients(double I_inf) {
  const double a = 26.28 * std::pow(I_inf, 6.0 / 5.0);
  const double b = 0.2934 * std::pow(I_inf, -1.0 / 5.0);
  // a b written out so that I_inf = 0 gives c = 0
  return {a, b, 26.28 * 0.2934 * I_inf};
}

double spot_overhead(double theta, const BeamParams& beam, double I_inf) {
  const double sec = 1.0 / std::cos(theta);
  const auto [a, b, c] = spot_coefficients(I_inf);
  (void)b;
  return a * std::pow(beam.lambda, -2.0 / 5.0) * std::pow(sec, 6.0 / 5.0) -
         c * std::pow(beam.w0, -1.0 / 3.0) * sec;
}

SpotSizes spot_sizes(double z, double theta, const BeamParams& beam, const TurbulenceProfile& p,
                     Direction dir) {
  SpotSizes s;
  s.w_d = diffraction_waist(z, beam);
  if (dir == Direction::Down) {
    s.w_st = s.w_lt = s.w_d;
    return s;
  }
  const double I_inf = I_infty(p);
  const double sec = 1.0 / std::cos(theta);
  const auto [a, b, c] = spot_coefficients(I_inf);
  const double rho_p = coherence_length_planar(theta, beam.k(), p);
  s.yura_phi = 0.33 * std::cbrt(rho_p / beam.w0);
  if (s.yura_phi >= 1.0) throw DomainError("Yura condition violated: strong-turbulence regime");
  s.yura_marginal = s.yura_phi > 0.1;
  s.Psi = 1.0 - b * std::pow(beam.w0, -1.0 / 3.0) *
                    std::pow(beam.lambda * beam.lambda * std::cos(theta), 1.0 / 5.0);
  const double lt2 = s.w_d * s.w_d + a * std::pow(beam.lambda, -2.0 / 5.0) * z * z *
                                         std::pow(sec, 6.0 / 5.0);
  s.sigma_TB2 = c * std::pow(beam.w0, -1.0 / 3.0) * z * z * sec;
  s.w_lt = std::sqrt(lt2);
  s.w_st = std::sqrt(lt2 - s.sigma_TB2);
  return s;
}

SpotSizes spot_sizes_from_rho0(double z, double rho0, const BeamParams& beam, PsiForm psi) {
  SpotSizes s;
  s.w_d = diffraction_waist(z, beam);
  s.yura_phi = 0.33 * std::cbrt(rho0 / beam.w0);
  if (s.yura_phi >= 1.0) throw DomainError("Yura condition violated: strong-turbulence regime");
  s.yura_marginal = s.yura_phi > 0.1;
  s.Psi = psi == PsiForm::Exact ? (1 - s.yura_phi) * (1 - s.yura_phi) : 1 - 2 * s.yura_phi;
  const double t = beam.lambda * z / (kPi * rho0);
  const double lt2 = s.w_d * s.w_d + 2 * t * t;
  const double st2 = s.w_d * s.w_d + 2 * t * t * s.Psi;
  s.w_lt = std::sqrt(lt2);
  s.w_st = std::sqrt(st2);
  s.sigma_TB2 = 2 * t * t * (1 - s.Psi);
  return s;
}

}  // namespace satqkd
