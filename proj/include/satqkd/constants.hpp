#pragma once

#include <numbers>

namespace satqkd {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDeg = kPi / 180;

namespace earth {
inline constexpr double R_E = 6.371e6;        // m
inline constexpr double G = 6.674e-11;        // N m^2 kg^-2
inline constexpr double M_earth = 5.972e24;   // kg
inline constexpr double mu_G = G * M_earth;   // m^3 s^-2
inline constexpr double n0 = 1.00027;         // surface refractive index
inline constexpr double atmosphere_top = 100e3;  // m, cut-off for path integrals
}  // namespace earth

namespace phys {
inline constexpr double c = 299792458.0;
inline constexpr double h = 6.62607015e-34;
inline constexpr double k_B = 1.380649e-23;
}  // namespace phys

}  // namespace satqkd
