#pragma once

#include <utility>
#include <vector>

namespace satqkd {

// Ground-station to satellite line of sight. theta is signed along a pass;
// the geometric formulas only use |theta|.
struct LinkGeometry {
  double h = 0.0;      // satellite altitude (m)
  double theta = 0.0;  // zenith angle (rad)
  double z = 0.0;      // slant range (m)
  double h0 = 0.0;     // station altitude (m)
};

LinkGeometry make_link(double h, double theta, double h0 = 0.0);

double slant_range(double h, double theta);
double altitude_from_slant(double z, double theta);
double zenith_from(double z, double h);

double slant_range_elevated(double h, double theta, double h0);
double altitude_elevated(double z, double theta, double h0);

// Slant range for orbital radius R_S and orbital angle alpha.
double slant_orbital(double R_S, double alpha);

// Snell refraction through a single slab with index n0.
double apparent_zenith(double theta);
double true_zenith(double theta_app);

// Optical-path elongation as a function of apparent zenith angle.
// Piecewise linear through the nodes, clamped at the ends; identity when empty.
class Elongation {
 public:
  Elongation() = default;
  explicit Elongation(std::vector<std::pair<double, double>> nodes);
  double operator()(double theta_app) const;
  bool identity() const { return nodes_.empty(); }

 private:
  std::vector<std::pair<double, double>> nodes_;
};

double refracted_slant(double h, double theta_app, const Elongation& elongation = {});
double refracted_altitude(double z_ref, double theta_app, const Elongation& elongation = {});

}  // namespace satqkd
