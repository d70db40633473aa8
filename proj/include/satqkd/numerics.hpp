#pragma once

#include <functional>
#include <vector>

namespace satqkd::num {

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod over [a, b]; b may be +infinity.
// Throws NumericalError when the error estimate exceeds max(rel_tol*|I|, abs_tol).
double integrate(const Fn& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 0.0);

// Same, split at interior break points (ignored if outside (a, b)).
double integrate_pieces(const Fn& f, double a, double b, const std::vector<double>& breaks,
                        double rel_tol = 1e-10, double abs_tol = 0.0);

// Tanh-sinh rule for integrands with algebraic end-point singularities on finite [a, b].
double integrate_singular(const Fn& f, double a, double b, double rel_tol = 1e-10,
                          double abs_tol = 0.0);

// Bisection for a sign change of f on [lo, hi]; stops when the bracket is below x_tol.
double bisect(const Fn& f, double lo, double hi, double x_tol);

struct Minimum {
  double x;
  double f;
};

// Bracketed 1-D minimisation (golden section with parabolic steps).
Minimum minimize(const Fn& f, double lo, double hi, int bits = 30);

}  // namespace satqkd::num
