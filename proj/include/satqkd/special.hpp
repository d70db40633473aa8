#pragma once

namespace satqkd {

// Exponentially scaled modified Bessel functions e^-x I_0(x), e^-x I_1(x), x >= 0.
double bessel_i0e(double x);
double bessel_i1e(double x);

// 1 - e^-x I_0(x) without cancellation at small x.
double one_minus_i0e(double x);

// Thermal entropy h(x) = (x+1)log2(x+1) - x log2 x, h(0) = 0.
double entropy_h(double x);

}  // namespace satqkd
