#pragma once

namespace satqkd {

// Rate-like value clamped at zero; raw keeps the unclamped number.
struct Clamped {
  double value = 0;
  double raw = 0;
  bool clamped = false;
};

inline Clamped clamp0(double raw) { return {raw > 0 ? raw : 0.0, raw, raw < 0}; }

}  // namespace satqkd
