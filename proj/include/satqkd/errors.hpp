#pragma once

#include <stdexcept>
#include <string>

namespace satqkd {

// Input outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Quadrature or root-finding failed to converge, or a result is non-physical.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user configuration (unknown key, unparsable value, empty grid).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace satqkd
