#pragma once

#include <stdexcept>
#include <string>

namespace omm {

// Global comparison tolerance for floating-point cost/mass checks.
inline constexpr double kTol = 1e-9;
// Tolerance for claims that should hold to rounding error only.
inline constexpr double kTightTol = 1e-12;

// Bad user-supplied data: malformed instances, invalid metrics, config errors.
// The CLI maps this to exit code 1; everything else unexpected maps to 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace omm
