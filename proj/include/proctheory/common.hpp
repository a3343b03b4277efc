#pragma once

#include <stdexcept>
#include <string>

namespace pt {

// Errors thrown on contract violations (backend mismatches, shape errors,
// unsupported capabilities). Check *failures* are never exceptions; they are
// report entries.
class TheoryError : public std::runtime_error {
 public:
  explicit TheoryError(const std::string& msg) : std::runtime_error(msg) {}
};

class BackendError : public TheoryError {
 public:
  explicit BackendError(const std::string& msg) : TheoryError(msg) {}
};

class ShapeError : public TheoryError {
 public:
  explicit ShapeError(const std::string& msg) : TheoryError(msg) {}
};

// Relative-plus-absolute float comparison used toolkit-wide:
// |a - b| <= tol * (1 + max magnitude).
inline constexpr double kDefaultTol = 1e-9;

inline bool close(double a, double b, double tol = kDefaultTol) {
  double m = std::abs(a) > std::abs(b) ? std::abs(a) : std::abs(b);
  return std::abs(a - b) <= tol * (1.0 + m);
}

}  // namespace pt
