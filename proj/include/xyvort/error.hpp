#pragma once

#include <stdexcept>
#include <string>

namespace xyvort {

/// Bad input: lattice dimensions, parameters, config values.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: degenerate contour points, eigensolver trouble, overflow guards.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A contour point whose reduced matrix is too close to singular to normalize.
class DegeneratePointError : public NumericalError {
 public:
  DegeneratePointError(std::size_t position, double det)
      : NumericalError("degenerate contour point at position " + std::to_string(position) +
                       " (|det| = " + std::to_string(det) + ")"),
        position_(position),
        det_(det) {}

  std::size_t position() const noexcept { return position_; }
  double det() const noexcept { return det_; }

 private:
  std::size_t position_;
  double det_;
};

/// The analytic degree oracle did not recover the prescribed winding.
class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xyvort
