#pragma once

#include <cstddef>
#include <map>

#include <Eigen/Core>

#include "xyvort/lattice.hpp"

namespace xyvort {

using Mat2 = Eigen::Matrix2d;

/// Rank-one projector onto the line at angle theta.
Mat2 projector(double theta);

/// sigma^x compressed by the projector at theta: sin(2 theta) * projector(theta).
Mat2 sigma_x_compressed(double theta);

/// sigma^y compressed by a real projector vanishes identically.
Mat2 sigma_y_compressed(double theta);

bool is_symmetric(const Mat2& m, double tol = 1e-12);
bool is_traceless(const Mat2& m, double tol = 1e-12);
bool is_projector(const Mat2& m, double tol = 1e-12);

/// Boundary angles theta_j = degree * omega_j + phase on every boundary site.
/// Angles are kept unwrapped.
struct BoundaryCondition {
  int degree = 0;
  double phase = 0.0;
  std::map<std::size_t, double> angles;

  double angle(std::size_t site) const;
};

/// Throws ValidationError on a free lattice.
BoundaryCondition boundary_angles(const Lattice& lattice, int degree, double phase);

}  // namespace xyvort
