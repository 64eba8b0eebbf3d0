#include "xyvort/boundary.hpp"

#include <cmath>
#include <string>

#include "xyvort/error.hpp"

namespace xyvort {

Mat2 projector(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 p;
  p << c * c, c * s, c * s, s * s;
  return p;
}

Mat2 sigma_x_compressed(double theta) { return std::sin(2.0 * theta) * projector(theta); }

Mat2 sigma_y_compressed(double /*theta*/) { return Mat2::Zero(); }

bool is_symmetric(const Mat2& m, double tol) { return std::abs(m(0, 1) - m(1, 0)) <= tol; }

bool is_traceless(const Mat2& m, double tol) { return std::abs(m.trace()) <= tol; }

bool is_projector(const Mat2& m, double tol) {
  return is_symmetric(m, tol) && (m * m - m).cwiseAbs().maxCoeff() <= tol &&
         std::abs(m.trace() - 1.0) <= tol;
}

double BoundaryCondition::angle(std::size_t site) const {
  auto it = angles.find(site);
  if (it == angles.end()) {
    throw ValidationError("no boundary angle for site " + std::to_string(site));
  }
  return it->second;
}

BoundaryCondition boundary_angles(const Lattice& lattice, int degree, double phase) {
  if (lattice.free()) {
    throw ValidationError("boundary angles requested on a free lattice");
  }
  BoundaryCondition bc;
  bc.degree = degree;
  bc.phase = phase;
  for (const Site& s : lattice.sites()) {
    if (!s.interior()) bc.angles.emplace(s.index, degree * s.omega + phase);
  }
  return bc;
}

}  // namespace xyvort
