#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "xyvort/boundary.hpp"
#include "xyvort/lattice.hpp"
#include "xyvort/vorticity.hpp"

namespace xyvort {

inline constexpr double kDetEpsilon = 1e-24;

enum class DegreeForm { Left, Right, Symmetrized };

struct DegreeOptions {
  DegreeForm form = DegreeForm::Symmetrized;
  double det_epsilon = kDetEpsilon;
  /// Drop points below the determinant guard (counted in degenerate_steps) instead of throwing.
  bool skip_degenerate = false;
};

struct DegreeEstimate {
  double value = 0.0;
  Mat2 accumulator = Mat2::Zero();  // antisymmetrized contour sum for the chosen form
  std::vector<double> increments;   // director-angle advance per step; sums to 2 pi * value
  std::size_t contour_len = 0;
  std::size_t degenerate_steps = 0;
};

/// M / sqrt|det M|. Throws DegeneratePointError (position 0) below the guard.
Mat2 normalize(const Mat2& m, double det_epsilon = kDetEpsilon);

/// Finite-difference estimate of (1/8pi) times the antisymmetric part of the closed contour sum
/// of N^-1 dN over Jacobian-normalized matrices N. The contour is closed cyclically.
DegreeEstimate degree_estimate(std::span<const Mat2> field, const DegreeOptions& options = {});

/// Reduced vorticity matrices along a lattice contour, in contour order.
std::vector<Mat2> field_on_contour(const VorticityField& field, const Contour& contour);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Exact director field with angle d * polar(x) + phi, in reduced-projector form.
std::vector<Mat2> analytic_field(std::span<const Point2> points, int d, double phi);

/// `count` points evenly spaced counterclockwise on a circle about the origin.
std::vector<Point2> circle_points(std::size_t count, double radius = 1.0);

/// |estimate - d| of the analytic oracle on circles with each point count.
std::vector<std::pair<std::size_t, double>> convergence_study(int d,
                                                              const std::vector<std::size_t>& counts,
                                                              DegreeForm form = DegreeForm::Symmetrized);

}  // namespace xyvort
