#include "xyvort/degree.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "xyvort/error.hpp"

namespace xyvort {

Mat2 normalize(const Mat2& m, double det_epsilon) {
  const double det = m.determinant();
  if (!(std::abs(det) > det_epsilon)) throw DegeneratePointError(0, det);
  return m / std::sqrt(std::abs(det));
}

DegreeEstimate degree_estimate(std::span<const Mat2> field, const DegreeOptions& options) {
  DegreeEstimate est;
  est.contour_len = field.size();

  std::vector<Mat2> normalized;
  normalized.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double det = field[i].determinant();
    if (!(std::abs(det) > options.det_epsilon)) {
      if (!options.skip_degenerate) throw DegeneratePointError(i, det);
      ++est.degenerate_steps;
      continue;
    }
    normalized.push_back(field[i] / std::sqrt(std::abs(det)));
  }
  if (normalized.size() < 2) {
    if (field.empty() || options.skip_degenerate) return est;
    throw ValidationError("closed contour needs at least two points");
  }

  const std::size_t len = normalized.size();
  est.increments.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    const Mat2& cur = normalized[i];
    const Mat2& next = normalized[(i + 1) % len];
    const Mat2 inv = cur.inverse();
    const Mat2 diff = next - cur;
    Mat2 step;
    switch (options.form) {
      case DegreeForm::Left:
        step = inv * diff;
        break;
      case DegreeForm::Right:
        step = -(diff * inv);
        break;
      case DegreeForm::Symmetrized:
        step = 0.5 * (inv * diff - diff * inv);
        break;
    }
    est.accumulator += step;
    est.increments.push_back(0.25 * (step(0, 1) - step(1, 0)));
  }
  est.value = (est.accumulator(0, 1) - est.accumulator(1, 0)) / (8.0 * M_PI);
  return est;
}

std::vector<Mat2> field_on_contour(const VorticityField& field, const Contour& contour) {
  std::vector<Mat2> out;
  out.reserve(contour.size());
  for (std::size_t idx : contour.sites) out.push_back(field.sites.at(idx).reduced);
  return out;
}

std::vector<Mat2> analytic_field(std::span<const Point2> points, int d, double phi) {
  std::vector<Mat2> out;
  out.reserve(points.size());
  for (const Point2& p : points) {
    if (p.x == 0.0 && p.y == 0.0) {
      throw ValidationError("analytic field is undefined at the origin");
    }
    const double theta = d * std::atan2(p.y, p.x) + phi;
    const double c = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    Mat2 m;
    m << c, s, s, -c;
    out.push_back(m);
  }
  return out;
}

std::vector<Point2> circle_points(std::size_t count, double radius) {
  std::vector<Point2> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(count);
    pts.push_back({radius * std::cos(t), radius * std::sin(t)});
  }
  return pts;
}

std::vector<std::pair<std::size_t, double>> convergence_study(int d,
                                                              const std::vector<std::size_t>& counts,
                                                              DegreeForm form) {
  if (!std::is_sorted(counts.begin(), counts.end())) {
    throw ValidationError("point counts must be ascending");
  }
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t n : counts) {
    const auto pts = circle_points(n);
    const auto field = analytic_field(pts, d, 0.0);
    const auto est = degree_estimate(field, {.form = form});
    out.emplace_back(n, std::abs(est.value - d));
  }
  return out;
}

}  // namespace xyvort
