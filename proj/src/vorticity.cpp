#include "xyvort/vorticity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "xyvort/error.hpp"

namespace xyvort {

double VorticityField::total_trace() const {
  double t = 0.0;
  for (const auto& s : sites) t += s.omega.trace();
  return t;
}

double VorticityField::max_magnitude() const {
  double m = 0.0;
  for (const auto& s : sites) m = std::max(m, s.cross.magnitude);
  return m;
}

Mat2 partial_trace(const Mat4& block, TraceSlot slot) {
  if (slot == TraceSlot::Both) {
    return 0.5 * (partial_trace(block, TraceSlot::First) + partial_trace(block, TraceSlot::Second));
  }
  // Basis index 2a + c: a labels the first factor, c the second.
  Mat2 out = Mat2::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        out(a, b) += slot == TraceSlot::Second ? block(2 * a + c, 2 * b + c)
                                               : block(2 * c + a, 2 * c + b);
      }
    }
  }
  return out;
}

Mat2 reduce(const Mat2& omega) {
  const double scale = std::max(1.0, omega.cwiseAbs().maxCoeff());
  if (std::abs(omega(0, 1) - omega(1, 0)) > 1e-12 * scale) {
    throw ValidationError("reduce expects a symmetric 2x2 matrix");
  }
  return omega - 0.5 * omega.trace() * Mat2::Identity();
}

Cross principal_cross(const Mat2& reduced) {
  const double a = 0.5 * (reduced(0, 0) - reduced(1, 1));
  const double b = 0.5 * (reduced(0, 1) + reduced(1, 0));
  Cross c;
  c.magnitude = std::hypot(a, b);
  if (c.magnitude < kDegenerateMagnitude) {
    c.degenerate = true;
    c.angle = 0.0;
    return c;
  }
  double alpha = 0.5 * std::atan2(b, a);  // in [-pi/2, pi/2]
  if (alpha <= -M_PI_2) alpha += M_PI;
  c.angle = alpha;
  return c;
}

VorticityField vorticity_field(const GibbsMatrix& g, const Lattice& lattice, TraceSlot slot) {
  if (g.sites() != lattice.size()) {
    throw ValidationError("Gibbs matrix and lattice sizes differ");
  }
  VorticityField field;
  field.beta = g.beta();
  field.slot = slot;
  field.sites.resize(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    Mat2 omega = partial_trace(g.site_block(i), slot);
    omega(0, 1) = omega(1, 0) = 0.5 * (omega(0, 1) + omega(1, 0));
    auto& s = field.sites[i];
    s.omega = omega;
    s.reduced = reduce(omega);
    s.cross = principal_cross(s.reduced);
  }
  return field;
}

std::vector<std::pair<int, double>> decay_profile(const VorticityField& field,
                                                  const Lattice& lattice) {
  std::map<int, double> rings;
  for (const Site& s : lattice.sites()) {
    if (!s.interior()) continue;
    const int r = lattice.ring(s.index);
    auto& slot = rings[r];
    slot = std::max(slot, field.sites.at(s.index).cross.magnitude);
  }
  return {rings.begin(), rings.end()};
}

FieldDeviation compare_fields(const VorticityField& a, const VorticityField& b) {
  if (a.size() != b.size()) throw ValidationError("fields have different sizes");
  FieldDeviation d;
  if (a.size() == 0) return d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = (a.sites[i].omega - b.sites[i].omega).norm();
    const double norm = a.sites[i].omega.norm();
    const double rel = norm > 0.0 ? diff / norm : diff;
    d.max_abs = std::max(d.max_abs, diff);
    d.max_relative = std::max(d.max_relative, rel);
    d.mean_abs += diff;
    d.mean_relative += rel;
  }
  d.mean_abs /= static_cast<double>(a.size());
  d.mean_relative /= static_cast<double>(a.size());
  return d;
}

}  // namespace xyvort
