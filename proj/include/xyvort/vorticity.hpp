#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "xyvort/boundary.hpp"
#include "xyvort/lattice.hpp"
#include "xyvort/spectral.hpp"

namespace xyvort {

/// Which C^2 factor of the per-site C^2 (x) C^2 block is traced out.
enum class TraceSlot { First, Second, Both };

inline constexpr double kDegenerateMagnitude = 1e-14;

/// Principal direction of a symmetric traceless 2x2 matrix r [[cos 2a, sin 2a], [sin 2a, -cos 2a]].
struct Cross {
  double angle = 0.0;  // a in (-pi/2, pi/2]
  double magnitude = 0.0;
  bool degenerate = false;
};

struct SiteVorticity {
  Mat2 omega = Mat2::Zero();
  Mat2 reduced = Mat2::Zero();
  Cross cross;
};

struct VorticityField {
  double beta = 0.0;
  TraceSlot slot = TraceSlot::Both;
  std::vector<SiteVorticity> sites;

  std::size_t size() const { return sites.size(); }
  double total_trace() const;
  double max_magnitude() const;
};

/// Partial trace of one 4x4 site block down to 2x2.
Mat2 partial_trace(const Mat4& block, TraceSlot slot);

/// Traceless part of a symmetric 2x2 matrix. Throws ValidationError if the input is not symmetric.
Mat2 reduce(const Mat2& omega);

Cross principal_cross(const Mat2& reduced);

VorticityField vorticity_field(const GibbsMatrix& g, const Lattice& lattice,
                               TraceSlot slot = TraceSlot::Both);

/// (ring distance, max magnitude on that ring) for every interior ring, innermost last.
std::vector<std::pair<int, double>> decay_profile(const VorticityField& field,
                                                  const Lattice& lattice);

/// Largest per-site Frobenius deviation between two fields, relative to the per-site norm of the
/// first field's vorticity matrix. Also reports the mean.
struct FieldDeviation {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double max_relative = 0.0;
  double mean_relative = 0.0;
};
FieldDeviation compare_fields(const VorticityField& a, const VorticityField& b);

}  // namespace xyvort
