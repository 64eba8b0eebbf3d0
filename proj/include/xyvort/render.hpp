#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "xyvort/lattice.hpp"
#include "xyvort/vorticity.hpp"

namespace xyvort {

enum class LengthMode { LogScale, Equal };

struct RenderOptions {
  LengthMode length_mode = LengthMode::LogScale;
  double log_floor = 1e-14;  // magnitudes below this are drawn as dots
  double decades = 14.0;     // log10 span mapped onto the full cross length
  double cell = 20.0;        // canvas units between neighbouring sites
  double max_half_length = 0.45;  // fraction of a cell
  double stroke_width = 1.2;
  double dot_radius = 1.0;
  std::string interior_color = "#1f3b73";
  std::string boundary_color = "#b0522a";

  void validate() const;
};

/// Half-length of a cross arm in canvas units.
double cross_half_length(double magnitude, const RenderOptions& options);

/// One cross (two perpendicular segments) per site with magnitude above the floor, a dot
/// otherwise. Row 0 is drawn at the bottom.
std::string render_crosses(const VorticityField& field, const Lattice& lattice,
                           const RenderOptions& options = {});

/// Step plot of an integrated density of states. Throws ValidationError on empty or
/// non-monotone input.
std::string render_idos(const std::vector<std::pair<double, std::size_t>>& curve,
                        const std::string& title = "");

}  // namespace xyvort
