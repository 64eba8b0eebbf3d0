#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "xyvort/degree.hpp"
#include "xyvort/lattice.hpp"
#include "xyvort/spectral.hpp"
#include "xyvort/vorticity.hpp"

namespace xyvort::io {

using nlohmann::json;

/// Write via a temporary sibling file and rename, so readers never see partial output.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// "index,eigenvalue" with 17 significant digits.
std::string eigenvalues_csv(const SpectralData& spectral);
/// "lambda,count".
std::string idos_csv(const std::vector<std::pair<double, std::size_t>>& curve);
std::vector<std::pair<double, std::size_t>> parse_idos_csv(const std::string& text);

std::string region_label(const Site& site);

/// Array of {index, coords, region, omega11, omega12, omega22, angle, magnitude}.
json field_to_json(const VorticityField& field, const Lattice& lattice);

/// Rebuilds a lattice and field from a field export. The lattice shape is inferred from the
/// coordinates and region labels.
std::pair<Lattice, VorticityField> field_from_json(const json& doc);

struct DegreeReport {
  int d_prescribed = 0;
  double k = 0.0;
  double beta = 0.0;
  int contour_m = 0;
  DegreeEstimate estimate;
};

json degree_report_json(const DegreeReport& report);

std::string read_file(const std::filesystem::path& path);

}  // namespace xyvort::io
