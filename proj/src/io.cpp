#include "xyvort/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "xyvort/error.hpp"

namespace xyvort::io {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_atomic(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ValidationError("cannot write " + tmp.string());
    os << contents;
    if (!os) throw ValidationError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string eigenvalues_csv(const SpectralData& spectral) {
  std::string out = "index,eigenvalue\n";
  for (Eigen::Index i = 0; i < spectral.eigenvalues.size(); ++i) {
    out += std::to_string(i) + "," + fmt17(spectral.eigenvalues(i)) + "\n";
  }
  return out;
}

std::string idos_csv(const std::vector<std::pair<double, std::size_t>>& curve) {
  std::string out = "lambda,count\n";
  for (const auto& [lambda, count] : curve) {
    out += fmt17(lambda) + "," + std::to_string(count) + "\n";
  }
  return out;
}

std::vector<std::pair<double, std::size_t>> parse_idos_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::pair<double, std::size_t>> out;
  if (!std::getline(is, line) || line.rfind("lambda,count", 0) != 0) {
    throw ValidationError("IDOS CSV must start with header 'lambda,count'");
  }
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ValidationError("IDOS CSV line " + std::to_string(lineno) + ": expected two fields");
    }
    try {
      out.emplace_back(std::stod(line.substr(0, comma)),
                       static_cast<std::size_t>(std::stoull(line.substr(comma + 1))));
    } catch (const std::exception&) {
      throw ValidationError("IDOS CSV line " + std::to_string(lineno) + ": bad number");
    }
  }
  return out;
}

std::string region_label(const Site& site) {
  return site.interior() ? "interior" : "boundary:" + std::to_string(site.layer);
}

json field_to_json(const VorticityField& field, const Lattice& lattice) {
  json arr = json::array();
  for (const Site& s : lattice.sites()) {
    const auto& v = field.sites.at(s.index);
    arr.push_back({{"index", s.index},
                   {"coords", {s.col, s.row}},
                   {"region", region_label(s)},
                   {"omega11", v.omega(0, 0)},
                   {"omega12", v.omega(0, 1)},
                   {"omega22", v.omega(1, 1)},
                   {"angle", v.cross.angle},
                   {"magnitude", v.cross.magnitude}});
  }
  return arr;
}

namespace {

std::pair<Lattice, VorticityField> parse_field(const json& doc) {
  const json& arr = doc.is_object() && doc.contains("sites") ? doc.at("sites") : doc;
  if (!arr.is_array() || arr.empty()) {
    throw ValidationError("field document must be a non-empty array of sites");
  }
  int w = 0, h = 0, layers = 0;
  for (const auto& e : arr) {
    w = std::max(w, e.at("coords").at(0).get<int>() + 1);
    h = std::max(h, e.at("coords").at(1).get<int>() + 1);
    const auto region = e.at("region").get<std::string>();
    if (region.rfind("boundary:", 0) == 0) layers = std::max(layers, std::stoi(region.substr(9)));
  }
  Lattice lattice({w - 2 * layers, h - 2 * layers, layers});
  if (arr.size() != lattice.size()) {
    throw ValidationError("field has " + std::to_string(arr.size()) + " sites, expected " +
                          std::to_string(lattice.size()));
  }
  VorticityField field;
  field.sites.resize(lattice.size());
  for (const auto& e : arr) {
    const std::size_t idx =
        lattice.index_of(e.at("coords").at(0).get<int>(), e.at("coords").at(1).get<int>());
    auto& s = field.sites[idx];
    s.omega << e.at("omega11").get<double>(), e.at("omega12").get<double>(),
        e.at("omega12").get<double>(), e.at("omega22").get<double>();
    s.reduced = reduce(s.omega);
    s.cross = principal_cross(s.reduced);
  }
  if (doc.is_object() && doc.contains("beta")) field.beta = doc.at("beta").get<double>();
  return {std::move(lattice), std::move(field)};
}

}  // namespace

std::pair<Lattice, VorticityField> field_from_json(const json& doc) {
  try {
    return parse_field(doc);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed field document: ") + e.what());
  }
}

json degree_report_json(const DegreeReport& r) {
  return {{"d_prescribed", r.d_prescribed},
          {"k", r.k},
          {"beta", r.beta},
          {"contour_m", r.contour_m},
          {"estimate", r.estimate.value},
          {"degenerate_steps", r.estimate.degenerate_steps},
          {"contour_len", r.estimate.contour_len}};
}

}  // namespace xyvort::io
