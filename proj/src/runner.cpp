#include "xyvort/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "xyvort/error.hpp"
#include "xyvort/io.hpp"

namespace xyvort {

using nlohmann::json;
namespace fs = std::filesystem;

std::string to_string(TraceSlot slot) {
  switch (slot) {
    case TraceSlot::First: return "first";
    case TraceSlot::Second: return "second";
    case TraceSlot::Both: return "both";
  }
  return "?";
}

std::string to_string(DegreeForm form) {
  switch (form) {
    case DegreeForm::Left: return "left";
    case DegreeForm::Right: return "right";
    case DegreeForm::Symmetrized: return "sym";
  }
  return "?";
}

std::string to_string(LengthMode mode) { return mode == LengthMode::LogScale ? "log" : "equal"; }

std::string to_string(GibbsSign sign) { return sign == GibbsSign::PlusBetaH ? "plus" : "minus"; }

// ---------------------------------------------------------------------------------------------
// Config

namespace {

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError("config " + (path.empty() ? std::string("/") : path) + ": " + what);
}

template <typename T>
T get_as(const json& v, const std::string& path) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    fail(path, "wrong type (" + std::string(v.type_name()) + ")");
  }
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number, got " + std::string(v.type_name()));
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "must be finite");
  return x;
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer, got " + std::string(v.type_name()));
  return v.get<int>();
}

template <typename F>
auto scalar_or_list(const json& v, const std::string& path, F each) {
  using T = decltype(each(v, path));
  std::vector<T> out;
  if (v.is_array()) {
    if (v.empty()) fail(path, "list must not be empty");
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(each(v[i], path + "/" + std::to_string(i)));
  } else {
    out.push_back(each(v, path));
  }
  return out;
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(path + "/" + key, "unknown key");
  }
}

json lattice_json(int w, int h, int b) {
  return {{"inner_width", w}, {"inner_height", h}, {"boundary_layers", b}};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1a", "fig1b", "fig1c", "fig2", "fig2a", "fig3", "fig4", "table1"};
}

json preset_json(const std::string& name) {
  // 23x33 total with two boundary layers has a 19x29 interior; 15x19 total has 11x15.
  if (name == "fig1a") {
    return {{"lattice", lattice_json(19, 29, 0)}, {"k", {1.0}}, {"boundary", "free"}};
  }
  if (name == "fig1b") {
    return {{"lattice", lattice_json(19, 29, 0)}, {"k", {10.0}}, {"boundary", "free"}};
  }
  if (name == "fig1c") {
    return {{"lattice", lattice_json(19, 29, 2)}, {"k", {10.0}}, {"boundary", {{"degree", {1}}}}};
  }
  if (name == "fig2") {
    return {{"lattice", lattice_json(11, 15, 2)},
            {"k", {1.0}},
            {"beta", {1.0}},
            {"boundary", {{"degree", {0, 1}}}}};
  }
  if (name == "fig2a") {
    return {{"lattice", lattice_json(11, 15, 2)},
            {"k", {1.0}},
            {"beta", {1.0}},
            {"boundary", {{"degree", {0}}}}};
  }
  if (name == "fig3") {
    return {{"lattice", lattice_json(11, 15, 2)},
            {"k", {10.0}},
            {"beta", {1.0}},
            {"boundary", {{"degree", {0, 1, 2, 3}}}}};
  }
  if (name == "fig4") {
    return {{"lattice", lattice_json(19, 29, 2)},
            {"k", {10.0}},
            {"beta", {1.0, 8.0, 16.0}},
            {"boundary", {{"degree", {1}}}}};
  }
  if (name == "table1") {
    return {{"lattice", lattice_json(19, 29, 2)},
            {"k", {2.0, 10.0}},
            {"beta", {1.0}},
            {"boundary", {{"degree", {1, 2, 3}}}},
            {"contour_m", {1, 2}}};
  }
  throw ValidationError("unknown preset '" + name + "'");
}

ExperimentConfig parse_config(const json& input) {
  if (!input.is_object()) fail("", "config must be a JSON object");
  json doc = input;
  ExperimentConfig cfg;
  if (doc.contains("preset")) {
    const std::string name = get_as<std::string>(doc["preset"], "/preset");
    json base;
    try {
      base = preset_json(name);
    } catch (const ValidationError&) {
      fail("/preset", "unknown preset '" + name + "'");
    }
    doc.erase("preset");
    base.merge_patch(doc);
    doc = std::move(base);
    cfg.name = name;
  }
  check_keys(doc, "", {"name", "lattice", "n", "k", "beta", "boundary", "contour_m", "gibbs_sign",
                       "trace_slot", "form", "render", "idos_points", "oracle", "outputs"});

  if (doc.contains("name")) cfg.name = get_as<std::string>(doc["name"], "/name");
  if (doc.contains("lattice")) {
    const json& l = doc["lattice"];
    check_keys(l, "/lattice", {"inner_width", "inner_height", "boundary_layers"});
    if (l.contains("inner_width")) cfg.lattice.inner_width = get_int(l["inner_width"], "/lattice/inner_width");
    if (l.contains("inner_height")) cfg.lattice.inner_height = get_int(l["inner_height"], "/lattice/inner_height");
    if (l.contains("boundary_layers")) cfg.lattice.boundary_layers = get_int(l["boundary_layers"], "/lattice/boundary_layers");
  }
  try {
    cfg.lattice.validate();
  } catch (const ValidationError& e) {
    fail("/lattice", e.what());
  }
  if (cfg.lattice.total_width() * cfg.lattice.total_height() > static_cast<int>(kDefaultMaxSites)) {
    fail("/lattice", "more than " + std::to_string(kDefaultMaxSites) + " sites");
  }

  if (doc.contains("n")) cfg.n = get_number(doc["n"], "/n");
  if (!(cfg.n > 0.0)) fail("/n", "must be > 0");
  if (doc.contains("k")) cfg.ks = scalar_or_list(doc["k"], "/k", get_number);
  for (std::size_t i = 0; i < cfg.ks.size(); ++i) {
    if (!(cfg.ks[i] > 0.0)) fail("/k/" + std::to_string(i), "must be > 0");
  }
  if (doc.contains("beta")) cfg.betas = scalar_or_list(doc["beta"], "/beta", get_number);
  for (std::size_t i = 0; i < cfg.betas.size(); ++i) {
    // Gershgorin: each site has at most four neighbours with block norm 1/2, so |lambda| <= 2.
    if (std::abs(cfg.betas[i]) * 2.0 > kMaxGibbsExponent) {
      fail("/beta/" + std::to_string(i), "|beta| too large for the exponent guard");
    }
  }

  if (doc.contains("boundary")) {
    const json& b = doc["boundary"];
    if (b.is_string()) {
      if (b.get<std::string>() != "free") fail("/boundary", "expected \"free\" or an object");
      cfg.free_boundary = true;
    } else {
      check_keys(b, "/boundary", {"degree", "phase"});
      cfg.free_boundary = false;
      if (b.contains("degree")) cfg.degrees = scalar_or_list(b["degree"], "/boundary/degree", get_int);
      if (b.contains("phase")) cfg.phase = get_number(b["phase"], "/boundary/phase");
    }
  } else {
    cfg.free_boundary = cfg.lattice.boundary_layers == 0;
  }
  if (cfg.free_boundary && cfg.lattice.boundary_layers != 0) {
    fail("/boundary", "free boundary needs lattice.boundary_layers = 0");
  }
  if (!cfg.free_boundary && cfg.lattice.boundary_layers == 0) {
    fail("/boundary", "boundary degree given but lattice.boundary_layers = 0");
  }

  if (doc.contains("contour_m")) cfg.contour_m = scalar_or_list(doc["contour_m"], "/contour_m", get_int);
  const int max_m = std::min(cfg.lattice.inner_width, cfg.lattice.inner_height) / 2;
  for (std::size_t i = 0; i < cfg.contour_m.size(); ++i) {
    if (cfg.contour_m[i] < 1 || cfg.contour_m[i] > max_m) {
      if (doc.contains("contour_m") || !cfg.free_boundary) {
        fail("/contour_m/" + std::to_string(i),
             "must lie in [1, " + std::to_string(max_m) + "] for this lattice");
      }
    }
  }

  if (doc.contains("gibbs_sign")) {
    const auto s = get_as<std::string>(doc["gibbs_sign"], "/gibbs_sign");
    if (s == "plus") cfg.gibbs_sign = GibbsSign::PlusBetaH;
    else if (s == "minus") cfg.gibbs_sign = GibbsSign::MinusBetaH;
    else fail("/gibbs_sign", "expected \"plus\" or \"minus\"");
  }
  if (doc.contains("trace_slot")) {
    const auto s = get_as<std::string>(doc["trace_slot"], "/trace_slot");
    if (s == "first") cfg.trace_slot = TraceSlot::First;
    else if (s == "second") cfg.trace_slot = TraceSlot::Second;
    else if (s == "both") cfg.trace_slot = TraceSlot::Both;
    else fail("/trace_slot", "expected \"first\", \"second\" or \"both\"");
  }
  if (doc.contains("form")) {
    const auto s = get_as<std::string>(doc["form"], "/form");
    if (s == "left") cfg.form = DegreeForm::Left;
    else if (s == "right") cfg.form = DegreeForm::Right;
    else if (s == "sym") cfg.form = DegreeForm::Symmetrized;
    else fail("/form", "expected \"left\", \"right\" or \"sym\"");
  }
  if (doc.contains("render")) {
    const json& r = doc["render"];
    check_keys(r, "/render", {"modes", "log_floor"});
    if (r.contains("modes")) {
      cfg.modes = scalar_or_list(r["modes"], "/render/modes", [](const json& v, const std::string& p) {
        const auto s = get_as<std::string>(v, p);
        if (s == "log") return LengthMode::LogScale;
        if (s == "equal") return LengthMode::Equal;
        fail(p, "expected \"log\" or \"equal\"");
      });
    }
    if (r.contains("log_floor")) cfg.log_floor = get_number(r["log_floor"], "/render/log_floor");
    if (!(cfg.log_floor > 0.0)) fail("/render/log_floor", "must be > 0");
  }
  if (doc.contains("idos_points")) {
    const int p = get_int(doc["idos_points"], "/idos_points");
    if (p < 2) fail("/idos_points", "must be >= 2");
    cfg.idos_points = static_cast<std::size_t>(p);
  }
  if (doc.contains("oracle")) {
    const json& o = doc["oracle"];
    check_keys(o, "/oracle", {"degrees", "resolutions"});
    if (o.contains("degrees")) cfg.oracle_degrees = scalar_or_list(o["degrees"], "/oracle/degrees", get_int);
    if (o.contains("resolutions")) {
      cfg.oracle_resolutions.clear();
      for (int r : scalar_or_list(o["resolutions"], "/oracle/resolutions", get_int)) {
        if (r < 3) fail("/oracle/resolutions", "each resolution must be >= 3");
        cfg.oracle_resolutions.push_back(static_cast<std::size_t>(r));
      }
      if (!std::is_sorted(cfg.oracle_resolutions.begin(), cfg.oracle_resolutions.end())) {
        fail("/oracle/resolutions", "must be ascending");
      }
    }
  }
  if (doc.contains("outputs")) cfg.outputs = get_as<std::string>(doc["outputs"], "/outputs");
  else cfg.outputs = fs::path("out") / cfg.name;
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
  const std::string text = io::read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(
                                     std::count(text.begin(), text.begin() + static_cast<long>(byte > 0 ? byte - 1 : 0), '\n'));
    const auto last_nl = text.rfind('\n', byte > 0 ? byte - 1 : 0);
    const std::size_t col = last_nl == std::string::npos || byte == 0 ? byte : byte - 1 - last_nl;
    throw ValidationError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": JSON syntax error: " + e.what());
  }
  try {
    return parse_config(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json ExperimentConfig::to_json() const {
  json modes_json = json::array();
  for (auto m : modes) modes_json.push_back(to_string(m));
  json j = {{"name", name},
            {"lattice", lattice_json(lattice.inner_width, lattice.inner_height, lattice.boundary_layers)},
            {"n", n},
            {"k", ks},
            {"beta", betas},
            {"contour_m", contour_m},
            {"gibbs_sign", to_string(gibbs_sign)},
            {"trace_slot", to_string(trace_slot)},
            {"form", to_string(form)},
            {"render", {{"modes", modes_json}, {"log_floor", log_floor}}},
            {"idos_points", idos_points},
            {"oracle", {{"degrees", oracle_degrees}, {"resolutions", oracle_resolutions}}},
            {"outputs", outputs.string()}};
  if (free_boundary) j["boundary"] = "free";
  else j["boundary"] = {{"degree", degrees}, {"phase", phase}};
  return j;
}

// ---------------------------------------------------------------------------------------------
// Runner

Runner::Runner(ExperimentConfig config) : config_(std::move(config)), lattice_(config_.lattice) {}

std::optional<BoundaryCondition> Runner::boundary(std::optional<int> degree) const {
  if (config_.free_boundary) return std::nullopt;
  return boundary_angles(lattice_, degree.value_or(0), config_.phase);
}

std::string Runner::tag(double k, std::optional<int> degree, std::optional<double> beta) const {
  std::string t = "k" + compact(k);
  t += degree ? "_d" + std::to_string(*degree) : std::string("_free");
  if (beta) t += "_b" + compact(*beta);
  return t;
}

CaseResult Runner::solve(double k, std::optional<int> degree, double beta, GibbsSign sign) const {
  CaseResult r;
  r.k = k;
  r.degree = degree;
  r.beta = beta;
  const auto h = assemble(lattice_, {config_.n, k}, boundary(degree));
  r.spectral = diagonalize(h);
  r.field = vorticity_field(gibbs(r.spectral, beta, sign), lattice_, config_.trace_slot);
  return r;
}

namespace {

std::vector<std::optional<int>> cases(const ExperimentConfig& c) {
  std::vector<std::optional<int>> out;
  if (c.free_boundary) {
    out.emplace_back(std::nullopt);
  } else {
    for (int d : c.degrees) out.emplace_back(d);
  }
  return out;
}

void require_boundary(const ExperimentConfig& c, const std::string& what) {
  if (c.free_boundary) throw ValidationError(what + " needs a lattice with boundary layers");
}

double pairing_defect(const SpectralData& s) {
  double worst = 0.0;
  const Eigen::Index n = s.eigenvalues.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(s.eigenvalues(i) + s.eigenvalues(n - 1 - i)));
  }
  return worst;
}

DegreeEstimate contour_degree(const VorticityField& field, const Lattice& lattice, int m,
                              DegreeForm form) {
  const auto contour = lattice.contour_at(m);
  const auto values = field_on_contour(field, contour);
  auto est = degree_estimate(values, {.form = form, .skip_degenerate = true});
  if (est.contour_len - est.degenerate_steps < 2) {
    throw NumericalError("contour m = " + std::to_string(m) + " has fewer than two usable points");
  }
  return est;
}

}  // namespace

json Runner::spectrum() {
  const fs::path out = config_.outputs;
  json summary = json::array();
  const auto grid = linear_grid(-2.5, 2.5, config_.idos_points);
  for (double k : config_.ks) {
    for (const auto& d : cases(config_)) {
      const auto h = assemble(lattice_, {config_.n, k}, boundary(d));
      const auto sp = diagonalize(h);
      const std::string t = tag(k, d, std::nullopt);
      const auto curve = idos_curve(sp, grid);
      io::write_atomic(out / ("eigenvalues_" + t + ".csv"), io::eigenvalues_csv(sp));
      io::write_atomic(out / ("idos_" + t + ".csv"), io::idos_csv(curve));
      std::string title = "IDOS  n=" + compact(config_.n) + " k=" + compact(k) + "  " +
                          std::to_string(lattice_.width()) + "x" + std::to_string(lattice_.height()) +
                          (d ? "  d=" + std::to_string(*d) : std::string("  free"));
      io::write_atomic(out / ("idos_" + t + ".svg"), render_idos(curve, title));
      summary.push_back({{"case", t},
                         {"k", k},
                         {"degree", d ? json(*d) : json(nullptr)},
                         {"dim", sp.dim()},
                         {"min_eigenvalue", sp.min()},
                         {"max_eigenvalue", sp.max()},
                         {"kernel_count", sp.kernel_count(1e-9)},
                         {"pairing_defect", pairing_defect(sp)},
                         {"residual", sp.residual}});
    }
  }
  return summary;
}

json Runner::vorticity() {
  require_boundary(config_, "vorticity");
  const fs::path out = config_.outputs;
  json summary = json::array();
  for (double k : config_.ks) {
    for (const auto& d : cases(config_)) {
      const auto sp = diagonalize(assemble(lattice_, {config_.n, k}, boundary(d)));
      for (double beta : config_.betas) {
        const auto field =
            vorticity_field(gibbs(sp, beta, config_.gibbs_sign), lattice_, config_.trace_slot);
        const std::string t = tag(k, d, beta);
        io::write_atomic(out / ("vorticity_" + t + ".json"),
                         io::field_to_json(field, lattice_).dump(1) + "\n");
        for (LengthMode mode : config_.modes) {
          RenderOptions opts;
          opts.length_mode = mode;
          opts.log_floor = config_.log_floor;
          io::write_atomic(out / ("crosses_" + t + "_" + to_string(mode) + ".svg"),
                           render_crosses(field, lattice_, opts));
        }
        json profile = json::array();
        for (const auto& [ring, mag] : decay_profile(field, lattice_)) profile.push_back({ring, mag});
        summary.push_back({{"case", t},
                           {"trace_slot", to_string(field.slot)},
                           {"total_trace", field.total_trace()},
                           {"max_magnitude", field.max_magnitude()},
                           {"decay_profile", profile}});
      }
    }
  }
  return summary;
}

json Runner::degree() {
  require_boundary(config_, "degree");
  const fs::path out = config_.outputs;
  json summary = json::array();
  std::string csv = "d,k,beta,m,estimate,degenerate_steps,contour_len\n";
  std::string failures;
  for (double k : config_.ks) {
    for (const auto& d : cases(config_)) {
      const auto sp = diagonalize(assemble(lattice_, {config_.n, k}, boundary(d)));
      for (double beta : config_.betas) {
        const auto field =
            vorticity_field(gibbs(sp, beta, config_.gibbs_sign), lattice_, config_.trace_slot);
        for (int m : config_.contour_m) {
          io::DegreeReport rep{*d, k, beta, m, {}};
          try {
            rep.estimate = contour_degree(field, lattice_, m, config_.form);
          } catch (const NumericalError& e) {
            failures += tag(k, d, beta) + " m=" + std::to_string(m) + ": " + e.what() + "; ";
            continue;
          }
          const json j = io::degree_report_json(rep);
          io::write_atomic(out / ("degree_" + tag(k, d, beta) + "_m" + std::to_string(m) + ".json"),
                           j.dump(2) + "\n");
          char line[160];
          std::snprintf(line, sizeof line, "%d,%g,%g,%d,%.6f,%zu,%zu\n", *d, k, beta, m,
                        rep.estimate.value, rep.estimate.degenerate_steps, rep.estimate.contour_len);
          csv += line;
          summary.push_back(j);
        }
      }
    }
  }
  io::write_atomic(out / "degrees.csv", csv);
  if (!failures.empty()) throw NumericalError("degree estimation failed: " + failures);
  return summary;
}

std::string Runner::table1_text(const std::vector<Table1Cell>& cells, const std::vector<double>& ks,
                                const std::vector<int>& ms, const std::vector<int>& degrees) {
  auto ordinal = [](int m) {
    switch (m) {
      case 1: return std::string("1st");
      case 2: return std::string("2nd");
      case 3: return std::string("3rd");
      default: return std::to_string(m) + "th";
    }
  };
  std::ostringstream os;
  char buf[64];
  os << "Given  ";
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (double k : ks) {
      std::snprintf(buf, sizeof buf, " %14s", ("k=" + compact(k)).c_str());
      os << buf;
    }
  }
  os << "\ndegree ";
  for (int m : ms) {
    for (std::size_t i = 0; i < ks.size(); ++i) {
      std::snprintf(buf, sizeof buf, " %14s", (ordinal(m) + " neighb.").c_str());
      os << buf;
    }
  }
  os << "\n";
  for (int d : degrees) {
    std::snprintf(buf, sizeof buf, "%-7d", d);
    os << buf;
    for (int m : ms) {
      for (double k : ks) {
        auto it = std::find_if(cells.begin(), cells.end(), [&](const Table1Cell& c) {
          return c.degree == d && c.k == k && c.m == m;
        });
        if (it == cells.end() || !it->error.empty()) {
          std::snprintf(buf, sizeof buf, " %14s", "n/a");
        } else if (it->estimate.degenerate_steps > 0) {
          std::snprintf(buf, sizeof buf, " %10.2f (%zu)", it->estimate.value, it->estimate.degenerate_steps);
        } else {
          std::snprintf(buf, sizeof buf, " %14.2f", it->estimate.value);
        }
        os << buf;
      }
    }
    os << "\n";
  }
  os << "(n) = contour points skipped as degenerate\n";
  return os.str();
}

json Runner::table1(std::vector<Table1Cell>* cells_out) {
  require_boundary(config_, "table1");
  const fs::path out = config_.outputs;
  const double beta = config_.betas.front();
  std::vector<Table1Cell> cells;
  for (double k : config_.ks) {
    for (int d : config_.degrees) {
      const auto sp = diagonalize(assemble(lattice_, {config_.n, k}, boundary(d)));
      const auto field =
          vorticity_field(gibbs(sp, beta, config_.gibbs_sign), lattice_, config_.trace_slot);
      for (LengthMode mode : config_.modes) {
        RenderOptions opts;
        opts.length_mode = mode;
        opts.log_floor = config_.log_floor;
        io::write_atomic(out / ("crosses_" + tag(k, d, beta) + "_" + to_string(mode) + ".svg"),
                         render_crosses(field, lattice_, opts));
      }
      for (int m : config_.contour_m) {
        Table1Cell cell{d, k, m, {}, {}};
        try {
          cell.estimate = contour_degree(field, lattice_, m, config_.form);
        } catch (const NumericalError& e) {
          cell.error = e.what();
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Table1Cell& a, const Table1Cell& b) {
    return std::tie(a.degree, a.m, a.k) < std::tie(b.degree, b.m, b.k);
  });

  std::string csv = "d,k,m,estimate,degenerate_steps,contour_len,error\n";
  json summary = json::array();
  std::size_t failed = 0;
  for (const auto& c : cells) {
    char line[200];
    std::snprintf(line, sizeof line, "%d,%g,%d,%.6f,%zu,%zu,%s\n", c.degree, c.k, c.m,
                  c.estimate.value, c.estimate.degenerate_steps, c.estimate.contour_len,
                  c.error.empty() ? "" : "failed");
    csv += line;
    summary.push_back({{"d", c.degree},
                       {"k", c.k},
                       {"m", c.m},
                       {"estimate", c.estimate.value},
                       {"degenerate_steps", c.estimate.degenerate_steps},
                       {"contour_len", c.estimate.contour_len},
                       {"error", c.error}});
    if (!c.error.empty()) ++failed;
  }
  io::write_atomic(out / "table1.csv", csv);
  io::write_atomic(out / "table1.txt",
                   table1_text(cells, config_.ks, config_.contour_m, config_.degrees));
  if (cells_out) *cells_out = cells;
  if (failed > 0) {
    throw NumericalError(std::to_string(failed) + " table cell(s) failed; see table1.csv");
  }
  return summary;
}

json Runner::antiferro(std::vector<AntiferroResult>* results_out) {
  const fs::path out = config_.outputs;
  std::vector<AntiferroResult> results;
  std::string csv = "case,max_abs,mean_abs,max_relative,mean_relative,flip_residual\n";
  json summary = json::array();
  for (double k : config_.ks) {
    for (const auto& d : cases(config_)) {
      const auto h = assemble(lattice_, {config_.n, k}, boundary(d));
      const auto sp = diagonalize(h);
      const Eigen::MatrixXd sum = chessboard_flip(h, lattice_).dense() + h.dense();
      const double flip = sum.size() ? sum.cwiseAbs().maxCoeff() : 0.0;
      for (double beta : config_.betas) {
        const auto plus = vorticity_field(gibbs(sp, beta), lattice_, config_.trace_slot);
        const auto minus = vorticity_field(gibbs(sp, -beta), lattice_, config_.trace_slot);
        AntiferroResult r{k, d, beta, compare_fields(plus, minus), flip};
        char line[240];
        std::snprintf(line, sizeof line, "%s,%.6e,%.6e,%.6e,%.6e,%.6e\n", tag(k, d, beta).c_str(),
                      r.deviation.max_abs, r.deviation.mean_abs, r.deviation.max_relative,
                      r.deviation.mean_relative, r.flip_residual);
        csv += line;
        summary.push_back({{"case", tag(k, d, beta)},
                           {"max_abs", r.deviation.max_abs},
                           {"mean_abs", r.deviation.mean_abs},
                           {"max_relative", r.deviation.max_relative},
                           {"mean_relative", r.deviation.mean_relative},
                           {"flip_residual", r.flip_residual}});
        results.push_back(r);
      }
    }
  }
  io::write_atomic(out / "antiferro.csv", csv);
  if (results_out) *results_out = results;
  if (config_.free_boundary) {
    for (const auto& r : results) {
      if (r.deviation.max_abs > 1e-10) {
        throw NumericalError("free-lattice fields at +beta and -beta differ by " +
                             std::to_string(r.deviation.max_abs));
      }
    }
  }
  return summary;
}

json Runner::oracle(std::vector<OracleRow>* rows_out) {
  const fs::path out = config_.outputs;
  std::vector<OracleRow> rows;
  std::string problems;
  std::string csv = "d,points,estimate,error,reversed\n";
  for (int d : config_.oracle_degrees) {
    double previous = INFINITY;
    for (std::size_t n : config_.oracle_resolutions) {
      const auto pts = circle_points(n);
      const auto field = analytic_field(pts, d, 0.0);
      const auto fwd = degree_estimate(field, {.form = config_.form});
      std::vector<Mat2> backward(field.rbegin(), field.rend());
      const auto rev = degree_estimate(backward, {.form = config_.form});
      OracleRow row{d, n, fwd.value, std::abs(fwd.value - d), rev.value};
      rows.push_back(row);
      char line[160];
      std::snprintf(line, sizeof line, "%d,%zu,%.12f,%.3e,%.12f\n", d, n, row.estimate, row.error,
                    row.reversed);
      csv += line;

      const std::string where = "d=" + std::to_string(d) + " n=" + std::to_string(n);
      if (n >= 200 && !(row.error < 0.02)) problems += where + ": error " + std::to_string(row.error) + "; ";
      if (std::abs(row.reversed + row.estimate) > 1e-9) problems += where + ": reversal not negated; ";
      if (d == 0 && row.estimate != 0.0) problems += where + ": nonzero estimate for d=0; ";
      if (d != 0 && !(row.error < previous)) problems += where + ": error did not decrease; ";
      previous = row.error;
    }
  }
  io::write_atomic(out / "oracle.csv", csv);
  if (rows_out) *rows_out = rows;
  json summary = json::array();
  for (const auto& r : rows) {
    summary.push_back({{"d", r.degree}, {"points", r.points}, {"estimate", r.estimate},
                       {"error", r.error}, {"reversed", r.reversed}});
  }
  if (!problems.empty()) throw CalibrationError("oracle calibration failed: " + problems);
  return summary;
}

void write_run_record(const ExperimentConfig& config, const std::string& command,
                      const json& summary, double seconds, const std::string& error) {
  json record = {{"tool", "xyvort"},
                 {"version", kVersion},
                 {"command", command},
                 {"status", error.empty() ? "ok" : "error"},
                 {"error", error},
                 {"config", config.to_json()},
                 {"summary", summary},
                 {"timing_seconds", seconds}};
  io::write_atomic(config.outputs / ("run_record_" + command + ".json"), record.dump(2) + "\n");
}

}  // namespace xyvort
