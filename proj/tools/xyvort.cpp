// Command-line front end: one subcommand per experiment, results under --out.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "xyvort/error.hpp"
#include "xyvort/io.hpp"
#include "xyvort/render.hpp"
#include "xyvort/runner.hpp"

namespace {

using namespace xyvort;
using nlohmann::json;

struct Options {
  std::string config;
  std::string preset;
  std::string out;
  std::string mode;
  std::string form;
  std::string input;
};

ExperimentConfig resolve(const std::string& command, const Options& o) {
  if (!o.config.empty() && !o.preset.empty()) {
    throw ValidationError("--config and --preset are mutually exclusive");
  }
  ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = load_config(o.config);
  } else if (!o.preset.empty()) {
    cfg = parse_config(json{{"preset", o.preset}});
  } else if (command == "table1") {
    cfg = parse_config(json{{"preset", "table1"}});
  } else if (command == "oracle" || command == "render") {
    cfg = parse_config(json::object());
  } else {
    throw ValidationError(command + " needs --config or --preset");
  }
  if (!o.out.empty()) cfg.outputs = o.out;
  if (!o.mode.empty()) cfg.modes = {o.mode == "log" ? LengthMode::LogScale : LengthMode::Equal};
  if (!o.form.empty()) {
    cfg.form = o.form == "left" ? DegreeForm::Left
               : o.form == "right" ? DegreeForm::Right
                                   : DegreeForm::Symmetrized;
  }
  return cfg;
}

json render_file(const ExperimentConfig& cfg, const Options& o) {
  if (o.input.empty()) throw ValidationError("render needs --input");
  const std::filesystem::path in(o.input);
  const std::string text = io::read_file(in);
  json summary = json::array();
  if (in.extension() == ".csv") {
    const auto curve = io::parse_idos_csv(text);
    const auto target = cfg.outputs / (in.stem().string() + ".svg");
    io::write_atomic(target, render_idos(curve, in.stem().string()));
    summary.push_back({{"input", in.string()}, {"output", target.string()}});
    return summary;
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(in.string() + ": " + e.what());
  }
  const auto [lattice, field] = io::field_from_json(doc);
  for (LengthMode mode : cfg.modes) {
    RenderOptions opts;
    opts.length_mode = mode;
    opts.log_floor = cfg.log_floor;
    const auto target = cfg.outputs / (in.stem().string() + "_" + to_string(mode) + ".svg");
    io::write_atomic(target, render_crosses(field, lattice, opts));
    summary.push_back({{"input", in.string()}, {"output", target.string()}});
  }
  return summary;
}

json dispatch(const std::string& command, const ExperimentConfig& cfg, const Options& o) {
  Runner runner(cfg);
  if (command == "spectrum") return runner.spectrum();
  if (command == "vorticity") return runner.vorticity();
  if (command == "degree") return runner.degree();
  if (command == "table1") {
    std::vector<Table1Cell> cells;
    auto summary = runner.table1(&cells);
    std::cout << Runner::table1_text(cells, cfg.ks, cfg.contour_m, cfg.degrees);
    return summary;
  }
  if (command == "antiferro") return runner.antiferro();
  if (command == "oracle") return runner.oracle();
  return render_file(cfg, o);
}

int run(const std::string& command, const Options& o) {
  ExperimentConfig cfg;
  try {
    cfg = resolve(command, o);
  } catch (const ValidationError& e) {
    std::cerr << "xyvort: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "xyvort: " << e.what() << "\n";
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  json summary = json::array();
  std::string error;
  int code = 0;
  try {
    summary = dispatch(command, cfg, o);
  } catch (const ValidationError& e) {
    error = e.what();
    code = 1;
  } catch (const CalibrationError& e) {
    error = e.what();
    code = 3;
  } catch (const std::exception& e) {
    error = e.what();
    code = 2;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_run_record(cfg, command, summary, seconds, error);
  } catch (const std::exception& e) {
    std::cerr << "xyvort: could not write run record: " << e.what() << "\n";
    if (code == 0) code = 2;
  }
  if (code != 0) {
    std::cerr << "xyvort " << command << ": " << error << "\n";
  } else if (command != "table1") {
    std::cout << summary.dump(2) << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic XY block Hamiltonian: spectra, vorticity fields and degrees"};
  app.set_version_flag("--version", std::string(xyvort::kVersion));
  app.require_subcommand(1, 1);

  Options o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum", "eigenvalues and integrated density of states"},
      {"vorticity", "Gibbs-state vorticity fields and cross plots"},
      {"degree", "contour degree estimates"},
      {"table1", "degree table over d, k and contour distance"},
      {"antiferro", "compare fields at +beta and -beta"},
      {"oracle", "calibrate the degree estimator on analytic fields"},
      {"render", "redraw a field JSON or IDOS CSV as SVG"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--preset", o.preset, "named preset");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--mode", o.mode, "cross length mode")->check(CLI::IsMember({"log", "equal"}));
    sub->add_option("--form", o.form, "degree estimator form")
        ->check(CLI::IsMember({"left", "right", "sym"}));
    if (name == "render") sub->add_option("--input", o.input, "field JSON or IDOS CSV")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return run(app.get_subcommands().front()->get_name(), o);
}
