#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "xyvort/error.hpp"
#include "xyvort/io.hpp"
#include "xyvort/runner.hpp"

using namespace xyvort;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("xyvort_runner_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string validation_message(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("presets parse") {
  for (const auto& name : preset_names()) {
    const auto cfg = parse_config(json{{"preset", name}});
    CHECK(cfg.name == name);
  }
  const auto t = parse_config(json{{"preset", "table1"}});
  CHECK(t.lattice.total_width() == 23);
  CHECK(t.lattice.total_height() == 33);
  CHECK(t.ks == std::vector<double>{2.0, 10.0});
  CHECK(t.degrees == std::vector<int>{1, 2, 3});
  CHECK(t.contour_m == std::vector<int>{1, 2});
  CHECK(t.betas == std::vector<double>{1.0});
  CHECK(parse_config(json{{"preset", "fig1a"}}).free_boundary);
  CHECK(parse_config(json{{"preset", "fig4"}}).betas.size() == 3);
}

TEST_CASE("preset keys can be overridden") {
  const auto cfg = parse_config(json::parse(R"({"preset": "fig3", "k": 2, "boundary": {"degree": [1]}})"));
  CHECK(cfg.ks == std::vector<double>{2.0});
  CHECK(cfg.degrees == std::vector<int>{1});
  CHECK(cfg.lattice.inner_width == 11);
}

TEST_CASE("config errors name the offending key") {
  CHECK(validation_message(json::parse(R"({"k": [1, -2]})")).find("/k/1") != std::string::npos);
  CHECK(validation_message(json::parse(R"({"lattice": {"inner_width": "x"}})")).find("/lattice/inner_width") != std::string::npos);
  CHECK(validation_message(json::parse(R"({"bogus": 1})")).find("/bogus") != std::string::npos);
  CHECK(validation_message(json::parse(R"({"form": "diagonal"})")).find("/form") != std::string::npos);
  CHECK(validation_message(json::parse(R"({"beta": 5000})")).find("/beta/0") != std::string::npos);
  CHECK(validation_message(json::parse(R"({"contour_m": [12]})")).find("/contour_m/0") != std::string::npos);
  CHECK(validation_message(json::parse(R"({"preset": "nope"})")).find("/preset") != std::string::npos);
  CHECK(validation_message(json::parse(R"({"boundary": "free"})")).find("/boundary") != std::string::npos);
  CHECK(validation_message(json::parse(R"({"lattice": {"boundary_layers": 0}, "boundary": {"degree": 1}})")).find("/boundary") != std::string::npos);
  CHECK(validation_message(json::parse(R"({"oracle": {"resolutions": [64, 32]}})")).find("/oracle/resolutions") != std::string::npos);
}

TEST_CASE("syntax errors report line and column") {
  const auto path = fs::temp_directory_path() / "xyvort_bad_config.json";
  {
    std::ofstream os(path);
    os << "{\n  \"k\": 1,\n  \"beta\": ,\n}\n";
  }
  try {
    load_config(path);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  fs::remove(path);
}

TEST_CASE("config snapshot round trips") {
  const auto cfg = parse_config(json{{"preset", "fig4"}});
  const auto again = parse_config(cfg.to_json());
  CHECK(again.to_json() == cfg.to_json());
}

TEST_CASE("spectrum command writes its files") {
  auto cfg = parse_config(json::parse(R"({"lattice": {"inner_width": 4, "inner_height": 4, "boundary_layers": 0}, "k": [1, 10]})"));
  cfg.outputs = scratch("spectrum");
  Runner r(cfg);
  const auto summary = r.spectrum();
  REQUIRE(summary.size() == 2);
  CHECK(summary[0]["kernel_count"].get<int>() >= 32);
  CHECK(summary[1]["kernel_count"].get<int>() < summary[0]["kernel_count"].get<int>());
  for (const char* f : {"eigenvalues_k1_free.csv", "idos_k1_free.csv", "idos_k1_free.svg", "eigenvalues_k10_free.csv"}) {
    CHECK(fs::exists(cfg.outputs / f));
  }
  fs::remove_all(cfg.outputs);
}

TEST_CASE("vorticity and degree commands") {
  auto cfg = parse_config(json::parse(R"({"lattice": {"inner_width": 7, "inner_height": 9}, "k": 10, "beta": [1, 4], "boundary": {"degree": [0, 1]}})"));
  cfg.outputs = scratch("vorticity");
  Runner r(cfg);
  r.vorticity();
  std::size_t svgs = 0, jsons = 0;
  for (const auto& e : fs::directory_iterator(cfg.outputs)) {
    svgs += e.path().extension() == ".svg";
    jsons += e.path().extension() == ".json";
  }
  CHECK(svgs == 2 * 2 * 2);
  CHECK(jsons == 2 * 2);
  const auto summary = r.degree();
  CHECK(summary.size() == 2 * 2 * 2);
  CHECK(fs::exists(cfg.outputs / "degrees.csv"));
  const auto rep = json::parse(io::read_file(cfg.outputs / "degree_k10_d1_b1_m1.json"));
  CHECK(rep["d_prescribed"] == 1);
  CHECK(rep["contour_len"] == 28);
  fs::remove_all(cfg.outputs);
}

TEST_CASE("vorticity needs a boundary") {
  auto cfg = parse_config(json::parse(R"({"lattice": {"inner_width": 3, "inner_height": 3, "boundary_layers": 0}})"));
  CHECK_THROWS_AS(Runner(cfg).vorticity(), ValidationError);
}

TEST_CASE("antiferro command") {
  auto cfg = parse_config(json::parse(R"({"lattice": {"inner_width": 4, "inner_height": 4, "boundary_layers": 0}, "k": 10, "beta": [0, 1]})"));
  cfg.outputs = scratch("antiferro");
  std::vector<AntiferroResult> results;
  Runner(cfg).antiferro(&results);
  REQUIRE(results.size() == 2);
  CHECK(results[0].deviation.max_abs == 0.0);
  CHECK(results[1].deviation.max_abs <= 1e-10);
  CHECK(results[1].flip_residual == 0.0);
  fs::remove_all(cfg.outputs);
}

TEST_CASE("oracle command") {
  auto cfg = parse_config(json::object());
  cfg.outputs = scratch("oracle");
  std::vector<OracleRow> rows;
  Runner(cfg).oracle(&rows);
  CHECK(rows.size() == 4 * 5);
  for (const auto& row : rows) {
    if (row.points >= 200) CHECK(row.error < 0.02);
    CHECK(row.reversed == doctest::Approx(-row.estimate));
    if (row.degree == 0) CHECK(row.estimate == 0.0);
  }
  cfg.oracle_resolutions = {8};
  CHECK_NOTHROW(Runner(cfg).oracle());
  cfg.oracle_resolutions = {200};
  cfg.oracle_degrees = {7};
  CHECK_THROWS_AS(Runner(cfg).oracle(), CalibrationError);
  fs::remove_all(cfg.outputs);
}

TEST_CASE("table text layout") {
  std::vector<Table1Cell> cells;
  for (int d : {1, 2})
    for (int m : {1, 2})
      for (double k : {2.0, 10.0}) {
        Table1Cell c{d, k, m, {}, {}};
        c.estimate.value = d + 0.01 * m;
        cells.push_back(c);
      }
  cells.back().error = "broken";
  const auto text = Runner::table1_text(cells, {2.0, 10.0}, {1, 2}, {1, 2});
  CHECK(text.find("1st neighb.") != std::string::npos);
  CHECK(text.find("2nd neighb.") != std::string::npos);
  CHECK(text.find("1.01") != std::string::npos);
  CHECK(text.find("n/a") != std::string::npos);
}

TEST_CASE("run record") {
  auto cfg = parse_config(json::object());
  cfg.outputs = scratch("record");
  write_run_record(cfg, "oracle", json::array(), 0.5, "something broke");
  const auto rec = json::parse(io::read_file(cfg.outputs / "run_record_oracle.json"));
  CHECK(rec["status"] == "error");
  CHECK(rec["error"] == "something broke");
  CHECK(rec["version"] == kVersion);
  CHECK(rec["config"]["name"] == "custom");
  fs::remove_all(cfg.outputs);
}
