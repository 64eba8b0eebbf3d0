#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xyvort/degree.hpp"
#include "xyvort/hamiltonian.hpp"
#include "xyvort/lattice.hpp"
#include "xyvort/render.hpp"
#include "xyvort/spectral.hpp"
#include "xyvort/vorticity.hpp"

namespace xyvort {

inline constexpr const char* kVersion = "0.1.0";

/// Default boundary phase: midway between the symmetric phases 0 and pi/4, both of which leave
/// some boundary sites on the lattice axes exactly decoupled.
inline constexpr double kDefaultPhase = M_PI / 8.0;

struct ExperimentConfig {
  std::string name = "custom";
  LatticeSpec lattice{19, 29, 2};
  double n = 1.0;
  std::vector<double> ks{10.0};
  std::vector<double> betas{1.0};
  bool free_boundary = false;
  std::vector<int> degrees{1};
  double phase = kDefaultPhase;
  std::vector<int> contour_m{1, 2};
  GibbsSign gibbs_sign = GibbsSign::PlusBetaH;
  TraceSlot trace_slot = TraceSlot::Both;
  DegreeForm form = DegreeForm::Symmetrized;
  std::vector<LengthMode> modes{LengthMode::LogScale, LengthMode::Equal};
  double log_floor = 1e-14;
  std::size_t idos_points = 801;
  std::vector<int> oracle_degrees{0, 1, 2, 3};
  std::vector<std::size_t> oracle_resolutions{32, 64, 128, 200, 256};
  std::filesystem::path outputs = "out";

  nlohmann::json to_json() const;
};

/// Names of the built-in presets: fig1a, fig1b, fig1c, fig2, fig3, fig4, table1.
std::vector<std::string> preset_names();
nlohmann::json preset_json(const std::string& name);

/// Parse and fully validate a config document. A "preset" key selects a base document that
/// the remaining keys patch. Errors name the offending JSON path.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Parse a config file; JSON syntax errors report line and column.
ExperimentConfig load_config(const std::filesystem::path& path);

/// One solved (k, d, beta) case.
struct CaseResult {
  double k = 0.0;
  std::optional<int> degree;
  double beta = 0.0;
  SpectralData spectral;
  std::optional<VorticityField> field;
};

struct Table1Cell {
  int degree = 0;
  double k = 0.0;
  int m = 0;
  DegreeEstimate estimate;
  std::string error;  // nonempty when the cell failed
};

struct AntiferroResult {
  double k = 0.0;
  std::optional<int> degree;
  double beta = 0.0;
  FieldDeviation deviation;
  double flip_residual = 0.0;  // |U^T H U + H|_max
};

struct OracleRow {
  int degree = 0;
  std::size_t points = 0;
  double estimate = 0.0;
  double error = 0.0;
  double reversed = 0.0;
};

/// Pipeline entry points. Each writes its files under config.outputs and returns the numbers
/// it wrote; the command wrappers in the CLI add the run record.
class Runner {
 public:
  explicit Runner(ExperimentConfig config);

  const ExperimentConfig& config() const { return config_; }
  const Lattice& lattice() const { return lattice_; }

  nlohmann::json spectrum();
  nlohmann::json vorticity();
  nlohmann::json degree();
  nlohmann::json table1(std::vector<Table1Cell>* cells = nullptr);
  nlohmann::json antiferro(std::vector<AntiferroResult>* results = nullptr);
  nlohmann::json oracle(std::vector<OracleRow>* rows = nullptr);

  /// Diagonalize and, for boundary lattices, extract the field at beta.
  CaseResult solve(double k, std::optional<int> degree, double beta,
                   GibbsSign sign = GibbsSign::PlusBetaH) const;

  static std::string table1_text(const std::vector<Table1Cell>& cells,
                                 const std::vector<double>& ks, const std::vector<int>& ms,
                                 const std::vector<int>& degrees);

 private:
  std::optional<BoundaryCondition> boundary(std::optional<int> degree) const;
  std::string tag(double k, std::optional<int> degree, std::optional<double> beta) const;

  ExperimentConfig config_;
  Lattice lattice_;
};

/// Write <outputs>/run_record.json for a command, successful or not.
void write_run_record(const ExperimentConfig& config, const std::string& command,
                      const nlohmann::json& summary, double seconds, const std::string& error);

std::string to_string(TraceSlot slot);
std::string to_string(DegreeForm form);
std::string to_string(LengthMode mode);
std::string to_string(GibbsSign sign);

}  // namespace xyvort
