#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sdnls/solution.hpp"
#include "sdnls/spectrum.hpp"
#include "sdnls/verification.hpp"

namespace sdnls {

/// Library version embedded in every emitted file.
std::string_view version() noexcept;

enum class OutputFormat { Csv, Json };

struct Tolerances {
  double quadrature = 1e-12;
  double tail = 1e-12;
  double residual_h = 1e-3;
};

struct OutputSpec {
  std::string path;
  OutputFormat format = OutputFormat::Csv;
};

struct ScenarioConfig {
  std::string name = "custom";
  BackgroundParams background;
  NormingFrame frame = NormingFrame::Centered;
  std::vector<EigenvalueEntry> eigenvalues;
  GridSpec grid;
  Tolerances tolerances;
  OutputSpec output;
};

struct PresetInfo {
  std::string name;
  std::string description;
};

/// All preset names (fig1a .. fig7d) with one-line descriptions.
std::vector<PresetInfo> list_presets();

/// Figure preset with default norming constants; a bare figure name means
/// the unshifted variant b.  Throws Error(UnknownPreset).
ScenarioConfig preset(std::string_view name);

/// Default grid centered on the shift midpoint (x0/2, t0/2).
GridSpec default_grid(const BackgroundParams& bg);

/// Parses a JSON configuration.  Missing fields take their defaults; malformed
/// ones throw Error(InvalidConfig) naming the field.
ScenarioConfig parse_config(std::string_view json_text);
ScenarioConfig load_config(const std::string& path);

/// Fully resolved configuration (defaults and norming constants filled in) as JSON.
std::string resolved_config_json(const ScenarioConfig& config, int indent = -1);

/// Validates the spectrum described by the configuration.
DiscreteSpectrum build_spectrum(const ScenarioConfig& config);
SolverOptions solver_options(const ScenarioConfig& config);

/// Formats with 17 significant digits and a '.' decimal separator.
std::string format_double(double v);

struct EvaluationOutput {
  std::vector<SolutionSample> samples;
  int singular_count = 0;
  std::string text;
};

/// Evaluates the configured grid and renders it in the configured format.
EvaluationOutput render_evaluation(const ScenarioConfig& config, unsigned workers);

/// render_evaluation followed by writing the file to config.output.path.
EvaluationOutput run_evaluate(const ScenarioConfig& config, unsigned workers);

/// Sample values read back from a JSON evaluation file.
std::vector<SolutionSample> read_json_samples(std::string_view json_text);

struct VerifyOptions {
  bool inject_fault = false;
  int residual_points = 100;
  unsigned workers = 1;
  double residual_limit = 1e-4;
  double order_tolerance = 0.3;
  double boundary_tol = 1e-6;
};

struct VerifyResult {
  bool pass = true;
  std::string report;
  double seconds = 0.0;
};

/// Identity suite, trace-zero orders, boundary limits and residual survey,
/// aggregated into a JSON report.
VerifyResult run_verify(const ScenarioConfig& config, const VerifyOptions& opts);

/// Worker count from SDNLS_WORKERS, falling back to the hardware concurrency.
unsigned workers_from_env();

}  // namespace sdnls
