#pragma once

// Config-driven scenario runner: x-p entanglement of TEM00 beams, split-detection spatial
// entanglement, and a single-beam position/momentum readout demo. Reports are CSV or JSON and
// byte-stable for a fixed config and seed.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace spatialent::experiment {

enum class Scenario { xp_entanglement, split_entanglement, position_readout_demo };
enum class ReportFormat { csv, json };

std::string_view to_string(Scenario s);
std::string_view to_string(ReportFormat f);

struct Squeezing {
  double r1 = 0.0;
  double r2 = 0.0;
  double angle1 = 0.0;
  double angle2 = 0.0;
};

struct Sweep {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  /// Evenly spaced values from start to stop inclusive (just `start` for one step).
  std::vector<double> schedule() const;
};

struct MonteCarlo {
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
};

struct Output {
  std::string path = "-";  ///< "-" writes to stdout
  ReportFormat format = ReportFormat::json;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::xp_entanglement;
  double waist = 1.0;
  double photons = 1e6;
  double lo_photons = 1e8;
  Squeezing squeezing;
  int truncation = 8;
  std::optional<Sweep> sweep;
  std::optional<MonteCarlo> monte_carlo;
  Output output;
  // position_readout_demo only
  double displacement = 0.0;
  double tilt = 0.0;
};

/// Names accepted as sweep parameters.
const std::vector<std::string>& sweep_parameters();

/// @brief Parses and validates a JSON config document; missing fields take their defaults.
/// @throws ConfigError naming the line/column (syntax) or field (content) at fault
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// @throws ConfigError for out-of-range values at any sweep point
void validate(const ExperimentConfig& config);

/// Copy of `config` with one sweep parameter set to `value`.
ExperimentConfig with_parameter(const ExperimentConfig& config, std::string_view name, double value);

nlohmann::ordered_json to_json(const ExperimentConfig& config);

/// One row of a report.
struct PointResult {
  std::optional<double> sweep_value;
  double sum_var = 0.0;
  double diff_var = 0.0;
  double inseparability = 0.0;
  bool entangled = false;
  std::string pairing;
  double closed_form = 0.0;  ///< analytic prediction for the same point
  double x_var[2] = {0.0, 0.0};
  double p_var[2] = {0.0, 0.0};
  double heisenberg[2] = {0.0, 0.0};  ///< normalized: 1 at the uncertainty floor
  std::optional<double> corr_x;
  std::optional<double> corr_p;
  std::optional<double> x_mean[2];
  std::optional<double> p_mean[2];
  std::optional<double> mc_delta;  ///< max |sampled - analytic| / analytic over all detectors
};

struct Provenance {
  std::string library = "spatialent";
  std::string version;
  std::optional<std::string> timestamp;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<PointResult> results;
  Provenance provenance;
};

/// Single point of each scenario (sweep ignored). `point_index` selects Monte Carlo streams.
PointResult evaluate_xp_point(const ExperimentConfig& config, std::uint64_t point_index = 0);
PointResult evaluate_split_point(const ExperimentConfig& config, std::uint64_t point_index = 0);
PointResult evaluate_demo_point(const ExperimentConfig& config, std::uint64_t point_index = 0);

/// Runs the sweep if present, otherwise one point. Rows are ordered by sweep index.
ExperimentReport run_xp_scenario(const ExperimentConfig& config);
ExperimentReport run_split_scenario(const ExperimentConfig& config);
ExperimentReport run_position_demo(const ExperimentConfig& config);
ExperimentReport run_scenario(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "sweep_param,sum_var,diff_var,inseparability,entangled,x_var_3,x_var_4,p_var_3,p_var_4,mc_delta";

std::string render_csv(const ExperimentReport& report);
std::string render_json(const ExperimentReport& report);
std::string render_report(const ExperimentReport& report, ReportFormat format);

/// Relative paths are placed under $SPATIALENT_OUTPUT_DIR when that variable is set.
std::filesystem::path resolve_output_path(const std::string& path);

/// Writes the rendered report; "-" means stdout.
/// @throws std::runtime_error if the file cannot be written
void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path);

}  // namespace spatialent::experiment
