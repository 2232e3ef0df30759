// spatialent_cli: run the entanglement scenarios from a JSON config.
//
//   spatialent_cli run      <config> [--output PATH] [--format csv|json] [--seed S] [--timestamp]
//   spatialent_cli sweep    <config> [...same flags]
//   spatialent_cli validate <config>
//
// Exit status: 0 success, 1 bad config or usage, 2 runtime failure.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "spatialent/errors.hpp"
#include "spatialent/experiment.hpp"

namespace {

using namespace spatialent;
using namespace spatialent::experiment;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string config_path;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  bool timestamp = false;
};

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string iso8601(std::time_t t) {
  std::tm utc{};
  gmtime_r(&t, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

/// SOURCE_DATE_EPOCH pins the stamp for reproducible builds; otherwise the wall clock is used,
/// and only when asked for, so default reports stay byte-identical.
std::optional<std::string> report_timestamp(bool requested) {
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    char* end = nullptr;
    const long long t = std::strtoll(epoch, &end, 10);
    if (*end != '\0') throw ConfigError("SOURCE_DATE_EPOCH", "expected an integer number of seconds");
    return iso8601(static_cast<std::time_t>(t));
  }
  if (!requested) return std::nullopt;
  return iso8601(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now()));
}

ExperimentConfig apply_overrides(ExperimentConfig config, const Options& opt) {
  if (opt.output) {
    if (opt.output->empty()) throw ConfigError("--output", "must not be empty");
    config.output.path = *opt.output;
    if (!opt.format) {
      if (ends_with(*opt.output, ".csv")) config.output.format = ReportFormat::csv;
      if (ends_with(*opt.output, ".json")) config.output.format = ReportFormat::json;
    }
  }
  if (opt.format) config.output.format = *opt.format == "csv" ? ReportFormat::csv : ReportFormat::json;
  if (opt.seed) {
    if (!config.monte_carlo) config.monte_carlo = MonteCarlo{};
    config.monte_carlo->seed = *opt.seed;
  }
  return config;
}

int execute(const std::string& command, const Options& opt) {
  ExperimentConfig config;
  try {
    config = apply_overrides(load_config(opt.config_path), opt);
    if (command == "run") config.sweep.reset();
    if (command == "sweep" && !config.sweep) {
      throw ConfigError("field 'sweep'", "the sweep command needs a sweep block");
    }
    validate(config);
  } catch (const ConfigError& e) {
    std::cerr << "spatialent_cli: config error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (command == "validate") {
    const std::size_t points = config.sweep ? config.sweep->schedule().size() : 1;
    std::cout << "ok: " << to_string(config.scenario) << ", " << points
              << (points == 1 ? " point\n" : " points\n");
    return kExitOk;
  }

  try {
    ExperimentReport report = run_scenario(config);
    report.provenance.timestamp = report_timestamp(opt.timestamp);
    emit_report(report, config.output.format, config.output.path);
    if (config.output.path != "-") {
      std::cerr << "wrote " << report.results.size() << " row(s) to "
                << resolve_output_path(config.output.path).string() << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "spatialent_cli: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "spatialent_cli: error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial entanglement of bright optical beams: x-p and split-detection scenarios"};
  app.require_subcommand(1);

  Options opt;
  std::string format;
  std::string output;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool report_flags) {
    sub->add_option("config", opt.config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    if (!report_flags) return;
    sub->add_option("-o,--output", output, "report path ('-' for stdout); overrides the config");
    sub->add_option("-f,--format", format, "report format; overrides the config")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", seed, "Monte Carlo seed; enables sampling when the config has none");
    sub->add_flag("--timestamp", opt.timestamp, "stamp the report with the current UTC time");
  };
  auto* run = app.add_subcommand("run", "evaluate a single point (any sweep block is ignored)");
  auto* sweep = app.add_subcommand("sweep", "evaluate every point of the config's sweep");
  auto* check = app.add_subcommand("validate", "parse and validate a config without running it");
  add_common(run, true);
  add_common(sweep, true);
  add_common(check, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  CLI::App* active = app.get_subcommands().front();
  if (active != check) {
    if (active->count("--output")) opt.output = output;
    if (active->count("--format")) opt.format = format;
    if (active->count("--seed")) opt.seed = seed;
  }
  return execute(active->get_name(), opt);
}
