#include "spatialent/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spatialent/criteria.hpp"
#include "spatialent/detection.hpp"
#include "spatialent/errors.hpp"
#include "spatialent/gaussian_state.hpp"
#include "spatialent/hg_modes.hpp"
#include "spatialent/version.hpp"

namespace spatialent::experiment {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kLocalOscillatorRegime = 100.0;
constexpr double kMaxSqueezing = 20.0;
constexpr int kMaxTruncation = 40;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

// ---- parsing helpers -------------------------------------------------------

std::string field_path(std::string_view parent, std::string_view key) {
  return parent.empty() ? "field '" + std::string(key) + "'"
                        : "field '" + std::string(parent) + "." + std::string(key) + "'";
}

void reject_unknown_keys(const json& object, std::string_view parent,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(field_path(parent, key), "unknown key");
    }
  }
}

const json* member(const json& object, std::string_view key) {
  const auto it = object.find(std::string(key));
  return it == object.end() ? nullptr : &*it;
}

double read_number(const json& object, std::string_view parent, std::string_view key, double fallback) {
  const json* v = member(object, key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError(field_path(parent, key), "expected a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) throw ConfigError(field_path(parent, key), "must be finite");
  return x;
}

std::int64_t read_integer(const json& object, std::string_view parent, std::string_view key,
                          std::int64_t fallback) {
  const json* v = member(object, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ConfigError(field_path(parent, key), "expected an integer");
  return v->get<std::int64_t>();
}

std::string read_string(const json& object, std::string_view parent, std::string_view key,
                        std::string fallback) {
  const json* v = member(object, key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError(field_path(parent, key), "expected a string");
  return v->get<std::string>();
}

const json& read_object(const json& v, std::string_view key) {
  if (!v.is_object()) throw ConfigError(field_path("", key), "expected an object");
  return v;
}

Scenario parse_scenario(const std::string& name) {
  if (name == "xp_entanglement") return Scenario::xp_entanglement;
  if (name == "split_entanglement") return Scenario::split_entanglement;
  if (name == "position_readout_demo") return Scenario::position_readout_demo;
  throw ConfigError(field_path("", "scenario"),
                    "unknown scenario '" + name +
                        "' (expected xp_entanglement, split_entanglement or position_readout_demo)");
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

bool uses_homodyne(Scenario s) { return s != Scenario::split_entanglement; }

// ---- physics helpers -------------------------------------------------------

struct BeamSettings {
  double r;
  double angle;
};

BeamSettings beam_settings(const ExperimentConfig& c, int beam) {
  return beam == 0 ? BeamSettings{c.squeezing.r1, c.squeezing.angle1}
                   : BeamSettings{c.squeezing.r2, c.squeezing.angle2};
}

/// Two bright beams, each with its mode-1 slot squeezed relative to its own mean field,
/// with the second beam's phase advanced by pi/2 ahead of the splitter so that both outputs
/// carry N photons.
gaussian::GaussianState squeezed_input_pair(const ExperimentConfig& c,
                                            std::shared_ptr<const modes::ModeBasis> basis) {
  auto state = gaussian::vacuum_state(2, std::move(basis), c.photons);
  for (int beam = 0; beam < 2; ++beam) {
    const auto s = beam_settings(c, beam);
    state = gaussian::set_coherent(state, beam, 0, std::sqrt(c.photons));
    state = gaussian::apply_squeezer(state, beam, 1, s.r, s.angle);
  }
  return state;
}

/// Variance of mode 1 in phase with, and in quadrature to, the beam's mean field.
std::pair<double, double> slot_variances(const gaussian::GaussianState& state, int beam) {
  const double theta = detection::mean_field_phase(state, beam);
  return {gaussian::quadrature_stats(state, beam, 1, theta).variance,
          gaussian::quadrature_stats(state, beam, 1, theta + kHalfPi).variance};
}

std::string pairing_name(criteria::Pairing p) {
  return p == criteria::Pairing::sum_first_diff_second ? "sum_first_diff_second"
                                                       : "diff_first_sum_second";
}

void fill_criterion(PointResult& row, const criteria::InseparabilityResult& r) {
  row.sum_var = r.sum_variance;
  row.diff_var = r.diff_variance;
  row.inseparability = r.value;
  row.entangled = r.entangled;
  row.pairing = pairing_name(r.pairing);
}

std::optional<double> monte_carlo_delta(const ExperimentConfig& c, std::uint64_t point_index,
                                        const std::vector<detection::DetectionRecord>& records) {
  if (!c.monte_carlo) return std::nullopt;
  double worst = 0.0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto stats = detection::monte_carlo_sample(records[k], c.monte_carlo->shots,
                                                     c.monte_carlo->seed, point_index * 64 + k);
    worst = std::max(worst, std::abs(stats.variance - records[k].variance) / records[k].variance);
  }
  return worst;
}

// ---- rendering helpers -----------------------------------------------------

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, result.ptr);
}

std::string format_optional(const std::optional<double>& x) { return x ? format_double(*x) : ""; }

ordered_json optional_json(const std::optional<double>& x) {
  return x ? ordered_json(*x) : ordered_json(nullptr);
}

ExperimentReport run_points(const ExperimentConfig& config, Scenario expected,
                            PointResult (*evaluate)(const ExperimentConfig&, std::uint64_t)) {
  if (config.scenario != expected) {
    throw ConfigError(field_path("", "scenario"),
                      "expected " + std::string(to_string(expected)) + ", got " +
                          std::string(to_string(config.scenario)));
  }
  validate(config);
  ExperimentReport report;
  report.config = config;
  report.provenance.version = std::string(kVersion);
  if (!config.sweep) {
    report.results.push_back(evaluate(config, 0));
    return report;
  }
  const auto values = config.sweep->schedule();
  report.results.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    report.results[i] = evaluate(with_parameter(config, config.sweep->parameter, values[i]), i);
    report.results[i].sweep_value = values[i];
  }
  return report;
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::xp_entanglement: return "xp_entanglement";
    case Scenario::split_entanglement: return "split_entanglement";
    case Scenario::position_readout_demo: return "position_readout_demo";
  }
  return "?";
}

std::string_view to_string(ReportFormat f) { return f == ReportFormat::csv ? "csv" : "json"; }

std::vector<double> Sweep::schedule() const {
  std::vector<double> values(static_cast<std::size_t>(std::max(steps, 0)));
  for (int i = 0; i < steps; ++i) {
    values[i] = steps == 1 ? start : start + (stop - start) * static_cast<double>(i) / (steps - 1);
  }
  return values;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"r",      "r1",         "r2",    "angle1",
                                              "angle2", "photons",    "lo_photons",
                                              "waist",  "displacement", "tilt"};
  return names;
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column),
                      "malformed config document");
  }
  if (!doc.is_object()) throw ConfigError("line 1, column 1", "config must be an object");

  reject_unknown_keys(doc, "",
                      {"scenario", "waist", "photons", "lo_photons", "squeezing", "truncation",
                       "sweep", "monte_carlo", "output", "displacement", "tilt"});

  ExperimentConfig c;
  const json* scenario = member(doc, "scenario");
  if (!scenario) throw ConfigError(field_path("", "scenario"), "missing required key");
  if (!scenario->is_string()) throw ConfigError(field_path("", "scenario"), "expected a string");
  c.scenario = parse_scenario(scenario->get<std::string>());

  c.waist = read_number(doc, "", "waist", c.waist);
  c.photons = read_number(doc, "", "photons", c.photons);
  c.lo_photons = read_number(doc, "", "lo_photons", c.lo_photons);
  c.displacement = read_number(doc, "", "displacement", c.displacement);
  c.tilt = read_number(doc, "", "tilt", c.tilt);
  const auto truncation = read_integer(doc, "", "truncation", c.truncation);
  if (truncation < 2 || truncation > kMaxTruncation) {
    throw ConfigError(field_path("", "truncation"),
                      "must be between 2 and " + std::to_string(kMaxTruncation));
  }
  c.truncation = static_cast<int>(truncation);

  if (const json* s = member(doc, "squeezing")) {
    const json& sq = read_object(*s, "squeezing");
    reject_unknown_keys(sq, "squeezing", {"r1", "r2", "angle1", "angle2"});
    c.squeezing.r1 = read_number(sq, "squeezing", "r1", 0.0);
    c.squeezing.r2 = read_number(sq, "squeezing", "r2", 0.0);
    c.squeezing.angle1 = read_number(sq, "squeezing", "angle1", 0.0);
    c.squeezing.angle2 = read_number(sq, "squeezing", "angle2", 0.0);
  }

  if (const json* s = member(doc, "sweep")) {
    const json& sw = read_object(*s, "sweep");
    reject_unknown_keys(sw, "sweep", {"parameter", "start", "stop", "steps"});
    Sweep sweep;
    sweep.parameter = read_string(sw, "sweep", "parameter", "");
    const auto& names = sweep_parameters();
    if (std::find(names.begin(), names.end(), sweep.parameter) == names.end()) {
      throw ConfigError(field_path("sweep", "parameter"),
                        "unknown sweep parameter '" + sweep.parameter + "'");
    }
    if (!member(sw, "start") || !member(sw, "stop")) {
      throw ConfigError(field_path("sweep", member(sw, "start") ? "stop" : "start"), "missing required key");
    }
    sweep.start = read_number(sw, "sweep", "start", 0.0);
    sweep.stop = read_number(sw, "sweep", "stop", 0.0);
    const auto steps = read_integer(sw, "sweep", "steps", 1);
    if (steps < 1 || steps > 100000) throw ConfigError(field_path("sweep", "steps"), "must be between 1 and 100000");
    sweep.steps = static_cast<int>(steps);
    c.sweep = sweep;
  }

  if (const json* m = member(doc, "monte_carlo")) {
    const json& mc = read_object(*m, "monte_carlo");
    reject_unknown_keys(mc, "monte_carlo", {"shots", "seed"});
    MonteCarlo settings;
    const auto shots = read_integer(mc, "monte_carlo", "shots", static_cast<std::int64_t>(settings.shots));
    if (shots < 2) throw ConfigError(field_path("monte_carlo", "shots"), "must be >= 2");
    settings.shots = static_cast<std::uint64_t>(shots);
    const json* seed = member(mc, "seed");
    if (seed) {
      if (!seed->is_number_unsigned()) {
        throw ConfigError(field_path("monte_carlo", "seed"), "expected a non-negative integer");
      }
      settings.seed = seed->get<std::uint64_t>();
    }
    c.monte_carlo = settings;
  }

  if (const json* o = member(doc, "output")) {
    const json& out = read_object(*o, "output");
    reject_unknown_keys(out, "output", {"path", "format"});
    c.output.path = read_string(out, "output", "path", c.output.path);
    if (c.output.path.empty()) throw ConfigError(field_path("output", "path"), "must not be empty");
    const bool csv_extension = c.output.path.size() > 4 &&
                               c.output.path.compare(c.output.path.size() - 4, 4, ".csv") == 0;
    const std::string format = read_string(out, "output", "format", csv_extension ? "csv" : "json");
    if (format == "csv") {
      c.output.format = ReportFormat::csv;
    } else if (format == "json") {
      c.output.format = ReportFormat::json;
    } else {
      throw ConfigError(field_path("output", "format"), "expected 'csv' or 'json'");
    }
  }

  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

ExperimentConfig with_parameter(const ExperimentConfig& config, std::string_view name, double value) {
  ExperimentConfig c = config;
  if (name == "r") {
    c.squeezing.r1 = value;
    c.squeezing.r2 = value;
  } else if (name == "r1") {
    c.squeezing.r1 = value;
  } else if (name == "r2") {
    c.squeezing.r2 = value;
  } else if (name == "angle1") {
    c.squeezing.angle1 = value;
  } else if (name == "angle2") {
    c.squeezing.angle2 = value;
  } else if (name == "photons") {
    c.photons = value;
  } else if (name == "lo_photons") {
    c.lo_photons = value;
  } else if (name == "waist") {
    c.waist = value;
  } else if (name == "displacement") {
    c.displacement = value;
  } else if (name == "tilt") {
    c.tilt = value;
  } else {
    throw ConfigError(field_path("sweep", "parameter"), "unknown sweep parameter '" + std::string(name) + "'");
  }
  return c;
}

void validate(const ExperimentConfig& config) {
  std::vector<ExperimentConfig> points{config};
  if (config.sweep) {
    if (config.sweep->steps < 1) throw ConfigError(field_path("sweep", "steps"), "must be >= 1");
    points.clear();
    for (double v : config.sweep->schedule()) points.push_back(with_parameter(config, config.sweep->parameter, v));
  }
  for (const auto& c : points) {
    const std::string suffix =
        config.sweep ? " (at " + config.sweep->parameter + " sweep point)" : std::string();
    if (!(c.waist > 0.0)) throw ConfigError(field_path("", "waist"), "must be > 0" + suffix);
    if (!(c.photons > 0.0)) throw ConfigError(field_path("", "photons"), "must be > 0" + suffix);
    if (!(c.lo_photons > 0.0)) throw ConfigError(field_path("", "lo_photons"), "must be > 0" + suffix);
    for (const auto& [key, r] : {std::pair{"r1", c.squeezing.r1}, std::pair{"r2", c.squeezing.r2}}) {
      if (!(r >= 0.0) || r > kMaxSqueezing) {
        throw ConfigError(field_path("squeezing", key), "must lie in [0, 20]" + suffix);
      }
    }
    if (uses_homodyne(c.scenario) && c.lo_photons < kLocalOscillatorRegime * c.photons) {
      throw ConfigError(field_path("", "lo_photons"),
                        "outside the local oscillator regime: need lo_photons >= 100 * photons" + suffix);
    }
  }
  if (config.truncation < 2) throw ConfigError(field_path("", "truncation"), "must be >= 2");
  if (config.monte_carlo && config.monte_carlo->shots < 2) {
    throw ConfigError(field_path("monte_carlo", "shots"), "must be >= 2");
  }
}

ordered_json to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["scenario"] = to_string(c.scenario);
  j["waist"] = c.waist;
  j["photons"] = c.photons;
  j["lo_photons"] = c.lo_photons;
  j["squeezing"] = {{"r1", c.squeezing.r1},
                    {"r2", c.squeezing.r2},
                    {"angle1", c.squeezing.angle1},
                    {"angle2", c.squeezing.angle2}};
  j["truncation"] = c.truncation;
  if (c.sweep) {
    j["sweep"] = {{"parameter", c.sweep->parameter},
                  {"start", c.sweep->start},
                  {"stop", c.sweep->stop},
                  {"steps", c.sweep->steps}};
  } else {
    j["sweep"] = nullptr;
  }
  if (c.monte_carlo) {
    j["monte_carlo"] = {{"shots", c.monte_carlo->shots}, {"seed", c.monte_carlo->seed}};
  } else {
    j["monte_carlo"] = nullptr;
  }
  j["output"] = {{"path", c.output.path}, {"format", to_string(c.output.format)}};
  if (c.scenario == Scenario::position_readout_demo) {
    j["displacement"] = c.displacement;
    j["tilt"] = c.tilt;
  }
  return j;
}

PointResult evaluate_xp_point(const ExperimentConfig& c, std::uint64_t point_index) {
  const auto basis = modes::ModeBasis::hermite_gauss(c.truncation, c.waist);
  const auto inputs = squeezed_input_pair(c, basis);
  const auto [v_a, w_a] = slot_variances(inputs, 0);
  const auto [v_b, w_b] = slot_variances(inputs, 1);
  const auto joint =
      gaussian::apply_beam_splitter_5050(gaussian::apply_beam_phase_shift(inputs, 1, kHalfPi));

  PointResult row;
  fill_criterion(row, criteria::inseparability_xp(joint));
  row.closed_form = criteria::inseparability_xp_closed_form(v_a, v_b);

  const double x_unit = c.waist * c.waist / (4.0 * c.photons);
  const double p_unit = 1.0 / (c.waist * c.waist * c.photons);
  std::vector<detection::DetectionRecord> records;
  for (int beam = 0; beam < 2; ++beam) {
    const auto x = detection::homodyne(joint, beam, detection::LocalOscillator::tem10(basis, 0.0, c.lo_photons));
    const auto p = detection::homodyne(joint, beam, detection::LocalOscillator::tem10(basis, kHalfPi, c.lo_photons));
    row.x_var[beam] = x.normalized_variance * x_unit;
    row.p_var[beam] = p.normalized_variance * p_unit;
    row.heisenberg[beam] = row.x_var[beam] * row.p_var[beam] / criteria::heisenberg_floor(c.photons);
    records.push_back(x);
    records.push_back(p);
  }
  const auto corr = criteria::correlation_signatures(joint);
  row.corr_x = corr.corr_x;
  row.corr_p = corr.corr_p;
  row.mc_delta = monte_carlo_delta(c, point_index, records);
  return row;
}

PointResult evaluate_split_point(const ExperimentConfig& c, std::uint64_t point_index) {
  const auto basis = modes::ModeBasis::flipped(c.truncation, c.waist);
  const auto inputs = squeezed_input_pair(c, basis);
  const double v_c = slot_variances(inputs, 0).first;
  const double v_d = slot_variances(inputs, 1).first;
  const auto joint =
      gaussian::apply_beam_splitter_5050(gaussian::apply_beam_phase_shift(inputs, 1, kHalfPi));

  PointResult row;
  fill_criterion(row, criteria::inseparability_split(joint));
  row.closed_form = criteria::inseparability_split_closed_form(v_c, v_d);

  std::vector<detection::DetectionRecord> records;
  for (int beam = 0; beam < 2; ++beam) {
    const auto plus = detection::split_detect(joint, beam, detection::SplitQuadrature::plus);
    const auto minus = detection::split_detect(joint, beam, detection::SplitQuadrature::minus);
    row.x_var[beam] = plus.normalized_variance;
    row.p_var[beam] = minus.normalized_variance;
    row.heisenberg[beam] = plus.normalized_variance * minus.normalized_variance;
    records.push_back(plus);
    records.push_back(minus);
  }
  row.mc_delta = monte_carlo_delta(c, point_index, records);
  return row;
}

PointResult evaluate_demo_point(const ExperimentConfig& c, std::uint64_t point_index) {
  const auto basis = modes::ModeBasis::hermite_gauss(c.truncation, c.waist);
  const auto field = modes::decompose_shifted_tem00(c.displacement, c.tilt, basis);
  auto state = gaussian::vacuum_state(2, basis, c.photons);
  double v[2];
  double w[2];
  for (int beam = 0; beam < 2; ++beam) {
    const auto s = beam_settings(c, beam);
    // squeeze the empty slot first; the mean field is then written on top of it
    state = gaussian::apply_squeezer(state, beam, 1, s.r, s.angle);
    state = gaussian::set_coherent_field(state, beam, field, c.photons);
    std::tie(v[beam], w[beam]) = slot_variances(state, beam);
  }

  PointResult row;
  std::vector<detection::DetectionRecord> records;
  for (int beam = 0; beam < 2; ++beam) {
    const auto x = detection::position_readout(state, beam);
    const auto p = detection::momentum_readout(state, beam);
    row.x_var[beam] = x.variance;
    row.p_var[beam] = p.variance;
    row.x_mean[beam] = x.mean;
    row.p_mean[beam] = p.mean;
    row.heisenberg[beam] = criteria::normalized_heisenberg_product(state, beam);
    records.push_back(detection::homodyne(state, beam, detection::LocalOscillator::tem10(basis, 0.0, c.lo_photons)));
    records.push_back(detection::homodyne(state, beam, detection::LocalOscillator::tem10(basis, kHalfPi, c.lo_photons)));
  }
  // two independent beams: the product-form value is >= 1 (separable)
  using detection::combine;
  const auto x_sum = combine(detection::position_observable(state, 0), 1.0,
                             detection::position_observable(state, 1), 1.0);
  const auto p_diff = combine(detection::momentum_observable(state, 0), 1.0,
                              detection::momentum_observable(state, 1), -1.0);
  fill_criterion(row, criteria::product_form(x_sum.variance(state), p_diff.variance(state),
                                             criteria::xp_commutator_norm(c.photons),
                                             criteria::Pairing::sum_first_diff_second));
  row.closed_form = 0.25 * (v[0] + v[1]) * (w[0] + w[1]);
  row.mc_delta = monte_carlo_delta(c, point_index, records);
  return row;
}

ExperimentReport run_xp_scenario(const ExperimentConfig& config) {
  return run_points(config, Scenario::xp_entanglement, &evaluate_xp_point);
}

ExperimentReport run_split_scenario(const ExperimentConfig& config) {
  return run_points(config, Scenario::split_entanglement, &evaluate_split_point);
}

ExperimentReport run_position_demo(const ExperimentConfig& config) {
  return run_points(config, Scenario::position_readout_demo, &evaluate_demo_point);
}

ExperimentReport run_scenario(const ExperimentConfig& config) {
  switch (config.scenario) {
    case Scenario::xp_entanglement: return run_xp_scenario(config);
    case Scenario::split_entanglement: return run_split_scenario(config);
    case Scenario::position_readout_demo: return run_position_demo(config);
  }
  throw std::logic_error("unhandled scenario");
}

std::string render_csv(const ExperimentReport& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& row : report.results) {
    out += format_optional(row.sweep_value);
    for (double x : {row.sum_var, row.diff_var, row.inseparability}) {
      out += ',';
      out += format_double(x);
    }
    out += row.entangled ? ",true" : ",false";
    for (double x : {row.x_var[0], row.x_var[1], row.p_var[0], row.p_var[1]}) {
      out += ',';
      out += format_double(x);
    }
    out += ',';
    out += format_optional(row.mc_delta);
    out += '\n';
  }
  return out;
}

std::string render_json(const ExperimentReport& report) {
  ordered_json doc;
  doc["config"] = to_json(report.config);
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.results) {
    ordered_json r;
    r["sweep_param"] = optional_json(row.sweep_value);
    r["sum_var"] = row.sum_var;
    r["diff_var"] = row.diff_var;
    r["inseparability"] = row.inseparability;
    r["entangled"] = row.entangled;
    r["x_var_3"] = row.x_var[0];
    r["x_var_4"] = row.x_var[1];
    r["p_var_3"] = row.p_var[0];
    r["p_var_4"] = row.p_var[1];
    r["mc_delta"] = optional_json(row.mc_delta);
    r["pairing"] = row.pairing;
    r["closed_form"] = row.closed_form;
    r["heisenberg_3"] = row.heisenberg[0];
    r["heisenberg_4"] = row.heisenberg[1];
    if (row.corr_x) r["corr_x"] = *row.corr_x;
    if (row.corr_p) r["corr_p"] = *row.corr_p;
    if (row.x_mean[0]) {
      r["x_mean_3"] = *row.x_mean[0];
      r["x_mean_4"] = optional_json(row.x_mean[1]);
      r["p_mean_3"] = optional_json(row.p_mean[0]);
      r["p_mean_4"] = optional_json(row.p_mean[1]);
    }
    rows.push_back(std::move(r));
  }
  doc["results"] = std::move(rows);
  doc["provenance"] = {{"library", report.provenance.library},
                       {"version", report.provenance.version},
                       {"timestamp", report.provenance.timestamp
                                         ? ordered_json(*report.provenance.timestamp)
                                         : ordered_json(nullptr)}};
  return doc.dump(2) + "\n";
}

std::string render_report(const ExperimentReport& report, ReportFormat format) {
  return format == ReportFormat::csv ? render_csv(report) : render_json(report);
}

std::filesystem::path resolve_output_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SPATIALENT_OUTPUT_DIR"); dir && *dir) {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
  const std::string text = render_report(report, format);
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  const auto target = resolve_output_path(path);
  std::error_code ec;
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path(), ec);
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write report to '" + target.string() + "'");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("failed while writing report to '" + target.string() + "'");
}

}  // namespace spatialent::experiment
