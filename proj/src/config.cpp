#include "erspin/config.hpp"

#include "erspin/errors.hpp"

#include <algorithm>
#include <iterator>
#include <charconv>
#include <sstream>

namespace erspin {

namespace {

constexpr std::string_view kExperiments[] = {
    "holeburn", "pumping-efficiency", "rabi", "ramsey", "echo", "resonator", "heating-budget"};

constexpr std::string_view kOverrideKeys[] = {
    // ensemble and sampling
    "quadrature", "n_samples", "n_amplitude",
    // spin geometry
    "g_parallel", "g_mw", "static_field_t", "rabi_hz", "splitting_hz",
    // level dynamics
    "t1_opt_s", "t1_spin_s", "branch_same", "pump_rate_flip_per_s", "pump_rate_preserve_per_s",
    "temperature_k", "excited_spin_relax_per_s", "burn_duration_s", "wait_max_s", "wait_points",
    // spectra
    "spin_line", "spin_fwhm_hz", "optical_fwhm_hz", "baseline_absorption", "probe_width_hz",
    // coherent control
    "field_variation", "pulse_model", "t2_s", "t_max_s", "t_points", "tau_max_s", "tau_points",
    // microwave chain
    "f0_hz", "resonator_fwhm_hz", "insertion_loss_db", "conversion_t_per_sqrt_w", "mw_power_w",
    "sweep_span_hz", "sweep_points",
    // heating
    "heating_slope_k_per_w", "max_delta_t_k", "pulse_len_s", "rep_period_s", "rep_rate_min_hz",
    "rep_rate_max_hz", "rep_rate_points",
    // output
    "label"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_override(std::string_view key) {
  return std::ranges::find(kOverrideKeys, key) != std::end(kOverrideKeys);
}

}  // namespace

std::span<const std::string_view> experiment_names() { return kExperiments; }
std::span<const std::string_view> override_keys() { return kOverrideKeys; }

void apply_assignment(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  const std::string k(key);
  if (value.empty()) throw ConfigError(k, "empty value");
  if (value.find_first_of("#\n\r") != std::string_view::npos) {
    throw ConfigError(k, "values cannot contain '#' or line breaks");
  }
  if (key == "schema_version") {
    int v = 0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || p != value.data() + value.size()) {
      throw ConfigError(k, "schema_version must be an integer");
    }
    if (v != kSchemaVersion) {
      throw ConfigError(k, "unsupported schema_version " + std::string(value));
    }
    cfg.schema_version = v;
  } else if (key == "experiment") {
    if (std::ranges::find(kExperiments, value) == std::end(kExperiments)) {
      throw ConfigError(k, "unknown experiment '" + std::string(value) + "'");
    }
    cfg.experiment = value;
  } else if (key == "preset") {
    if (value != "ground-config" && value != "excited-config") {
      throw ConfigError(k, "unknown preset '" + std::string(value) + "'");
    }
    cfg.preset = value;
  } else if (key == "output_dir") {
    cfg.output_dir = std::string(value);
  } else if (key == "seed") {
    std::uint64_t s = 0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
    if (ec != std::errc() || p != value.data() + value.size()) {
      throw ConfigError(k, "seed must be a non-negative integer");
    }
    cfg.seed = s;
  } else if (is_override(key)) {
    auto it = std::ranges::find_if(cfg.overrides, [&](const auto& kv) { return kv.first == k; });
    if (it != cfg.overrides.end()) {
      it->second = std::string(value);
    } else {
      cfg.overrides.emplace_back(k, std::string(value));
    }
  } else {
    throw ConfigError(k, "unknown key '" + k + "'");
  }
}

void apply_assignment(ExperimentConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(std::string(trim(assignment)), "expected key=value");
  }
  apply_assignment(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  bool have_version = false;
  std::vector<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw ConfigError(key, "duplicate key '" + key + "'");
    }
    seen.push_back(key);
    apply_assignment(cfg, key, line.substr(eq + 1));
    have_version = have_version || key == "schema_version";
  }
  if (!have_version) throw ConfigError("schema_version", "missing schema_version line");
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "schema_version = " << cfg.schema_version << '\n';
  if (!cfg.experiment.empty()) os << "experiment = " << cfg.experiment << '\n';
  os << "preset = " << cfg.preset << '\n';
  if (cfg.output_dir) os << "output_dir = " << *cfg.output_dir << '\n';
  if (cfg.seed) os << "seed = " << *cfg.seed << '\n';
  for (const auto& [k, v] : cfg.overrides) os << k << " = " << v << '\n';
  return os.str();
}

}  // namespace erspin
