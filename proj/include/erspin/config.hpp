#pragma once

// Flat "key = value" experiment configuration.
//
//   # comment
//   schema_version = 1
//   experiment = rabi
//   preset = ground-config
//   spin_fwhm_hz = 9e6
//
// schema_version is required. Everything after a "#" is a comment, so values
// cannot contain one. Unknown keys are rejected when parsing;
// values are type-checked and validated against the physics modules when
// the configuration is resolved (see experiments.hpp).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace erspin {

inline constexpr int kSchemaVersion = 1;

/// Names accepted for `experiment`.
std::span<const std::string_view> experiment_names();

/// Parameter keys that may be overridden, besides the reserved ones
/// (schema_version, experiment, preset, output_dir, seed).
std::span<const std::string_view> override_keys();

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::string experiment;
  std::string preset = "ground-config";
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  // Parameter overrides in first-seen order; re-assigning a key replaces it.
  std::vector<std::pair<std::string, std::string>> overrides;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError naming the offending key (or line).
ExperimentConfig parse_config(std::string_view text);

std::string serialize_config(const ExperimentConfig& cfg);

/// Applies one "key=value" assignment (from --set). Reserved keys are
/// accepted too.
void apply_assignment(ExperimentConfig& cfg, std::string_view assignment);
void apply_assignment(ExperimentConfig& cfg, std::string_view key, std::string_view value);

}  // namespace erspin
