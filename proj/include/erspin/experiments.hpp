#pragma once

// Named experiment protocols, resolved from an ExperimentConfig and run
// end-to-end through the physics modules.

#include "erspin/bloch.hpp"
#include "erspin/config.hpp"
#include "erspin/csv.hpp"
#include "erspin/level_dynamics.hpp"
#include "erspin/microwave.hpp"
#include "erspin/spectral.hpp"
#include "erspin/spin_geometry.hpp"

#include <filesystem>
#include <limits>
#include <string>

namespace erspin {

/// Fully typed parameter set for one run.
struct ExperimentSetup {
  std::string experiment;
  SpinPreset preset = ground_config();
  double rabi_hz = 0.0;  // Omega / 2pi used for coherent control

  RateParams rates;
  double burn_duration = 0.1;
  double wait_max = 0.4;
  int wait_points = 401;

  LineShape spin_line{LineKind::lorentzian, 9e6, 0.0};
  double optical_fwhm = 0.5e9;
  ReadoutModel readout;

  EnsembleSpec ensemble;
  FieldHomogeneity homogeneity;
  PulseModel pulse_model = PulseModel::finite;
  double t2 = std::numeric_limits<double>::infinity();
  double t_max = 1e-6;
  int t_points = 2001;
  double tau_max = 200e-9;
  int tau_points = 401;

  ResonatorParams resonator;
  double mw_power = 100.0;
  double sweep_span = 300e6;
  int sweep_points = 1201;

  HeatingModel heating;
  double pulse_len = 0.0;  // defaults to a pi-pulse at rabi_hz
  double rep_period = 10e-3;
  double rep_rate_min = 1.0;
  double rep_rate_max = 1e5;
  int rep_rate_points = 201;

  std::string label;
};

/// Preset defaults plus overrides. Each override is parsed and checked
/// against the owning module's invariants as it is applied; failures raise
/// ConfigError naming the key.
ExperimentSetup resolve_setup(const ExperimentConfig& cfg);

struct ExperimentResult {
  std::string experiment;
  Trace trace;
  std::string x_name;
  std::string y_name;
  Metadata metadata;
  Metadata summary;  // key = value, units in the key names

  const std::string& summary_value(std::string_view key) const;
};

ExperimentResult run_experiment(const ExperimentSetup& setup);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes <experiment>_trace.csv and <experiment>_summary.txt into `dir`.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

std::string format_summary(const ExperimentResult& result);

/// Reads a summary file back into key/value pairs.
Metadata parse_summary(std::string_view text);

std::vector<double> linspace(double a, double b, int n);

}  // namespace erspin
