#pragma once

// Lumped model of the MW drive: a single-Lorentzian resonator, the
// power-to-field conversion, and a linear steady-state heating budget.

#include "erspin/bloch.hpp"

#include <optional>
#include <string>

namespace erspin {

struct ResonatorParams {
  double f0 = 3.12e9;               // Hz
  double fwhm = 60e6;               // Hz
  double insertion_loss_db = 5.0;   // dB at resonance
  // B1 per sqrt(transmitted power), T / sqrt(W). Must be calibrated; see
  // calibrate_conversion.
  std::optional<double> conversion;

  void validate() const;
  double quality_factor() const { return f0 / fwhm; }
};

struct HeatingModel {
  double slope = 50.0;        // K / W of average dissipated power (0.05 K/mW)
  double max_delta_t = 0.1;   // K

  void validate() const;
};

struct FieldHomogeneity {
  double relative_variation = 0.02;  // peak-to-peak over the sample
  std::string volume = "0.2x0.2x0.5 mm^3 probed / (0.5 mm)^3 homogeneous";

  void validate() const;
};

/// Transmission in dB including the insertion loss.
double s21(const ResonatorParams& rp, double f);

/// Transmission in dB relative to the resonance peak (<= 0).
double s21_relative(const ResonatorParams& rp, double f);

/// B1 = conversion * sqrt(p * 10^(s21_relative / 10)). Throws InputError for
/// negative power or an uncalibrated resonator.
double field_from_power(const ResonatorParams& rp, double power, double f);

/// Conversion (T / sqrt(W)) that makes `power` on resonance produce the
/// angular Rabi frequency `omega` for a spin with effective MW g-factor g_mw.
double calibrate_conversion(double omega, double g_mw, double power);

struct HeatingBudget {
  double delta_t;       // K
  bool ok;
  double max_rep_rate;  // 1/s
};

HeatingBudget heating_budget(const HeatingModel& hm, double p_peak, double pulse_len,
                             double rep_period);

AmplitudeSpread rabi_spread_from_homogeneity(const FieldHomogeneity& fh);

}  // namespace erspin
