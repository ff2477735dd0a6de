#include "erspin/microwave.hpp"

#include "erspin/errors.hpp"
#include "erspin/spin_geometry.hpp"

#include <cmath>
#include <limits>

namespace erspin {

void ResonatorParams::validate() const {
  if (!(f0 > 0.0) || !std::isfinite(f0)) throw InputError("resonator f0 must be > 0");
  if (!(fwhm > 0.0) || !std::isfinite(fwhm)) throw InputError("resonator fwhm must be > 0");
  if (!std::isfinite(insertion_loss_db)) throw InputError("insertion loss must be finite");
  if (conversion && !(*conversion > 0.0)) throw InputError("conversion must be > 0");
}

void HeatingModel::validate() const {
  if (!(slope > 0.0)) throw InputError("heating slope must be > 0");
  if (!(max_delta_t > 0.0)) throw InputError("max_delta_t must be > 0");
}

void FieldHomogeneity::validate() const {
  if (!(relative_variation >= 0.0 && relative_variation < 1.0)) {
    throw InputError("relative_variation must lie in [0, 1)");
  }
}

double s21_relative(const ResonatorParams& rp, double f) {
  rp.validate();
  if (!(f > 0.0)) throw InputError("frequency must be > 0");
  const double x = 2.0 * (f - rp.f0) / rp.fwhm;
  return -10.0 * std::log10(1.0 + x * x);
}

double s21(const ResonatorParams& rp, double f) { return -rp.insertion_loss_db + s21_relative(rp, f); }

double field_from_power(const ResonatorParams& rp, double power, double f) {
  if (!(power >= 0.0)) throw InputError("power must be >= 0");
  const double rel = s21_relative(rp, f);
  if (!rp.conversion) throw InputError("resonator conversion is not calibrated");
  return *rp.conversion * std::sqrt(power * std::pow(10.0, rel / 10.0));
}

double calibrate_conversion(double omega, double g_mw, double power) {
  if (!(power > 0.0)) throw InputError("calibration power must be > 0");
  return field_for_rabi(g_mw, omega) / std::sqrt(power);
}

HeatingBudget heating_budget(const HeatingModel& hm, double p_peak, double pulse_len,
                             double rep_period) {
  hm.validate();
  if (!(p_peak >= 0.0)) throw InputError("peak power must be >= 0");
  if (!(pulse_len > 0.0)) throw InputError("pulse length must be > 0");
  if (!(rep_period >= pulse_len)) throw InputError("repetition period must be >= pulse length");
  const double avg_power = p_peak * (pulse_len / rep_period);
  const double delta_t = hm.slope * avg_power;
  const double energy = p_peak * pulse_len;
  const double max_rate = energy > 0.0 ? hm.max_delta_t / (hm.slope * energy)
                                       : std::numeric_limits<double>::infinity();
  return {delta_t, delta_t <= hm.max_delta_t, max_rate};
}

AmplitudeSpread rabi_spread_from_homogeneity(const FieldHomogeneity& fh) {
  fh.validate();
  return {1.0, fh.relative_variation};
}

}  // namespace erspin
