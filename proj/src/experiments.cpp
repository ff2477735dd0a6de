#include "erspin/experiments.hpp"

#include "erspin/constants.hpp"
#include "erspin/errors.hpp"
#include "erspin/fit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace erspin {

namespace {

using constants::two_pi;

double to_double(const std::string& key, std::string_view v) {
  if (v == "inf") return std::numeric_limits<double>::infinity();
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || std::isnan(out)) {
    throw ConfigError(key, key + ": expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

int to_int(const std::string& key, std::string_view v, int min_value) {
  int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(key, key + ": expected an integer, got '" + std::string(v) + "'");
  }
  if (out < min_value) throw ConfigError(key, key + ": must be >= " + std::to_string(min_value));
  return out;
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, key + ": must be finite and > 0");
  return v;
}

using Handler = std::function<void(ExperimentSetup&, const std::string&, std::string_view)>;

// Setter followed by the owning module's validation.
template <class Set, class Check>
Handler checked(Set set, Check check) {
  return [set, check](ExperimentSetup& s, const std::string& key, std::string_view v) {
    set(s, key, v);
    try {
      check(s);
    } catch (const InputError& e) {
      throw ConfigError(key, key + ": " + e.what());
    }
  };
}

auto rates_ok = [](const ExperimentSetup& s) { s.rates.validate(); };
auto line_ok = [](const ExperimentSetup& s) { s.spin_line.validate(); };
auto readout_ok = [](const ExperimentSetup& s) { s.readout.validate(); };
auto ensemble_ok = [](const ExperimentSetup& s) {
  EnsembleSpec e = s.ensemble;
  e.seed = e.seed.value_or(0);  // seed presence is checked once all keys are in
  e.validate();
};
auto resonator_ok = [](const ExperimentSetup& s) { s.resonator.validate(); };
auto heating_ok = [](const ExperimentSetup& s) { s.heating.validate(); };
auto homogeneity_ok = [](const ExperimentSetup& s) { s.homogeneity.validate(); };
auto nothing = [](const ExperimentSetup&) {};

#define ERSPIN_NUMBER(field, check)                                                   \
  checked([](ExperimentSetup& s, const std::string& k, std::string_view v) {          \
    s.field = to_double(k, v);                                                        \
  }, check)
#define ERSPIN_POSITIVE(field, check)                                                 \
  checked([](ExperimentSetup& s, const std::string& k, std::string_view v) {          \
    s.field = positive(k, to_double(k, v));                                           \
  }, check)
#define ERSPIN_COUNT(field, min_value)                                                \
  checked([](ExperimentSetup& s, const std::string& k, std::string_view v) {          \
    s.field = to_int(k, v, min_value);                                                \
  }, nothing)

const std::map<std::string, Handler, std::less<>>& handlers() {
  static const std::map<std::string, Handler, std::less<>> table = {
      {"quadrature", checked([](ExperimentSetup& s, const std::string& k, std::string_view v) {
         if (v == "grid") s.ensemble.quadrature = Quadrature::grid;
         else if (v == "monte-carlo") s.ensemble.quadrature = Quadrature::monte_carlo;
         else throw ConfigError(k, k + ": expected grid or monte-carlo");
       }, nothing)},
      {"n_samples", ERSPIN_COUNT(ensemble.n_samples, 1)},
      {"n_amplitude", ERSPIN_COUNT(ensemble.n_amplitude, 1)},

      {"g_parallel", checked([](ExperimentSetup& s, const std::string& k, std::string_view v) {
         s.preset.g.g_parallel = positive(k, to_double(k, v));
       }, nothing)},
      {"g_mw", checked([](ExperimentSetup& s, const std::string& k, std::string_view v) {
         s.preset.g.g_mw = positive(k, to_double(k, v));
       }, nothing)},
      {"static_field_t", checked([](ExperimentSetup& s, const std::string& k, std::string_view v) {
         s.preset.field.static_field = to_double(k, v);
       }, [](const ExperimentSetup& s) { s.preset.field.validate(); })},
      {"rabi_hz", ERSPIN_POSITIVE(rabi_hz, nothing)},
      {"splitting_hz", ERSPIN_NUMBER(rates.splitting, rates_ok)},

      {"t1_opt_s", ERSPIN_NUMBER(rates.t1_opt, rates_ok)},
      {"t1_spin_s", ERSPIN_NUMBER(rates.t1_spin, rates_ok)},
      {"branch_same", ERSPIN_NUMBER(rates.branch_same, rates_ok)},
      {"pump_rate_flip_per_s", ERSPIN_NUMBER(rates.pump_rate_flip, rates_ok)},
      {"pump_rate_preserve_per_s", ERSPIN_NUMBER(rates.pump_rate_preserve, rates_ok)},
      {"temperature_k", ERSPIN_NUMBER(rates.temperature, rates_ok)},
      {"excited_spin_relax_per_s", ERSPIN_NUMBER(rates.excited_spin_relax, rates_ok)},
      {"burn_duration_s", ERSPIN_POSITIVE(burn_duration, nothing)},
      {"wait_max_s", ERSPIN_POSITIVE(wait_max, nothing)},
      {"wait_points", ERSPIN_COUNT(wait_points, 12)},

      {"spin_line", checked([](ExperimentSetup& s, const std::string& k, std::string_view v) {
         try {
           s.spin_line.kind = line_kind_from_string(v);
         } catch (const InputError& e) {
           throw ConfigError(k, k + ": " + e.what());
         }
       }, nothing)},
      {"spin_fwhm_hz", ERSPIN_NUMBER(spin_line.fwhm, line_ok)},
      {"optical_fwhm_hz", ERSPIN_POSITIVE(optical_fwhm, nothing)},
      {"baseline_absorption", ERSPIN_NUMBER(readout.baseline_absorption, readout_ok)},
      {"probe_width_hz", ERSPIN_NUMBER(readout.probe_width, readout_ok)},

      {"field_variation", ERSPIN_NUMBER(homogeneity.relative_variation, homogeneity_ok)},
      {"pulse_model", checked([](ExperimentSetup& s, const std::string& k, std::string_view v) {
         if (v == "finite") s.pulse_model = PulseModel::finite;
         else if (v == "ideal") s.pulse_model = PulseModel::ideal;
         else throw ConfigError(k, k + ": expected finite or ideal");
       }, nothing)},
      {"t2_s", checked([](ExperimentSetup& s, const std::string& k, std::string_view v) {
         s.t2 = to_double(k, v);
         if (!(s.t2 > 0.0)) throw ConfigError(k, k + ": must be > 0");
       }, nothing)},
      {"t_max_s", ERSPIN_POSITIVE(t_max, nothing)},
      {"t_points", ERSPIN_COUNT(t_points, 10)},
      {"tau_max_s", ERSPIN_POSITIVE(tau_max, nothing)},
      {"tau_points", ERSPIN_COUNT(tau_points, 6)},

      {"f0_hz", ERSPIN_NUMBER(resonator.f0, resonator_ok)},
      {"resonator_fwhm_hz", ERSPIN_NUMBER(resonator.fwhm, resonator_ok)},
      {"insertion_loss_db", ERSPIN_NUMBER(resonator.insertion_loss_db, resonator_ok)},
      {"conversion_t_per_sqrt_w", ERSPIN_NUMBER(resonator.conversion, resonator_ok)},
      {"mw_power_w", checked([](ExperimentSetup& s, const std::string& k, std::string_view v) {
         s.mw_power = to_double(k, v);
         if (!(s.mw_power >= 0.0) || !std::isfinite(s.mw_power)) {
           throw ConfigError(k, k + ": must be finite and >= 0");
         }
       }, nothing)},
      {"sweep_span_hz", ERSPIN_POSITIVE(sweep_span, nothing)},
      {"sweep_points", ERSPIN_COUNT(sweep_points, 8)},

      {"heating_slope_k_per_w", ERSPIN_NUMBER(heating.slope, heating_ok)},
      {"max_delta_t_k", ERSPIN_NUMBER(heating.max_delta_t, heating_ok)},
      {"pulse_len_s", ERSPIN_POSITIVE(pulse_len, nothing)},
      {"rep_period_s", ERSPIN_POSITIVE(rep_period, nothing)},
      {"rep_rate_min_hz", ERSPIN_POSITIVE(rep_rate_min, nothing)},
      {"rep_rate_max_hz", ERSPIN_POSITIVE(rep_rate_max, nothing)},
      {"rep_rate_points", ERSPIN_COUNT(rep_rate_points, 2)},

      {"label", checked([](ExperimentSetup& s, const std::string&, std::string_view v) {
         s.label = v;
       }, nothing)},
  };
  return table;
}

#undef ERSPIN_NUMBER
#undef ERSPIN_POSITIVE
#undef ERSPIN_COUNT

std::string flag(bool b) { return b ? "true" : "false"; }

void put(Metadata& m, std::string key, double v) { m.emplace_back(std::move(key), format_double(v)); }
void put(Metadata& m, std::string key, std::string v) { m.emplace_back(std::move(key), std::move(v)); }

// Chain estimate of the Rabi frequency for the preset's MW g-factor at the
// configured power on resonance.
double chain_rabi_hz(const ExperimentSetup& s) {
  const double b1 = field_from_power(s.resonator, s.mw_power, s.resonator.f0);
  return rabi_frequency(s.preset.g.g_mw, b1) / two_pi;
}

EnsembleSpec ensemble_for(const ExperimentSetup& s) {
  EnsembleSpec e = s.ensemble;
  e.detuning_line = s.spin_line;
  e.rabi_spread = rabi_spread_from_homogeneity(s.homogeneity);
  return e;
}

ExperimentResult run_holeburn(const ExperimentSetup& s) {
  const std::vector<double> waits = linspace(0.0, s.wait_max, s.wait_points);
  ExperimentResult r{s.experiment, antihole_trace(s.rates, s.burn_duration, waits), "wait_s",
                     "antihole_signal", {}, {}};
  const FitResult f = fit(r.trace, FitModel::biexponential);
  const PumpingEfficiency eff = pumping_efficiency(s.rates, s.burn_duration);
  double peak = 0.0;
  try {
    peak = first_maximum(r.trace);
  } catch (const NumericalError&) {
    // monotonic trace, maximum at zero wait
  }
  put(r.summary, "burn_duration_s", s.burn_duration);
  put(r.summary, "t1_opt_s", s.rates.t1_opt);
  put(r.summary, "t1_spin_s", s.rates.t1_spin);
  put(r.summary, "branch_same", s.rates.branch_same);
  put(r.summary, "thermal_polarization", thermal_polarization(s.rates));
  put(r.summary, "signal_at_zero_wait", r.trace.front().y);
  put(r.summary, "peak_wait_s", peak);
  put(r.summary, "rise_time_s", f.value("tau_fast"));
  put(r.summary, "rise_time_sigma_s", f.sigma("tau_fast"));
  put(r.summary, "decay_time_s", f.value("tau_slow"));
  put(r.summary, "decay_time_sigma_s", f.sigma("tau_slow"));
  put(r.summary, "fit_residual_norm", f.residual_norm);
  put(r.summary, "efficiency_thermal", eff.thermal);
  put(r.summary, "efficiency_unpolarized", eff.unpolarized);
  return r;
}

ExperimentResult run_pumping_efficiency(const ExperimentSetup& s) {
  const PumpingEfficiency eff = pumping_efficiency(s.rates, s.burn_duration);
  const double pol = std::clamp(eff.thermal, -1.0, 1.0);
  const SpectrumProfile antihole = antihole_spectrum(s.spin_line, pol, s.readout);
  const SpectrumProfile hole = antihole_spectrum(s.spin_line, -1.0, s.readout);

  ExperimentResult r{s.experiment, {}, "frequency_hz", "value", {}, {}};
  for (std::size_t i = 0; i < antihole.freq.size(); ++i) {
    r.trace.push_back({antihole.freq[i], antihole.alpha[i]});
  }
  put(r.metadata, "baseline_absorption", s.readout.baseline_absorption);
  const double thermal_p = thermal_state(s.rates).p[kGroundDown];
  put(r.summary, "burn_duration_s", s.burn_duration);
  put(r.summary, "branch_same", s.rates.branch_same);
  put(r.summary, "pump_rate_flip_per_s", s.rates.pump_rate_flip);
  put(r.summary, "p_target_thermal", thermal_p);
  put(r.summary, "p_target_after_burn", eff.after_burn.p[kGroundDown]);
  put(r.summary, "efficiency_thermal", eff.thermal);
  put(r.summary, "efficiency_unpolarized", eff.unpolarized);
  put(r.summary, "efficiency_in_0p8_1p0", flag(eff.thermal >= 0.8 && eff.thermal <= 1.0));
  put(r.summary, "hole_area_ratio", hole_area_ratio(hole, antihole));
  put(r.summary, "spin_fwhm_hz", s.spin_line.fwhm);
  put(r.summary, "antihole_fwhm_hz", profile_fwhm(antihole));
  put(r.summary, "optical_fwhm_hz", s.optical_fwhm);
  return r;
}

ExperimentResult run_rabi(const ExperimentSetup& s) {
  const double omega = two_pi * s.rabi_hz;
  const EnsembleSpec ens = ensemble_for(s);
  const std::vector<double> t = linspace(0.0, s.t_max, s.t_points);
  ExperimentResult r{s.experiment, rabi_trace(ens, omega, t), "time_s", "signal", {}, {}};
  const FitResult f = fit(r.trace, FitModel::sinusoid_decay);

  EnsembleSpec center = ens;
  center.n_samples = 1;
  center.quadrature = Quadrature::grid;
  const Trace center_trace = rabi_trace(center, omega, t);

  put(r.metadata, "rabi_hz", s.rabi_hz);
  put(r.summary, "model_rabi_hz", s.rabi_hz);
  put(r.summary, "rabi_frequency_hz", f.value("frequency"));
  put(r.summary, "rabi_frequency_sigma_hz", f.sigma("frequency"));
  put(r.summary, "decay_rate_per_s", f.value("decay_rate"));
  put(r.summary, "fit_residual_norm", f.residual_norm);
  put(r.summary, "pi_time_s", 0.5 / f.value("frequency"));
  put(r.summary, "first_maximum_s", first_maximum(r.trace));
  put(r.summary, "line_center_first_maximum_s", first_maximum(center_trace));
  put(r.summary, "pi_fidelity_center", pi_fidelity_center(omega, ens.rabi_spread));
  put(r.summary, "pi_fidelity_avg", pi_fidelity_avg(omega, ens));
  put(r.summary, "g_mw", s.preset.g.g_mw);
  put(r.summary, "chain_rabi_frequency_hz", chain_rabi_hz(s));
  return r;
}

ExperimentResult run_ramsey(const ExperimentSetup& s) {
  const double omega = two_pi * s.rabi_hz;
  const std::vector<double> tau = linspace(0.0, s.tau_max, s.tau_points);
  ExperimentResult r{s.experiment, ramsey_trace(ensemble_for(s), omega, tau, s.pulse_model), "tau_s",
                     "signal", {}, {}};
  const FitResult f = fit(r.trace, FitModel::single_exponential);
  put(r.metadata, "pulse_model", s.pulse_model == PulseModel::ideal ? "ideal" : "finite");
  put(r.summary, "signal_at_zero_delay", r.trace.front().y);
  put(r.summary, "t2star_s", f.value("tau"));
  put(r.summary, "t2star_sigma_s", f.sigma("tau"));
  put(r.summary, "fit_residual_norm", f.residual_norm);
  if (s.spin_line.kind == LineKind::lorentzian) {
    put(r.summary, "ideal_lorentzian_t2star_s", 1.0 / (std::numbers::pi * s.spin_line.fwhm));
  }
  return r;
}

ExperimentResult run_echo(const ExperimentSetup& s) {
  const double omega = two_pi * s.rabi_hz;
  const std::vector<double> tau = linspace(0.0, s.tau_max, s.tau_points);
  ExperimentResult r{s.experiment, echo_trace(ensemble_for(s), omega, tau, s.t2, s.pulse_model),
                     "time_s", "signal", {}, {}};
  double lo = r.trace.front().y, hi = lo;
  for (const TracePoint& p : r.trace) {
    lo = std::min(lo, p.y);
    hi = std::max(hi, p.y);
  }
  put(r.metadata, "pulse_model", s.pulse_model == PulseModel::ideal ? "ideal" : "finite");
  put(r.summary, "t2_s", s.t2);
  put(r.summary, "echo_amplitude_first", r.trace.front().y);
  put(r.summary, "echo_amplitude_last", r.trace.back().y);
  put(r.summary, "echo_amplitude_min", lo);
  put(r.summary, "echo_amplitude_max", hi);
  if (std::isfinite(s.t2)) {
    const FitResult f = fit(r.trace, FitModel::single_exponential);
    put(r.summary, "fitted_t2_s", f.value("tau"));
    put(r.summary, "fitted_t2_sigma_s", f.sigma("tau"));
  }
  return r;
}

ExperimentResult run_resonator(const ExperimentSetup& s) {
  const ResonatorParams& rp = s.resonator;
  const std::vector<double> f = linspace(rp.f0 - s.sweep_span, rp.f0 + s.sweep_span, s.sweep_points);
  ExperimentResult r{s.experiment, {}, "frequency_hz", "s21_db", {}, {}};
  Trace linear;
  for (double x : f) {
    if (!(x > 0.0)) throw ConfigError("sweep_span_hz", "sweep_span_hz: sweep reaches f <= 0");
    const double db = s21(rp, x);
    r.trace.push_back({x, db});
    linear.push_back({x, std::pow(10.0, db / 10.0)});
  }
  const FitResult lf = fit(linear, FitModel::lorentzian);
  const double b1 = field_from_power(rp, s.mw_power, rp.f0);
  put(r.summary, "f0_hz", rp.f0);
  put(r.summary, "fwhm_hz", rp.fwhm);
  put(r.summary, "quality_factor", rp.quality_factor());
  put(r.summary, "peak_s21_db", s21(rp, rp.f0));
  put(r.summary, "s21_at_half_width_db", s21(rp, rp.f0 + 0.5 * rp.fwhm));
  put(r.summary, "fitted_center_hz", lf.value("center"));
  put(r.summary, "fitted_fwhm_hz", lf.value("fwhm"));
  put(r.summary, "conversion_t_per_sqrt_w", *rp.conversion);
  put(r.summary, "mw_power_w", s.mw_power);
  put(r.summary, "b1_t", b1);
  put(r.summary, "chain_rabi_frequency_hz", rabi_frequency(s.preset.g.g_mw, b1) / two_pi);
  return r;
}

ExperimentResult run_heating(const ExperimentSetup& s) {
  const HeatingBudget b = heating_budget(s.heating, s.mw_power, s.pulse_len, s.rep_period);
  ExperimentResult r{s.experiment, {}, "rep_rate_hz", "delta_t_k", {}, {}};
  const double top = std::min(s.rep_rate_max, 1.0 / s.pulse_len);
  if (!(top > s.rep_rate_min)) {
    throw ConfigError("rep_rate_min_hz", "rep_rate_min_hz: no room below the cw limit");
  }
  const double la = std::log10(s.rep_rate_min), lb = std::log10(top);
  for (double e : linspace(la, lb, s.rep_rate_points)) {
    const double rate = std::min(std::pow(10.0, e), top);
    r.trace.push_back({rate, heating_budget(s.heating, s.mw_power, s.pulse_len, 1.0 / rate).delta_t});
  }
  put(r.summary, "p_peak_w", s.mw_power);
  put(r.summary, "pulse_len_s", s.pulse_len);
  put(r.summary, "rep_period_s", s.rep_period);
  put(r.summary, "avg_power_w", s.mw_power * s.pulse_len / s.rep_period);
  put(r.summary, "delta_t_k", b.delta_t);
  put(r.summary, "ok", flag(b.ok));
  put(r.summary, "max_rep_rate_hz", b.max_rep_rate);
  return r;
}

}  // namespace

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  out.back() = b;
  return out;
}

ExperimentSetup resolve_setup(const ExperimentConfig& cfg) {
  if (cfg.experiment.empty()) throw ConfigError("experiment", "no experiment given");
  ExperimentSetup s;
  s.experiment = cfg.experiment;
  s.preset = preset_by_name(cfg.preset);
  s.rabi_hz = s.preset.rabi_hz;
  s.rates.splitting = s.preset.splitting_hz;
  s.spin_line = {LineKind::lorentzian, 9e6, 0.0};
  s.ensemble.seed = cfg.seed;
  // The drive chain is calibrated once against the ground-state orientation.
  const SpinPreset ground = ground_config();
  s.resonator.conversion = calibrate_conversion(two_pi * ground.rabi_hz, ground.g.g_mw, 100.0);
  s.pulse_len = 0.5 / s.rabi_hz;

  bool explicit_splitting = false, explicit_pulse_len = false, field_or_g = false;
  for (const auto& [key, value] : cfg.overrides) {
    const auto it = handlers().find(key);
    if (it == handlers().end()) throw ConfigError(key, "unknown key '" + key + "'");
    it->second(s, key, value);
    explicit_splitting = explicit_splitting || key == "splitting_hz";
    explicit_pulse_len = explicit_pulse_len || key == "pulse_len_s";
    field_or_g = field_or_g || key == "static_field_t" || key == "g_parallel";
  }
  if (field_or_g && !explicit_splitting) {
    s.rates.splitting = zeeman_splitting(s.preset.g.g_parallel, s.preset.field.static_field);
  }
  if (!explicit_pulse_len) s.pulse_len = 0.5 / s.rabi_hz;
  if (s.rep_period < s.pulse_len) {
    throw ConfigError("rep_period_s", "rep_period_s: must be >= pulse_len_s");
  }
  if (s.ensemble.quadrature == Quadrature::monte_carlo && !s.ensemble.seed) {
    throw ConfigError("seed", "seed: required for monte-carlo quadrature");
  }
  return s;
}

const std::string& ExperimentResult::summary_value(std::string_view key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  throw InputError("summary has no key '" + std::string(key) + "'");
}

ExperimentResult run_experiment(const ExperimentSetup& s) {
  ExperimentResult r;
  if (s.experiment == "holeburn") r = run_holeburn(s);
  else if (s.experiment == "pumping-efficiency") r = run_pumping_efficiency(s);
  else if (s.experiment == "rabi") r = run_rabi(s);
  else if (s.experiment == "ramsey") r = run_ramsey(s);
  else if (s.experiment == "echo") r = run_echo(s);
  else if (s.experiment == "resonator") r = run_resonator(s);
  else if (s.experiment == "heating-budget") r = run_heating(s);
  else throw ConfigError("experiment", "unknown experiment '" + s.experiment + "'");
  Metadata head{{"experiment", s.experiment}, {"preset", s.preset.name}};
  if (!s.label.empty()) head.emplace_back("label", s.label);
  r.metadata.insert(r.metadata.begin(), head.begin(), head.end());
  r.summary.insert(r.summary.begin(), head.begin(), head.end());
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(resolve_setup(cfg));
}

std::string format_summary(const ExperimentResult& result) {
  std::ostringstream os;
  for (const auto& [k, v] : result.summary) os << k << " = " << v << '\n';
  return os.str();
}

Metadata parse_summary(std::string_view text) {
  Metadata out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    out.emplace_back(line.substr(0, eq), line.substr(eq + 3));
  }
  return out;
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / (result.experiment + "_trace.csv"), std::ios::binary);
    write_trace_csv(os, result.trace, result.x_name, result.y_name, result.metadata);
    if (!os) throw std::runtime_error("failed to write trace file");
  }
  std::ofstream os(dir / (result.experiment + "_summary.txt"), std::ios::binary);
  os << format_summary(result);
  if (!os) throw std::runtime_error("failed to write summary file");
}

}  // namespace erspin
