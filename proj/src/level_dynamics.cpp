#include "erspin/level_dynamics.hpp"

#include "erspin/constants.hpp"
#include "erspin/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace erspin {

void FourLevelState::validate() const {
  if (!p.allFinite() || p.minCoeff() < -1e-12) {
    throw InputError("populations must be non-negative");
  }
  if (std::abs(p.sum() - 1.0) > 1e-9) throw InputError("populations must sum to 1");
}

void RateParams::validate() const {
  if (!(t1_opt > 0.0)) throw InputError("t1_opt must be > 0");
  if (!(t1_spin > 0.0)) throw InputError("t1_spin must be > 0");
  if (!(branch_same >= 0.0 && branch_same <= 1.0)) {
    throw InputError("branch_same must lie in [0, 1]");
  }
  if (!(pump_rate_flip >= 0.0) || !std::isfinite(pump_rate_flip)) {
    throw InputError("pump_rate_flip must be finite and >= 0");
  }
  if (!(pump_rate_preserve >= 0.0) || !std::isfinite(pump_rate_preserve)) {
    throw InputError("pump_rate_preserve must be finite and >= 0");
  }
  if (!(temperature > 0.0)) throw InputError("temperature must be > 0");
  if (!(splitting >= 0.0) || !std::isfinite(splitting)) {
    throw InputError("splitting must be finite and >= 0");
  }
  if (!(excited_spin_relax >= 0.0) || !std::isfinite(excited_spin_relax)) {
    throw InputError("excited_spin_relax must be finite and >= 0");
  }
}

RateParams RateParams::pumps_off() const {
  RateParams off = *this;
  off.pump_rate_flip = 0.0;
  off.pump_rate_preserve = 0.0;
  return off;
}

double thermal_polarization(const RateParams& rp) {
  if (std::isinf(rp.temperature)) return 0.0;
  const double x = constants::planck * rp.splitting / (2.0 * constants::boltzmann * rp.temperature);
  return std::tanh(x);
}

FourLevelState thermal_state(const RateParams& rp) {
  rp.validate();
  const double pol = thermal_polarization(rp);
  return {Eigen::Vector4d(0.5 * (1.0 + pol), 0.5 * (1.0 - pol), 0.0, 0.0)};
}

RateMatrix rate_generator(const RateParams& rp) {
  rp.validate();
  RateMatrix m = RateMatrix::Zero();
  auto transfer = [&m](Level from, Level to, double rate) {
    m(to, from) += rate;
    m(from, from) -= rate;
  };

  // Ground spin relaxation: k_up + k_dn = 1/T1, k_up / k_dn = exp(-h nu / k T).
  const double pol = thermal_polarization(rp);
  transfer(kGroundDown, kGroundUp, 0.5 * (1.0 - pol) / rp.t1_spin);
  transfer(kGroundUp, kGroundDown, 0.5 * (1.0 + pol) / rp.t1_spin);

  const double gamma = 1.0 / rp.t1_opt;
  transfer(kExcitedDown, kGroundDown, rp.branch_same * gamma);
  transfer(kExcitedDown, kGroundUp, (1.0 - rp.branch_same) * gamma);
  transfer(kExcitedUp, kGroundUp, rp.branch_same * gamma);
  transfer(kExcitedUp, kGroundDown, (1.0 - rp.branch_same) * gamma);

  transfer(kExcitedDown, kExcitedUp, rp.excited_spin_relax);
  transfer(kExcitedUp, kExcitedDown, rp.excited_spin_relax);

  transfer(kGroundUp, kExcitedDown, rp.pump_rate_flip);
  transfer(kExcitedDown, kGroundUp, rp.pump_rate_flip);
  transfer(kGroundDown, kExcitedDown, rp.pump_rate_preserve);
  transfer(kExcitedDown, kGroundDown, rp.pump_rate_preserve);
  return m;
}

FourLevelState stationary_state(const RateParams& rp) {
  RateMatrix a = rate_generator(rp);
  a.row(3).setOnes();
  Eigen::FullPivLU<RateMatrix> lu(a);
  if (!lu.isInvertible()) throw NumericalError("rate generator has no unique stationary state");
  FourLevelState s{lu.solve(Eigen::Vector4d(0.0, 0.0, 0.0, 1.0))};
  s.p = s.p.cwiseMax(0.0);
  return s;
}

FourLevelState evolve(const FourLevelState& state, const RateParams& rp, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("evolution time must be finite and >= 0");
  state.validate();
  if (t == 0.0) return state;
  const RateMatrix propagator = (rate_generator(rp) * t).exp();
  FourLevelState out{propagator * state.p};
  // Round-off from the Pade approximant can leave entries at -1e-17.
  for (int i = 0; i < 4; ++i) {
    if (out.p[i] < 0.0 && out.p[i] > -1e-12) out.p[i] = 0.0;
  }
  return out;
}

double antihole_signal(const FourLevelState& s, const RateParams& rp) {
  const FourLevelState th = thermal_state(rp);
  return (s[kGroundDown] - s[kExcitedDown]) - th[kGroundDown];
}

FourLevelState burn(const RateParams& rp, double burn_duration) {
  if (!(burn_duration > 0.0)) throw InputError("burn duration must be > 0");
  return evolve(thermal_state(rp), rp, burn_duration);
}

Trace antihole_trace(const RateParams& rp, double burn_duration, std::span<const double> wait_grid) {
  if (wait_grid.empty()) throw InputError("wait grid is empty");
  for (std::size_t i = 0; i < wait_grid.size(); ++i) {
    if (!(wait_grid[i] >= 0.0)) throw InputError("wait times must be >= 0");
    if (i > 0 && wait_grid[i] < wait_grid[i - 1]) throw InputError("wait grid must be sorted");
  }
  const FourLevelState burnt = burn(rp, burn_duration);
  const RateParams dark = rp.pumps_off();
  Trace out;
  out.reserve(wait_grid.size());
  for (double w : wait_grid) {
    out.push_back({w, antihole_signal(evolve(burnt, dark, w), dark)});
  }
  return out;
}

PumpingEfficiency pumping_efficiency(const RateParams& rp, double burn_duration) {
  const FourLevelState after = burn(rp, burn_duration);
  const double p_thermal = thermal_state(rp)[kGroundDown];
  const double p = after[kGroundDown];
  const double thermal = p_thermal < 1.0 ? (p - p_thermal) / (1.0 - p_thermal) : 0.0;
  return {thermal, (p - 0.5) / 0.5, after};
}

}  // namespace erspin
