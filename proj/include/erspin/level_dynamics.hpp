#pragma once

// Incoherent four-level rate model used for optical spin initialization.
//
//   e_dn  e_up        excited doublet
//    |  \/  |
//    |  /\  |         optical decay, branch_same / 1 - branch_same
//   g_dn  g_up        ground doublet, g_dn lower in energy
//
// The spin-preserving laser drives g_dn <-> e_dn, which is also the probed
// transition. The spin-flip laser drives g_up <-> e_dn and accumulates
// population in g_dn. Both lasers act as stimulated rates (absorption and
// stimulated emission at equal rate).

#include "erspin/trace.hpp"

#include <Eigen/Dense>

#include <limits>
#include <span>

namespace erspin {

enum Level : int { kGroundDown = 0, kGroundUp = 1, kExcitedDown = 2, kExcitedUp = 3 };

using RateMatrix = Eigen::Matrix4d;

struct FourLevelState {
  Eigen::Vector4d p = Eigen::Vector4d(1.0, 0.0, 0.0, 0.0);

  double operator[](Level l) const { return p[l]; }
  /// Throws InputError unless every entry is >= 0 and they sum to 1 within 1e-9.
  void validate() const;
};

struct RateParams {
  double t1_opt = 11e-3;      // s, optical lifetime
  double t1_spin = 53e-3;     // s, ground spin lifetime (antihole decay)
  double branch_same = 0.5;   // excited decay fraction back to the same spin
  double pump_rate_flip = 1e4;      // 1/s
  double pump_rate_preserve = 0.0;  // 1/s
  double temperature = 0.8;   // K; +inf gives the unpolarized baseline
  double splitting = 3.12e9;  // Hz, ground Zeeman splitting
  double excited_spin_relax = 0.0;  // 1/s, symmetric e_dn <-> e_up

  void validate() const;
  RateParams pumps_off() const;
};

/// Boltzmann ground polarization tanh(h nu / 2 k T); 0 at infinite temperature.
double thermal_polarization(const RateParams& rp);

/// Ground doublet in thermal equilibrium, excited levels empty.
FourLevelState thermal_state(const RateParams& rp);

/// Generator M with dp/dt = M p. Columns sum to zero.
RateMatrix rate_generator(const RateParams& rp);

/// Null vector of the generator, normalized to unit population.
FourLevelState stationary_state(const RateParams& rp);

/// Exact propagation by the matrix exponential of the generator.
FourLevelState evolve(const FourLevelState& state, const RateParams& rp, double t);

/// Absorption of the probed transition relative to thermal equilibrium,
/// (p_gdn - p_edn) - p_gdn_thermal.
double antihole_signal(const FourLevelState& s, const RateParams& rp);

/// Burn with the configured pumps for `burn_duration`, then free evolution.
/// The returned trace holds antihole_signal at each wait.
Trace antihole_trace(const RateParams& rp, double burn_duration, std::span<const double> wait_grid);

/// Population left after burning from thermal equilibrium.
FourLevelState burn(const RateParams& rp, double burn_duration);

struct PumpingEfficiency {
  double thermal;      // (p_target - p_thermal) / (1 - p_thermal)
  double unpolarized;  // (p_target - 1/2) / (1/2)
  FourLevelState after_burn;
};

PumpingEfficiency pumping_efficiency(const RateParams& rp, double burn_duration);

}  // namespace erspin
