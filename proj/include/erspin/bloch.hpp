#pragma once

// Coherent two-level dynamics in the frame rotating with the MW carrier.
// The Bloch vector obeys dB/dt = W x B with
//   W = (Omega cos(phase), Omega sin(phase), 2 pi detuning),
// so a constant drive is an exact rotation. w = -1 is the initialized state.

#include "erspin/line_shape.hpp"
#include "erspin/trace.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace erspin {

struct BlochVector {
  double u = 0.0;
  double v = 0.0;
  double w = -1.0;

  double norm() const;
  double transverse() const;
};

/// Rectangular MW pulse.
struct Pulse {
  double rabi = 0.0;             // rad/s
  double phase = 0.0;            // rad
  double duration = 0.0;         // s
  double detuning_offset = 0.0;  // Hz, added to the spin detuning

  void validate() const;
};

/// Instantaneous rotation; the infinite-Rabi limit of a Pulse.
struct IdealPulse {
  double angle = 0.0;  // rad
  double phase = 0.0;  // rad
};

struct Delay {
  double duration = 0.0;  // s
};

using SequenceStep = std::variant<Pulse, IdealPulse, Delay>;

struct Sequence {
  std::vector<SequenceStep> steps;
  // Phenomenological transverse decay applied during delays only.
  double t2 = std::numeric_limits<double>::infinity();

  void validate() const;
};

enum class PulseModel { finite, ideal };

BlochVector propagate(const BlochVector& b, const Pulse& p, double detuning);
BlochVector rotate(const BlochVector& b, const IdealPulse& p);
BlochVector free_precession(const BlochVector& b, double detuning, double duration,
                            double t2 = std::numeric_limits<double>::infinity());

/// Runs a sequence for one spin. `amplitude` scales the Rabi frequency of
/// finite pulses.
BlochVector run_sequence(const BlochVector& b, const Sequence& seq, double detuning,
                         double amplitude = 1.0);

/// Generalized Rabi formula: transfer probability from w = -1 after a
/// constant drive of the given duration.
double flip_probability(double rabi, double detuning, double duration);

/// Relative Rabi amplitude, uniform over [center - width/2, center + width/2].
struct AmplitudeSpread {
  double center = 1.0;
  double width = 0.0;

  void validate() const;
};

enum class Quadrature { grid, monte_carlo };

struct EnsembleSpec {
  LineShape detuning_line{LineKind::lorentzian, 9e6, 0.0};
  AmplitudeSpread rabi_spread{1.0, 0.02};
  int n_samples = 2001;    // detuning nodes (grid) or draws (monte carlo)
  int n_amplitude = 11;    // amplitude nodes, grid mode only
  Quadrature quadrature = Quadrature::grid;
  std::optional<std::uint64_t> seed;  // required for monte carlo

  void validate() const;
};

struct EnsembleMember {
  double detuning;   // Hz
  double amplitude;  // relative Rabi amplitude
  double weight;
};

/// Quadrature nodes for the ensemble. Weights sum to one.
///
/// Lorentzian lines use equal-weight quantile nodes (midpoint rule after the
/// substitution detuning = hwhm tan(theta)), which covers the heavy tails
/// without truncation. Gaussian lines use a trapezoid grid over +-20 FWHM.
/// n_samples == 1 selects the line center only.
std::vector<EnsembleMember> ensemble_members(const EnsembleSpec& spec);

/// Mean inversion after a resonant-carrier pulse of each duration in `t_grid`.
Trace rabi_trace(const EnsembleSpec& spec, double rabi, std::span<const double> t_grid);

/// Like rabi_trace but also returns the per-point standard error of the
/// mean, meaningful for monte-carlo quadrature.
Trace rabi_trace_stderr(const EnsembleSpec& spec, double rabi, std::span<const double> t_grid);

/// Mean transfer probability of a nominal pi-pulse at zero detuning,
/// averaged over the amplitude distribution (`nodes` midpoint nodes).
double pi_fidelity_center(double rabi, const AmplitudeSpread& spread, int nodes = 101);

/// Integral of L(detuning) * P_flip(detuning) for a pulse of length pi/rabi.
/// Starts at spec.n_samples quantile nodes and doubles until the relative
/// change drops below 1e-4; throws NumericalError if that never happens.
double pi_fidelity_avg(double rabi, const EnsembleSpec& spec);

Sequence ramsey_sequence(double rabi, double tau, PulseModel model);
Sequence echo_sequence(double rabi, double tau, double t2, PulseModel model);

/// pi/2 - tau - pi/2, mean inversion versus tau.
Trace ramsey_trace(const EnsembleSpec& spec, double rabi, std::span<const double> tau_grid,
                   PulseModel model = PulseModel::finite);

/// pi/2 - tau - pi - tau, magnitude of the mean transverse vector at the
/// echo, reported against the total free evolution time 2 tau.
Trace echo_trace(const EnsembleSpec& spec, double rabi, std::span<const double> tau_grid,
                 double t2, PulseModel model = PulseModel::finite);

/// Position of the first local maximum, refined by a parabola through the
/// neighbouring points. Throws NumericalError if there is none.
double first_maximum(const Trace& trace);

}  // namespace erspin
