#include "erspin/bloch.hpp"

#include "erspin/constants.hpp"
#include "erspin/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

namespace erspin {

namespace {

using constants::two_pi;
using std::numbers::pi;

Eigen::Vector3d as_vec(const BlochVector& b) { return {b.u, b.v, b.w}; }
BlochVector from_vec(const Eigen::Vector3d& x) { return {x[0], x[1], x[2]}; }

// Rodrigues rotation of x by `angle` about the unit vector n.
Eigen::Vector3d rodrigues(const Eigen::Vector3d& x, const Eigen::Vector3d& n, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return x * c + n.cross(x) * s + n * (n.dot(x) * (1.0 - c));
}

void require_sorted(std::span<const double> grid, const char* what) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
      throw InputError(std::string(what) + " entries must be finite and >= 0");
    }
    if (i > 0 && grid[i] < grid[i - 1]) throw InputError(std::string(what) + " must be sorted");
  }
}

void require_rabi(double rabi) {
  if (!(rabi > 0.0) || !std::isfinite(rabi)) throw InputError("Rabi frequency must be finite and > 0");
}

// Uniform deviate in (0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double open_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double sample_line(const LineShape& ls, std::mt19937_64& rng) {
  const double u = open_uniform(rng);
  if (ls.kind == LineKind::lorentzian) return ls.center + 0.5 * ls.fwhm * std::tan(pi * (u - 0.5));
  // Box-Muller, one branch only so each sample consumes exactly two draws.
  const double u2 = open_uniform(rng);
  const double sigma = ls.fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  return ls.center + sigma * std::sqrt(-2.0 * std::log(u)) * std::cos(two_pi * u2);
}

std::vector<double> detuning_nodes(const LineShape& ls, int n, std::vector<double>& weights) {
  std::vector<double> nodes(n);
  weights.assign(n, 1.0 / n);
  if (n == 1) {
    nodes[0] = ls.center;
    return nodes;
  }
  if (ls.kind == LineKind::lorentzian) {
    for (int i = 0; i < n; ++i) {
      const double theta = -0.5 * pi + (i + 0.5) * pi / n;
      nodes[i] = ls.center + 0.5 * ls.fwhm * std::tan(theta);
    }
    return nodes;
  }
  const double span = 20.0 * ls.fwhm;
  const double h = 2.0 * span / (n - 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    nodes[i] = ls.center - span + i * h;
    weights[i] = line_value(ls, nodes[i]) * h * ((i == 0 || i == n - 1) ? 0.5 : 1.0);
    sum += weights[i];
  }
  for (double& w : weights) w /= sum;
  return nodes;
}

std::vector<double> amplitude_nodes(const AmplitudeSpread& a, int n) {
  if (a.width == 0.0 || n == 1) return {a.center};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a.center - 0.5 * a.width + (i + 0.5) * a.width / n;
  return out;
}

template <class PerMember>
Trace ensemble_average(const EnsembleSpec& spec, std::span<const double> grid, PerMember&& value,
                       bool with_stderr = false) {
  const std::vector<EnsembleMember> members = ensemble_members(spec);
  std::vector<double> mean(grid.size(), 0.0), sq(grid.size(), 0.0);
  for (const EnsembleMember& m : members) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double y = value(m, grid[i]);
      mean[i] += m.weight * y;
      sq[i] += m.weight * y * y;
    }
  }
  Trace out(grid.size());
  const double n = static_cast<double>(members.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double y = mean[i];
    if (with_stderr) y = std::sqrt(std::max(0.0, sq[i] - mean[i] * mean[i]) / n);
    out[i] = {grid[i], y};
  }
  return out;
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(u * u + v * v + w * w); }
double BlochVector::transverse() const { return std::hypot(u, v); }

void Pulse::validate() const {
  if (!(rabi >= 0.0) || !std::isfinite(rabi)) throw InputError("pulse Rabi frequency must be >= 0");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw InputError("pulse duration must be >= 0");
  if (!std::isfinite(phase) || !std::isfinite(detuning_offset)) {
    throw InputError("pulse phase and offset must be finite");
  }
}

void Sequence::validate() const {
  if (!(t2 > 0.0)) throw InputError("t2 must be > 0");
  for (const SequenceStep& s : steps) {
    if (const auto* p = std::get_if<Pulse>(&s)) p->validate();
    if (const auto* d = std::get_if<Delay>(&s); d && !(d->duration >= 0.0)) {
      throw InputError("delay must be >= 0");
    }
  }
}

void AmplitudeSpread::validate() const {
  if (!(center > 0.0) || !(width >= 0.0) || !std::isfinite(center) || !std::isfinite(width)) {
    throw InputError("amplitude spread needs center > 0 and width >= 0");
  }
}

void EnsembleSpec::validate() const {
  detuning_line.validate();
  rabi_spread.validate();
  if (n_samples < 1) throw InputError("n_samples must be >= 1");
  if (n_amplitude < 1) throw InputError("n_amplitude must be >= 1");
  if (quadrature == Quadrature::monte_carlo && !seed) {
    throw InputError("monte-carlo quadrature requires a seed");
  }
}

BlochVector propagate(const BlochVector& b, const Pulse& p, double detuning) {
  p.validate();
  const double delta = two_pi * (detuning + p.detuning_offset);
  const Eigen::Vector3d axis(p.rabi * std::cos(p.phase), p.rabi * std::sin(p.phase), delta);
  const double rate = axis.norm();
  if (rate == 0.0 || p.duration == 0.0) return b;
  return from_vec(rodrigues(as_vec(b), axis / rate, rate * p.duration));
}

BlochVector rotate(const BlochVector& b, const IdealPulse& p) {
  const Eigen::Vector3d axis(std::cos(p.phase), std::sin(p.phase), 0.0);
  return from_vec(rodrigues(as_vec(b), axis, p.angle));
}

BlochVector free_precession(const BlochVector& b, double detuning, double duration, double t2) {
  const double phi = two_pi * detuning * duration;
  const double c = std::cos(phi), s = std::sin(phi);
  const double decay = std::isinf(t2) ? 1.0 : std::exp(-duration / t2);
  return {decay * (b.u * c - b.v * s), decay * (b.u * s + b.v * c), b.w};
}

BlochVector run_sequence(const BlochVector& b, const Sequence& seq, double detuning,
                         double amplitude) {
  BlochVector x = b;
  for (const SequenceStep& step : seq.steps) {
    if (const auto* p = std::get_if<Pulse>(&step)) {
      Pulse scaled = *p;
      scaled.rabi *= amplitude;
      x = propagate(x, scaled, detuning);
    } else if (const auto* ip = std::get_if<IdealPulse>(&step)) {
      x = rotate(x, *ip);
    } else {
      x = free_precession(x, detuning, std::get<Delay>(step).duration, seq.t2);
    }
  }
  return x;
}

double flip_probability(double rabi, double detuning, double duration) {
  const double delta = two_pi * detuning;
  const double eff2 = rabi * rabi + delta * delta;
  if (eff2 == 0.0) return 0.0;
  const double s = std::sin(0.5 * std::sqrt(eff2) * duration);
  return rabi * rabi / eff2 * s * s;
}

std::vector<EnsembleMember> ensemble_members(const EnsembleSpec& spec) {
  spec.validate();
  std::vector<EnsembleMember> out;
  if (spec.quadrature == Quadrature::monte_carlo) {
    std::mt19937_64 rng(*spec.seed);
    out.reserve(spec.n_samples);
    const double w = 1.0 / spec.n_samples;
    const AmplitudeSpread& a = spec.rabi_spread;
    for (int i = 0; i < spec.n_samples; ++i) {
      const double det = spec.n_samples == 1 ? spec.detuning_line.center
                                             : sample_line(spec.detuning_line, rng);
      const double amp = a.center + a.width * (open_uniform(rng) - 0.5);
      out.push_back({det, amp, w});
    }
    return out;
  }
  std::vector<double> wd;
  const std::vector<double> det = detuning_nodes(spec.detuning_line, spec.n_samples, wd);
  const std::vector<double> amp = amplitude_nodes(spec.rabi_spread, spec.n_amplitude);
  out.reserve(det.size() * amp.size());
  const double wa = 1.0 / static_cast<double>(amp.size());
  for (std::size_t i = 0; i < det.size(); ++i) {
    for (double a : amp) out.push_back({det[i], a, wd[i] * wa});
  }
  return out;
}

Trace rabi_trace(const EnsembleSpec& spec, double rabi, std::span<const double> t_grid) {
  require_rabi(rabi);
  require_sorted(t_grid, "time grid");
  return ensemble_average(spec, t_grid, [rabi](const EnsembleMember& m, double t) {
    return propagate(BlochVector{}, Pulse{rabi * m.amplitude, 0.0, t, 0.0}, m.detuning).w;
  });
}

Trace rabi_trace_stderr(const EnsembleSpec& spec, double rabi, std::span<const double> t_grid) {
  require_rabi(rabi);
  require_sorted(t_grid, "time grid");
  return ensemble_average(
      spec, t_grid,
      [rabi](const EnsembleMember& m, double t) {
        return propagate(BlochVector{}, Pulse{rabi * m.amplitude, 0.0, t, 0.0}, m.detuning).w;
      },
      true);
}

double pi_fidelity_center(double rabi, const AmplitudeSpread& spread, int nodes) {
  require_rabi(rabi);
  spread.validate();
  if (nodes < 1) throw InputError("need at least one amplitude node");
  const std::vector<double> amp = amplitude_nodes(spread, nodes);
  const Pulse nominal{rabi, 0.0, pi / rabi, 0.0};
  double acc = 0.0;
  for (double a : amp) {
    Pulse p = nominal;
    p.rabi *= a;
    acc += 0.5 * (1.0 + propagate(BlochVector{}, p, 0.0).w);
  }
  return acc / static_cast<double>(amp.size());
}

double pi_fidelity_avg(double rabi, const EnsembleSpec& spec) {
  require_rabi(rabi);
  spec.validate();
  const double duration = pi / rabi;
  auto integrate = [&](int n) {
    std::vector<double> w;
    const std::vector<double> det = detuning_nodes(spec.detuning_line, n, w);
    double acc = 0.0;
    for (std::size_t i = 0; i < det.size(); ++i) acc += w[i] * flip_probability(rabi, det[i], duration);
    return acc;
  };
  int n = std::max(spec.n_samples, 2);
  double prev = integrate(n);
  for (int attempt = 0; attempt < 8; ++attempt) {
    n *= 2;
    const double next = integrate(n);
    if (std::abs(next - prev) <= 1e-4 * std::abs(next)) return next;
    prev = next;
  }
  throw NumericalError("pi_fidelity_avg quadrature did not converge");
}

Sequence ramsey_sequence(double rabi, double tau, PulseModel model) {
  Sequence s;
  if (model == PulseModel::ideal) {
    s.steps = {IdealPulse{0.5 * pi}, Delay{tau}, IdealPulse{0.5 * pi}};
  } else {
    const Pulse half{rabi, 0.0, 0.5 * pi / rabi, 0.0};
    s.steps = {half, Delay{tau}, half};
  }
  return s;
}

Sequence echo_sequence(double rabi, double tau, double t2, PulseModel model) {
  Sequence s;
  s.t2 = t2;
  if (model == PulseModel::ideal) {
    s.steps = {IdealPulse{0.5 * pi}, Delay{tau}, IdealPulse{pi}, Delay{tau}};
  } else {
    s.steps = {Pulse{rabi, 0.0, 0.5 * pi / rabi, 0.0}, Delay{tau}, Pulse{rabi, 0.0, pi / rabi, 0.0},
               Delay{tau}};
  }
  return s;
}

Trace ramsey_trace(const EnsembleSpec& spec, double rabi, std::span<const double> tau_grid,
                   PulseModel model) {
  if (model == PulseModel::finite) require_rabi(rabi);
  require_sorted(tau_grid, "delay grid");
  return ensemble_average(spec, tau_grid, [&](const EnsembleMember& m, double tau) {
    return run_sequence(BlochVector{}, ramsey_sequence(rabi, tau, model), m.detuning, m.amplitude).w;
  });
}

Trace echo_trace(const EnsembleSpec& spec, double rabi, std::span<const double> tau_grid, double t2,
                 PulseModel model) {
  if (model == PulseModel::finite) require_rabi(rabi);
  require_sorted(tau_grid, "delay grid");
  if (!(t2 > 0.0)) throw InputError("t2 must be > 0");
  const std::vector<EnsembleMember> members = ensemble_members(spec);
  Trace out;
  out.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    const Sequence seq = echo_sequence(rabi, tau, t2, model);
    double u = 0.0, v = 0.0;
    for (const EnsembleMember& m : members) {
      const BlochVector b = run_sequence(BlochVector{}, seq, m.detuning, m.amplitude);
      u += m.weight * b.u;
      v += m.weight * b.v;
    }
    out.push_back({2.0 * tau, std::hypot(u, v)});
  }
  return out;
}

double first_maximum(const Trace& trace) {
  for (std::size_t i = 1; i + 1 < trace.size(); ++i) {
    const double y0 = trace[i - 1].y, y1 = trace[i].y, y2 = trace[i + 1].y;
    if (y1 > y0 && y1 >= y2) {
      // Vertex of the parabola through three points (uniform spacing assumed locally).
      const double h = trace[i + 1].x - trace[i].x;
      const double denom = y0 - 2.0 * y1 + y2;
      const double shift = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
      return trace[i].x + shift * h;
    }
  }
  throw NumericalError("trace has no local maximum");
}

}  // namespace erspin
