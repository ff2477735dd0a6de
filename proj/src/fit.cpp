#include "erspin/fit.hpp"

#include "erspin/errors.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace erspin {

namespace {

using std::numbers::pi;

// How a parameter transforms when x -> (x - shift) / xs and y -> y / ys.
enum class Kind { amplitude, duration, rate, position, angle };

std::vector<Kind> kinds(FitModel m) {
  switch (m) {
    case FitModel::single_exponential:
      return {Kind::amplitude, Kind::duration, Kind::amplitude};
    case FitModel::biexponential:
      return {Kind::amplitude, Kind::duration, Kind::amplitude, Kind::duration, Kind::amplitude};
    case FitModel::sinusoid_decay:
      return {Kind::amplitude, Kind::rate, Kind::angle, Kind::rate, Kind::amplitude};
    case FitModel::lorentzian:
      return {Kind::amplitude, Kind::position, Kind::duration, Kind::amplitude};
  }
  return {};
}

struct Scaling {
  double shift = 0.0;
  double xs = 1.0;
  double ys = 1.0;

  double to_scaled(Kind k, double v) const {
    switch (k) {
      case Kind::amplitude: return v / ys;
      case Kind::duration: return v / xs;
      case Kind::rate: return v * xs;
      case Kind::position: return (v - shift) / xs;
      case Kind::angle: return v;
    }
    return v;
  }
  double from_scaled(Kind k, double v) const {
    switch (k) {
      case Kind::amplitude: return v * ys;
      case Kind::duration: return v * xs;
      case Kind::rate: return v / xs;
      case Kind::position: return v * xs + shift;
      case Kind::angle: return v;
    }
    return v;
  }
  double sigma_from_scaled(Kind k, double s) const {
    switch (k) {
      case Kind::amplitude: return s * ys;
      case Kind::duration:
      case Kind::position: return s * xs;
      case Kind::rate: return s / xs;
      case Kind::angle: return s;
    }
    return s;
  }
};

struct Residuals {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  FitModel model;
  Eigen::VectorXd x, y;

  int inputs() const { return static_cast<int>(parameter_names(model).size()); }
  int values() const { return static_cast<int>(x.size()); }

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const {
    const std::vector<double> pv(p.data(), p.data() + p.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) r[i] = evaluate(model, pv, x[i]) - y[i];
    return 0;
  }

  // Central differences. Parameters are scaled to order one, so the step has
  // an absolute floor; a purely relative step collapses for values near zero.
  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& jac) const {
    const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    Eigen::VectorXd q = p, rp(values()), rm(values());
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      const double h = h0 * std::max(std::abs(p[j]), 1.0);
      q[j] = p[j] + h;
      (*this)(q, rp);
      q[j] = p[j] - h;
      (*this)(q, rm);
      q[j] = p[j];
      jac.col(j) = (rp - rm) / (2.0 * h);
    }
    return 0;
  }
};

// Position at which |y - base| first falls below |y0 - base| / e.
std::optional<double> one_over_e(const Trace& t, double base, std::size_t from = 0) {
  const double target = std::abs(t[from].y - base) / std::numbers::e;
  for (std::size_t i = from; i < t.size(); ++i) {
    if (std::abs(t[i].y - base) <= target) return t[i].x - t[from].x;
  }
  return std::nullopt;
}

double span(const Trace& t) { return t.back().x - t.front().x; }

std::vector<double> guess_single(const Trace& t) {
  const double c = t.back().y;
  const double a = t.front().y - c;
  const double tau = one_over_e(t, c).value_or(span(t) / 3.0);
  return {a * std::exp(t.front().x / std::max(tau, 1e-300)), std::max(tau, span(t) / 1000.0), c};
}

std::vector<double> guess_biexponential(const Trace& t) {
  // Slow component from the last two thirds, fast from what is left early on.
  const double split = t.front().x + span(t) / 3.0;
  Trace tail, head;
  for (const TracePoint& p : t) (p.x >= split ? tail : head).push_back(p);
  if (tail.size() < 6 || head.size() < 3) {
    const auto s = guess_single(t);
    return {0.5 * s[0], s[1] / 5.0, 0.5 * s[0], s[1], s[2]};
  }
  const FitResult slow = fit(tail, FitModel::single_exponential);
  const double a2 = slow.value("amplitude"), tau2 = slow.value("tau"), c = slow.value("offset");
  Trace rest;
  for (const TracePoint& p : head) rest.push_back({p.x, p.y - a2 * std::exp(-p.x / tau2) - c});
  const double tau1 = one_over_e(rest, 0.0).value_or(span(head) / 3.0);
  const double a1 = rest.front().y * std::exp(rest.front().x / std::max(tau1, 1e-300));
  return {a1, std::max(tau1, span(t) / 1000.0), a2, tau2, c};
}

std::vector<double> guess_sinusoid(const Trace& t) {
  // Frequency and phase from the peak of the discrete spectrum, evaluated on
  // a grid zero-padded eightfold up to the mean-spacing Nyquist frequency.
  const std::size_t n = t.size();
  double mean = 0.0;
  for (const TracePoint& p : t) mean += p.y;
  mean /= double(n);
  const double T = span(t);
  const double df = 1.0 / (8.0 * T);
  const double f_max = 0.5 * double(n - 1) / T;
  double best_f = df, best_mag = -1.0;
  std::complex<double> best{};
  for (double f = df; f <= f_max; f += df) {
    std::complex<double> acc{};
    for (const TracePoint& p : t) acc += (p.y - mean) * std::polar(1.0, -2.0 * pi * f * p.x);
    if (std::abs(acc) > best_mag) {
      best_mag = std::abs(acc);
      best_f = f;
      best = acc;
    }
  }
  const double amp = 2.0 * best_mag / double(n);
  return {amp, best_f, std::arg(best), 0.0, mean};
}

std::vector<double> guess_lorentzian(const Trace& t) {
  const double c = 0.5 * (t.front().y + t.back().y);
  std::size_t ipk = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t[i].y - c) > std::abs(t[ipk].y - c)) ipk = i;
  }
  const double a = t[ipk].y - c;
  double lo = t.front().x, hi = t.back().x;
  for (std::size_t i = ipk; i-- > 0;) {
    if (std::abs(t[i].y - c) <= 0.5 * std::abs(a)) { lo = t[i].x; break; }
  }
  for (std::size_t i = ipk; i < t.size(); ++i) {
    if (std::abs(t[i].y - c) <= 0.5 * std::abs(a)) { hi = t[i].x; break; }
  }
  return {a, t[ipk].x, std::max(hi - lo, span(t) / double(t.size())), c};
}

}  // namespace

std::string_view to_string(FitModel m) {
  switch (m) {
    case FitModel::single_exponential: return "single-exponential";
    case FitModel::biexponential: return "biexponential";
    case FitModel::sinusoid_decay: return "sinusoid-decay";
    case FitModel::lorentzian: return "lorentzian";
  }
  return "";
}

FitModel fit_model_from_string(std::string_view s) {
  for (FitModel m : {FitModel::single_exponential, FitModel::biexponential,
                     FitModel::sinusoid_decay, FitModel::lorentzian}) {
    if (to_string(m) == s) return m;
  }
  throw InputError("unknown fit model '" + std::string(s) + "'");
}

std::vector<std::string> parameter_names(FitModel m) {
  switch (m) {
    case FitModel::single_exponential: return {"amplitude", "tau", "offset"};
    case FitModel::biexponential: return {"amp_fast", "tau_fast", "amp_slow", "tau_slow", "offset"};
    case FitModel::sinusoid_decay: return {"amplitude", "frequency", "phase", "decay_rate", "offset"};
    case FitModel::lorentzian: return {"amplitude", "center", "fwhm", "offset"};
  }
  return {};
}

double FitResult::value(std::string_view name) const {
  for (const FitParameter& p : params) {
    if (p.name == name) return p.value;
  }
  throw InputError("fit has no parameter '" + std::string(name) + "'");
}

double FitResult::sigma(std::string_view name) const {
  for (const FitParameter& p : params) {
    if (p.name == name) return p.sigma;
  }
  throw InputError("fit has no parameter '" + std::string(name) + "'");
}

std::vector<double> FitResult::values() const {
  std::vector<double> v;
  for (const FitParameter& p : params) v.push_back(p.value);
  return v;
}

double evaluate(FitModel m, const std::vector<double>& p, double x) {
  switch (m) {
    case FitModel::single_exponential:
      return p[0] * std::exp(-x / p[1]) + p[2];
    case FitModel::biexponential:
      return p[0] * std::exp(-x / p[1]) + p[2] * std::exp(-x / p[3]) + p[4];
    case FitModel::sinusoid_decay:
      return p[4] + p[0] * std::exp(-p[3] * x) * std::cos(2.0 * pi * p[1] * x + p[2]);
    case FitModel::lorentzian: {
      const double u = 2.0 * (x - p[1]) / p[2];
      return p[3] + p[0] / (1.0 + u * u);
    }
  }
  return 0.0;
}

std::vector<double> initial_guess(const Trace& trace, FitModel m) {
  switch (m) {
    case FitModel::single_exponential: return guess_single(trace);
    case FitModel::biexponential: return guess_biexponential(trace);
    case FitModel::sinusoid_decay: return guess_sinusoid(trace);
    case FitModel::lorentzian: return guess_lorentzian(trace);
  }
  return {};
}

FitResult fit(const Trace& trace, FitModel m, const std::optional<std::vector<double>>& guess) {
  const std::vector<Kind> k = kinds(m);
  const std::size_t np = k.size();
  if (trace.size() < 2 * np) {
    throw InputError("fit needs at least " + std::to_string(2 * np) + " points");
  }
  double y_min = trace.front().y, y_max = trace.front().y, y_abs = 0.0;
  for (const TracePoint& p : trace) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InputError("trace has non-finite values");
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
    y_abs = std::max(y_abs, std::abs(p.y));
  }
  if (y_max - y_min <= 1e-14 * std::max(y_abs, 1e-300)) {
    throw NumericalError("degenerate fit: trace is constant");
  }
  if (!(span(trace) > 0.0)) throw NumericalError("degenerate fit: zero x span");

  const std::vector<double> start = guess ? *guess : initial_guess(trace, m);
  if (start.size() != np) throw InputError("initial guess has the wrong number of parameters");

  Scaling sc;
  if (m == FitModel::lorentzian) sc.shift = trace.front().x;
  sc.xs = 0.0;
  for (const TracePoint& p : trace) sc.xs = std::max(sc.xs, std::abs(p.x - sc.shift));
  sc.ys = y_abs;

  Residuals f{m, Eigen::VectorXd(trace.size()), Eigen::VectorXd(trace.size())};
  for (std::size_t i = 0; i < trace.size(); ++i) {
    f.x[Eigen::Index(i)] = sc.to_scaled(Kind::position, trace[i].x);
    f.y[Eigen::Index(i)] = trace[i].y / sc.ys;
  }
  Eigen::VectorXd p(np);
  for (std::size_t i = 0; i < np; ++i) p[Eigen::Index(i)] = sc.to_scaled(k[i], start[i]);

  Eigen::VectorXd r(trace.size());
  f(p, r);
  const double initial_norm = r.norm() * sc.ys;
  if (!std::isfinite(initial_norm)) throw NumericalError("initial guess gives non-finite residuals");

  Eigen::LevenbergMarquardt<Residuals> lm(f);
  lm.parameters.ftol = 1e-15;
  lm.parameters.xtol = 1e-15;
  lm.parameters.maxfev = 4000 * static_cast<int>(np);
  lm.minimize(p);
  // A second pass restarts the trust region from the converged point.
  lm.minimize(p);

  f(p, r);
  if (!r.allFinite()) throw NumericalError("fit diverged");
  const double rss = r.squaredNorm();

  Eigen::MatrixXd jac(trace.size(), np);
  f.df(p, jac);
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
  lu.setThreshold(1e-13);
  if (!lu.isInvertible()) throw NumericalError("degenerate fit: singular normal matrix");
  const Eigen::MatrixXd cov = lu.inverse() * (rss / double(trace.size() - np));

  FitResult out{m, {}, std::sqrt(rss) * sc.ys, initial_norm};
  const std::vector<std::string> names = parameter_names(m);
  for (std::size_t i = 0; i < np; ++i) {
    const auto ii = Eigen::Index(i);
    out.params.push_back({names[i], sc.from_scaled(k[i], p[ii]),
                          sc.sigma_from_scaled(k[i], std::sqrt(std::max(0.0, cov(ii, ii))))});
  }
  // Canonical forms: fast component first, positive sinusoid amplitude and
  // width, phase wrapped to (-pi, pi].
  if (m == FitModel::biexponential && out.params[1].value > out.params[3].value) {
    std::swap(out.params[0].value, out.params[2].value);
    std::swap(out.params[0].sigma, out.params[2].sigma);
    std::swap(out.params[1].value, out.params[3].value);
    std::swap(out.params[1].sigma, out.params[3].sigma);
  }
  if (m == FitModel::sinusoid_decay) {
    if (out.params[1].value < 0.0) {
      out.params[1].value = -out.params[1].value;
      out.params[2].value = -out.params[2].value;
    }
    if (out.params[0].value < 0.0) {
      out.params[0].value = -out.params[0].value;
      out.params[2].value += pi;
    }
    out.params[2].value = std::remainder(out.params[2].value, 2.0 * pi);
  }
  if (m == FitModel::lorentzian) out.params[2].value = std::abs(out.params[2].value);
  return out;
}

}  // namespace erspin
