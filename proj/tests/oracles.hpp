#pragma once

// Brute-force reference integrators, written independently of the library
// propagators. Deliberately slow and simple.

#include <array>
#include <cmath>
#include <numbers>

namespace oracle {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPlanck = 6.62607015e-34;
constexpr double kBoltzmann = 1.380649e-23;

using Vec = std::array<double, 3>;

// Bloch equations dB/dt = W x B, W = (Om cos ph, Om sin ph, 2 pi det), fixed-step RK4.
inline Vec bloch_rk4(Vec b, double om, double ph, double det, double t, int steps) {
  const Vec w{om * std::cos(ph), om * std::sin(ph), kTwoPi * det};
  auto f = [&w](const Vec& x) {
    return Vec{w[1] * x[2] - w[2] * x[1], w[2] * x[0] - w[0] * x[2], w[0] * x[1] - w[1] * x[0]};
  };
  const double h = t / steps;
  for (int n = 0; n < steps; ++n) {
    const Vec k1 = f(b);
    Vec y;
    for (int i = 0; i < 3; ++i) y[i] = b[i] + 0.5 * h * k1[i];
    const Vec k2 = f(y);
    for (int i = 0; i < 3; ++i) y[i] = b[i] + 0.5 * h * k2[i];
    const Vec k3 = f(y);
    for (int i = 0; i < 3; ++i) y[i] = b[i] + h * k3[i];
    const Vec k4 = f(y);
    for (int i = 0; i < 3; ++i) b[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return b;
}

// Enough steps that the rotation per step stays below `max_angle`.
inline int bloch_steps(double om, double det, double t, double max_angle = 2e-3) {
  const double rate = std::hypot(om, kTwoPi * det);
  return std::max(1, static_cast<int>(std::ceil(rate * t / max_angle)));
}

struct Rates {
  double t1_opt, t1_spin, branch_same, pump_flip, pump_preserve, temperature, splitting,
      excited_relax;
};

using Pop = std::array<double, 4>;  // gdn, gup, edn, eup

// Population flux balance written out level by level.
inline Pop rate_rhs(const Rates& r, const Pop& p) {
  const double x = kPlanck * r.splitting / (2.0 * kBoltzmann * r.temperature);
  const double pol = std::isinf(r.temperature) ? 0.0 : std::tanh(x);
  const double up = 0.5 * (1.0 - pol) / r.t1_spin;  // gdn -> gup
  const double dn = 0.5 * (1.0 + pol) / r.t1_spin;  // gup -> gdn
  const double g = 1.0 / r.t1_opt;
  const double b = r.branch_same;
  const double gdn = p[0], gup = p[1], edn = p[2], eup = p[3];
  const double flip = r.pump_flip * (gup - edn);
  const double pres = r.pump_preserve * (gdn - edn);
  return {
      -up * gdn + dn * gup + g * (b * edn + (1.0 - b) * eup) - pres,
      up * gdn - dn * gup + g * ((1.0 - b) * edn + b * eup) - flip,
      -g * edn + flip + pres - r.excited_relax * (edn - eup),
      -g * eup + r.excited_relax * (edn - eup),
  };
}

inline Pop rate_rk4(const Rates& r, Pop p, double t, int steps) {
  const double h = t / steps;
  auto axpy = [](const Pop& a, double s, const Pop& k) {
    return Pop{a[0] + s * k[0], a[1] + s * k[1], a[2] + s * k[2], a[3] + s * k[3]};
  };
  for (int n = 0; n < steps; ++n) {
    const Pop k1 = rate_rhs(r, p);
    const Pop k2 = rate_rhs(r, axpy(p, 0.5 * h, k1));
    const Pop k3 = rate_rhs(r, axpy(p, 0.5 * h, k2));
    const Pop k4 = rate_rhs(r, axpy(p, h, k3));
    for (int i = 0; i < 4; ++i) p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return p;
}

inline double fastest_rate(const Rates& r) {
  return 2.0 * r.pump_flip + 2.0 * r.pump_preserve + 1.0 / r.t1_opt + 2.0 / r.t1_spin +
         2.0 * r.excited_relax;
}

// Dense uniform detuning sum of L(det) * P(det) over +-span_fwhm * fwhm for a
// unit-area Lorentzian, with the analytic tail mass added for the remainder
// (P -> 0 there, so the tails only enter through the normalization).
template <class F>
double lorentz_average(F&& probability, double fwhm, double span_fwhm, int n) {
  const double hw = 0.5 * fwhm;
  const double lim = span_fwhm * fwhm;
  const double h = 2.0 * lim / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = -lim + (i + 0.5) * h;
    acc += hw / std::numbers::pi / (d * d + hw * hw) * probability(d) * h;
  }
  return acc;
}

}  // namespace oracle
