#include <doctest.h>

#include "erspin/bloch.hpp"
#include "erspin/errors.hpp"
#include "erspin/experiments.hpp"
#include "erspin/fit.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace erspin;
using std::numbers::pi;

namespace {

constexpr double kOmega = 2.0 * pi * 14.9e6;

EnsembleSpec line_only(double fwhm, int n = 2001) {
  EnsembleSpec e;
  e.detuning_line = {LineKind::lorentzian, fwhm, 0.0};
  e.rabi_spread = {1.0, 0.0};
  e.n_samples = n;
  return e;
}

}  // namespace

TEST_CASE("resonant pulses") {
  const BlochVector up = propagate(BlochVector{}, Pulse{kOmega, 0.0, pi / kOmega, 0.0}, 0.0);
  CHECK(std::abs(up.u) < 1e-9);
  CHECK(std::abs(up.v) < 1e-9);
  CHECK(std::abs(up.w - 1.0) < 1e-9);

  const BlochVector start{0.3, -0.4, std::sqrt(1.0 - 0.25)};
  const BlochVector cycle = propagate(start, Pulse{kOmega, 0.7, 2.0 * pi / kOmega, 0.0}, 0.0);
  CHECK(std::abs(cycle.u - start.u) < 1e-9);
  CHECK(std::abs(cycle.v - start.v) < 1e-9);
  CHECK(std::abs(cycle.w - start.w) < 1e-9);
}

TEST_CASE("off-resonant pi-length pulse follows the generalized Rabi formula") {
  const double det = kOmega / (2.0 * pi) * std::sqrt(3.0);
  const double t = pi / kOmega;
  const BlochVector b = propagate(BlochVector{}, Pulse{kOmega, 0.0, t, 0.0}, det);
  CHECK(std::abs(b.w + 1.0) < 1e-9);
  const auto ref = oracle::bloch_rk4({0.0, 0.0, -1.0}, kOmega, 0.0, det, t, 20000);
  CHECK(std::abs(ref[2] + 1.0) < 1e-9);
  for (double d : {0.0, 1e6, 4.5e6, 30e6}) {
    for (double tt : {5e-9, 33e-9, 71e-9}) {
      const double w = propagate(BlochVector{}, Pulse{kOmega, 0.0, tt, 0.0}, d).w;
      CHECK(0.5 * (1.0 + w) == doctest::Approx(flip_probability(kOmega, d, tt)).epsilon(1e-12));
    }
  }
}

TEST_CASE("propagate preserves norm and matches RK4 on random pulses") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_norm = 0.0, worst_diff = 0.0;
  for (int n = 0; n < 2000; ++n) {
    const double om = 2.0 * pi * 30e6 * u(rng);
    const double ph = 2.0 * pi * u(rng);
    const double det = 40e6 * (u(rng) - 0.5);
    const double t = 100e-9 * u(rng);
    const double theta = pi * u(rng), phi = 2.0 * pi * u(rng);
    const BlochVector b0{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    const BlochVector b = propagate(b0, Pulse{om, ph, t, 0.0}, det);
    worst_norm = std::max(worst_norm, std::abs(b.norm() - 1.0));
    const auto ref = oracle::bloch_rk4({b0.u, b0.v, b0.w}, om, ph, det, t, oracle::bloch_steps(om, det, t));
    worst_diff = std::max({worst_diff, std::abs(b.u - ref[0]), std::abs(b.v - ref[1]), std::abs(b.w - ref[2])});
  }
  CHECK(worst_norm < 1e-9);
  CHECK(worst_diff < 1e-6);
}

TEST_CASE("detuning offset adds to the spin detuning") {
  const BlochVector a = propagate(BlochVector{}, Pulse{kOmega, 0.3, 40e-9, 2e6}, 1e6);
  const BlochVector b = propagate(BlochVector{}, Pulse{kOmega, 0.3, 40e-9, 0.0}, 3e6);
  CHECK(a.u == doctest::Approx(b.u).epsilon(1e-14));
  CHECK(a.w == doctest::Approx(b.w).epsilon(1e-14));
}

TEST_CASE("ideal pulses are the infinite-Rabi limit") {
  const BlochVector b0{0.2, 0.5, -std::sqrt(1.0 - 0.29)};
  const BlochVector ideal = rotate(b0, IdealPulse{0.5 * pi, 0.4});
  const double fast = 2.0 * pi * 1e15;
  const BlochVector finite = propagate(b0, Pulse{fast, 0.4, 0.5 * pi / fast, 0.0}, 5e6);
  CHECK(ideal.u == doctest::Approx(finite.u).epsilon(1e-6));
  CHECK(ideal.v == doctest::Approx(finite.v).epsilon(1e-6));
  CHECK(ideal.w == doctest::Approx(finite.w).epsilon(1e-6));
}

TEST_CASE("free precession and t2") {
  const BlochVector b{1.0, 0.0, 0.0};
  const BlochVector p = free_precession(b, 1e6, 0.25e-6);
  CHECK(std::abs(p.u) < 1e-12);
  CHECK(p.v == doctest::Approx(1.0));
  const BlochVector d = free_precession(b, 0.0, 1e-6, 1e-6);
  CHECK(d.u == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("ensemble nodes") {
  SUBCASE("weights sum to one") {
    for (LineKind k : {LineKind::lorentzian, LineKind::gaussian}) {
      EnsembleSpec e;
      e.detuning_line.kind = k;
      double s = 0.0;
      for (const EnsembleMember& m : ensemble_members(e)) s += m.weight;
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(ensemble_members(e).size() == 2001u * 11u);
    }
  }
  SUBCASE("single sample is the line center") {
    EnsembleSpec e = line_only(9e6, 1);
    const auto m = ensemble_members(e);
    REQUIRE(m.size() == 1u);
    CHECK(m[0].detuning == 0.0);
  }
  SUBCASE("monte carlo needs a seed and is reproducible") {
    EnsembleSpec e;
    e.quadrature = Quadrature::monte_carlo;
    CHECK_THROWS_AS(ensemble_members(e), InputError);
    e.seed = 42;
    const auto a = ensemble_members(e), b = ensemble_members(e);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].detuning == b[i].detuning);
      CHECK(a[i].amplitude == b[i].amplitude);
    }
  }
  SUBCASE("lorentzian quantile nodes reproduce the line cdf") {
    const auto m = ensemble_members(line_only(9e6, 1000));
    int below = 0;
    for (const EnsembleMember& x : m) below += x.detuning < 4.5e6;
    CHECK(below / 1000.0 == doctest::Approx(0.75).epsilon(2e-3));
  }
}

TEST_CASE("rabi trace") {
  const std::vector<double> t = linspace(0.0, 300e-9, 601);
  SUBCASE("single spin on resonance is a pure cosine") {
    const Trace tr = rabi_trace(line_only(9e6, 1), kOmega, t);
    for (const TracePoint& p : tr) CHECK(p.y == doctest::Approx(-std::cos(kOmega * p.x)).epsilon(1e-12));
    CHECK(first_maximum(tr) == doctest::Approx(pi / kOmega).epsilon(1e-4));
  }
  SUBCASE("excited preset oscillates slower") {
    const double slow = 2.0 * pi * 6.2e6;
    const Trace tr = rabi_trace(line_only(9e6, 1), slow, linspace(0.0, 300e-9, 3001));
    CHECK(first_maximum(tr) == doctest::Approx(80.6e-9).epsilon(1e-3));
  }
  SUBCASE("monte carlo agrees with the grid within three standard errors") {
    EnsembleSpec grid;
    EnsembleSpec mc = grid;
    mc.quadrature = Quadrature::monte_carlo;
    mc.n_samples = 20000;
    mc.seed = 7;
    const std::vector<double> pts{10e-9, 33e-9, 60e-9, 120e-9, 250e-9};
    const Trace g = rabi_trace(grid, kOmega, pts);
    const Trace m = rabi_trace(mc, kOmega, pts);
    const Trace se = rabi_trace_stderr(mc, kOmega, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(se[i].y > 0.0);
      CHECK(std::abs(m[i].y - g[i].y) < 3.0 * se[i].y);
    }
  }
  SUBCASE("rejects bad input") {
    CHECK_THROWS_AS(rabi_trace(EnsembleSpec{}, 0.0, t), InputError);
    const std::vector<double> bad{0.0, 2e-9, 1e-9};
    CHECK_THROWS_AS(rabi_trace(EnsembleSpec{}, kOmega, bad), InputError);
  }
}

TEST_CASE("first maximum") {
  Trace t;
  for (double x : linspace(0.0, 10.0, 101)) t.push_back({x, -std::cos(x)});
  CHECK(first_maximum(t) == doctest::Approx(pi).epsilon(1e-4));
  Trace mono{{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}};
  CHECK_THROWS_AS(first_maximum(mono), NumericalError);
}

TEST_CASE("pi fidelity at the line center") {
  CHECK(pi_fidelity_center(kOmega, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
  // fixed amplitude error delta: infidelity sin^2(pi delta / 2)
  const double delta = 0.02;
  CHECK(1.0 - pi_fidelity_center(kOmega, {1.0 + delta, 0.0}) ==
        doctest::Approx(std::pow(std::sin(pi * delta / 2.0), 2)).epsilon(1e-9));
  CHECK(1.0 - pi_fidelity_center(kOmega, {1.0 + delta, 0.0}) == doctest::Approx(9.9e-4).epsilon(2e-3));
  CHECK(pi_fidelity_center(kOmega, {1.0, 0.02}) >= 0.999);
  // uniform spread: closed-form mean of sin^2 over the interval
  const double w = 0.2;
  const double exact = 0.5 - 0.5 * std::sin(pi * w / 2.0) / (pi * w / 2.0) * std::cos(pi);
  CHECK(pi_fidelity_center(kOmega, {1.0, w}, 4001) == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("averaged pi fidelity") {
  const EnsembleSpec e = line_only(9e6);
  const double f = pi_fidelity_avg(kOmega, e);
  CHECK(f == doctest::Approx(0.7273472575).epsilon(1e-4));

  SUBCASE("narrow line approaches unity") {
    CHECK(pi_fidelity_avg(kOmega, line_only(1.0)) == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("monotonic in the Rabi frequency") {
    double prev = 0.0;
    for (double mhz : {2.0, 6.2, 10.0, 14.9, 30.0}) {
      const double v = pi_fidelity_avg(2.0 * pi * mhz * 1e6, e);
      CHECK(v > prev);
      prev = v;
    }
    CHECK(pi_fidelity_avg(2.0 * pi * 6.2e6, e) == doctest::Approx(0.5078955866).epsilon(1e-4));
  }
  SUBCASE("agrees with a dense detuning sum") {
    const double ref = oracle::lorentz_average(
        [](double d) { return flip_probability(kOmega, d, pi / kOmega); }, 9e6, 400.0, 400000);
    CHECK(f == doctest::Approx(ref).epsilon(1e-4));
  }
}

TEST_CASE("ramsey") {
  SUBCASE("zero delay is a full transfer") {
    for (PulseModel pm : {PulseModel::finite, PulseModel::ideal}) {
      const Trace t = ramsey_trace(line_only(9e6, 1), kOmega, std::vector<double>{0.0}, pm);
      CHECK(t[0].y == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("ideal pulses decay with 1 / (pi fwhm)") {
    const Trace t = ramsey_trace(line_only(9e6, 20001), kOmega, linspace(0.0, 200e-9, 401),
                                 PulseModel::ideal);
    const FitResult f = fit(t, FitModel::single_exponential);
    CHECK(f.value("tau") == doctest::Approx(1.0 / (pi * 9e6)).epsilon(0.01));
    CHECK(f.value("tau") == doctest::Approx(35.4e-9).epsilon(0.01));
  }
  SUBCASE("no decay without broadening") {
    const Trace t = ramsey_trace(line_only(9e6, 1), kOmega, linspace(0.0, 200e-9, 41), PulseModel::ideal);
    for (const TracePoint& p : t) CHECK(p.y == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("echo") {
  const std::vector<double> tau = linspace(0.0, 500e-9, 26);
  const double inf = std::numeric_limits<double>::infinity();
  SUBCASE("ideal pulses refocus every detuning") {
    for (double d : linspace(-9e6, 9e6, 37)) {
      for (double t : tau) {
        const BlochVector b = run_sequence(BlochVector{}, echo_sequence(kOmega, t, inf, PulseModel::ideal), d);
        CHECK(std::abs(b.transverse() - 1.0) < 1e-6);
      }
    }
    for (const TracePoint& p : echo_trace(line_only(9e6), kOmega, tau, inf, PulseModel::ideal)) {
      CHECK(std::abs(p.y - 1.0) < 1e-6);
    }
  }
  SUBCASE("amplitude does not depend on the line width") {
    const Trace a = echo_trace(line_only(1e6), kOmega, tau, inf, PulseModel::ideal);
    const Trace b = echo_trace(line_only(9e6), kOmega, tau, inf, PulseModel::ideal);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].y - b[i].y) < 1e-6);
  }
  SUBCASE("phenomenological decay") {
    const Trace t = echo_trace(line_only(9e6), kOmega, std::vector<double>{0.5e-6}, 1e-6, PulseModel::ideal);
    CHECK(t[0].x == doctest::Approx(1e-6));
    CHECK(t[0].y == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  }
}
