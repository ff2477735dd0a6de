#include <doctest.h>

#include "erspin/errors.hpp"
#include "erspin/microwave.hpp"
#include "erspin/spin_geometry.hpp"

#include <cmath>
#include <numbers>

using namespace erspin;
using std::numbers::pi;

namespace {

ResonatorParams calibrated() {
  ResonatorParams rp;
  rp.conversion = calibrate_conversion(2.0 * pi * 14.9e6, 1.6, 100.0);
  return rp;
}

}  // namespace

TEST_CASE("resonator transmission") {
  const ResonatorParams rp;
  CHECK(s21(rp, 3.12e9) == doctest::Approx(-5.0).epsilon(1e-15));
  CHECK(s21_relative(rp, 3.12e9 + 30e6) == doctest::Approx(-10.0 * std::log10(2.0)));
  CHECK(s21_relative(rp, 3.12e9 - 30e6) == doctest::Approx(-10.0 * std::log10(2.0)));
  // 300 MHz is ten half-widths: 1 / (1 + 100)
  CHECK(s21_relative(rp, 3.12e9 + 300e6) == doctest::Approx(-10.0 * std::log10(101.0)));
  CHECK(s21_relative(rp, 3.12e9 + 300e6) == doctest::Approx(-20.0).epsilon(0.01));
  CHECK(rp.quality_factor() == doctest::Approx(52.0));
}

TEST_CASE("transmission is symmetric and falls off monotonically") {
  const ResonatorParams rp;
  double prev = s21(rp, rp.f0);
  for (int k = 1; k <= 200; ++k) {
    const double d = 2e6 * k;
    CHECK(s21(rp, rp.f0 + d) == doctest::Approx(s21(rp, rp.f0 - d)).epsilon(1e-12));
    CHECK(s21(rp, rp.f0 + d) < prev);
    prev = s21(rp, rp.f0 + d);
  }
}

TEST_CASE("power to field conversion") {
  const ResonatorParams rp = calibrated();
  CHECK(*rp.conversion == doctest::Approx(1.3307e-4).epsilon(1e-4));
  const double b1 = field_from_power(rp, 100.0, rp.f0);
  CHECK(b1 == doctest::Approx(1.33e-3).epsilon(2e-3));
  CHECK(rabi_frequency(1.6, b1) == doctest::Approx(2.0 * pi * 14.9e6).epsilon(1e-12));
  CHECK(field_from_power(rp, 0.0, rp.f0) == 0.0);
  CHECK(field_from_power(rp, 100.0, rp.f0 + 30e6) == doctest::Approx(b1 / std::sqrt(2.0)).epsilon(1e-12));
  for (double p : {0.1, 10.0, 1000.0}) {
    CHECK(field_from_power(rp, 4.0 * p, rp.f0) == doctest::Approx(2.0 * field_from_power(rp, p, rp.f0)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(field_from_power(rp, -1.0, rp.f0), InputError);
  CHECK_THROWS_AS(field_from_power(ResonatorParams{}, 1.0, 3.12e9), InputError);
}

TEST_CASE("heating budget") {
  const HeatingModel hm;
  SUBCASE("cw at 1 mW") {
    const HeatingBudget b = heating_budget(hm, 1e-3, 1.0, 1.0);
    CHECK(b.delta_t == 0.05);
    CHECK(b.ok);
  }
  SUBCASE("pulsed at 100 W") {
    const HeatingBudget b = heating_budget(hm, 100.0, 33e-9, 10e-3);
    // 0.1 K / (50 K/W) = 2 mW average; 2 mW / (100 W * 33 ns)
    CHECK(b.max_rep_rate == doctest::Approx(2e-3 / (100.0 * 33e-9)));
    CHECK(b.max_rep_rate == doctest::Approx(606.0).epsilon(1e-3));
    CHECK(b.delta_t == doctest::Approx(50.0 * 100.0 * 33e-9 / 10e-3));
    CHECK(b.ok);
  }
  SUBCASE("linear in duty cycle") {
    const double base = heating_budget(hm, 100.0, 33e-9, 1e-3).delta_t;
    for (double k : {2.0, 5.0, 100.0}) {
      CHECK(heating_budget(hm, 100.0, 33e-9, k * 1e-3).delta_t == doctest::Approx(base / k).epsilon(1e-14));
      CHECK(heating_budget(hm, 100.0, k * 33e-9, 1e-3).delta_t == doctest::Approx(base * k).epsilon(1e-14));
    }
    CHECK(heating_budget(hm, 100.0, 33e-9, 1e9).delta_t < 1e-9);
  }
  SUBCASE("over budget") {
    CHECK_FALSE(heating_budget(hm, 100.0, 1e-6, 1e-4).ok);
  }
  SUBCASE("bad input") {
    CHECK_THROWS_AS(heating_budget(hm, 1.0, 2e-6, 1e-6), InputError);
    CHECK_THROWS_AS(heating_budget(hm, 1.0, 0.0, 1e-6), InputError);
    CHECK_THROWS_AS(heating_budget(hm, -1.0, 1e-6, 1e-3), InputError);
  }
}

TEST_CASE("field homogeneity maps to a Rabi amplitude spread") {
  const AmplitudeSpread a = rabi_spread_from_homogeneity(FieldHomogeneity{});
  CHECK(a.center == 1.0);
  CHECK(a.width == 0.02);
  CHECK_THROWS_AS(rabi_spread_from_homogeneity(FieldHomogeneity{-0.1, ""}), InputError);
}
