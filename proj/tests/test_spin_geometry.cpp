#include <doctest.h>

#include "erspin/constants.hpp"
#include "erspin/errors.hpp"
#include "erspin/spin_geometry.hpp"

#include <cmath>
#include <random>

using namespace erspin;

TEST_CASE("effective g of isotropic tensor is direction independent") {
  const GTensor g = GTensor::isotropic(2.0);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Vec3 d = Vec3(n(rng), n(rng), n(rng)).normalized();
    CHECK(effective_g(g, d) == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("effective g along principal axes and diagonals") {
  const GTensor g = GTensor::diagonal(10.5, 1.6, 3.0);
  CHECK(effective_g(g, axis::d1) == doctest::Approx(10.5));
  CHECK(effective_g(g, axis::d2) == doctest::Approx(1.6));
  const Vec3 diag = (axis::d1 + axis::d2).normalized();
  // sqrt(n^T g g^T n) written out for n = (1, 1, 0) / sqrt 2
  CHECK(effective_g(g, diag) == doctest::Approx(std::sqrt((10.5 * 10.5 + 1.6 * 1.6) / 2.0)));
  CHECK(effective_g(g, diag) == doctest::Approx(7.51).epsilon(1e-3));
}

TEST_CASE("effective g is even in the direction") {
  Mat3 m;
  m << 3.0, 0.4, -0.2, 0.4, 8.0, 1.1, -0.2, 1.1, 5.0;
  const GTensor g(m);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Vec3 d = Vec3(n(rng), n(rng), n(rng)).normalized();
    CHECK(effective_g(g, d) == doctest::Approx(effective_g(g, -d)).epsilon(1e-15));
  }
}

TEST_CASE("g tensor validation") {
  Mat3 asym = Mat3::Identity();
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS(GTensor{asym}, InputError);
  CHECK_THROWS_AS(GTensor::diagonal(-1.0, 1.0, 1.0), InputError);
  CHECK_THROWS_AS(effective_g(GTensor::isotropic(2.0), Vec3(1.0, 1.0, 0.0)), InputError);
}

TEST_CASE("zeeman splitting") {
  const double mu_b = 9.2740100783e-24, h = 6.62607015e-34;
  CHECK(zeeman_splitting(10.5, 21.23e-3) == doctest::Approx(10.5 * mu_b * 21.23e-3 / h));
  CHECK(std::abs(zeeman_splitting(10.5, 21.23e-3) - 3.120e9) < 1e6);
  CHECK(zeeman_splitting(0.0, 0.5) == 0.0);
  CHECK(zeeman_splitting(10.5, 0.0) == 0.0);
  CHECK_THROWS_AS(zeeman_splitting(10.5, -1e-3), InputError);
  CHECK(field_for_splitting(10.5, zeeman_splitting(10.5, 0.013)) == doctest::Approx(0.013));
}

TEST_CASE("splitting and rabi frequency are linear in the field") {
  for (double b : {1e-4, 2.1e-2, 0.7}) {
    CHECK(zeeman_splitting(10.5, 3.0 * b) == doctest::Approx(3.0 * zeeman_splitting(10.5, b)).epsilon(1e-15));
    CHECK(rabi_frequency(1.6, 3.0 * b) == doctest::Approx(3.0 * rabi_frequency(1.6, b)).epsilon(1e-15));
  }
}

TEST_CASE("rabi frequency") {
  const double mu_b = 9.2740100783e-24, hbar = 6.62607015e-34 / (2.0 * M_PI);
  const double b1 = field_for_rabi(1.6, 2.0 * M_PI * 14.9e6);
  CHECK(b1 == doctest::Approx(2.0 * hbar * 2.0 * M_PI * 14.9e6 / (1.6 * mu_b)));
  CHECK(b1 == doctest::Approx(1.33e-3).epsilon(2e-3));
  CHECK(rabi_frequency(0.95, b1) / (2.0 * M_PI) == doctest::Approx(8.85e6).epsilon(2e-3));
  CHECK(rabi_frequency(1.6, 0.0) == 0.0);
  CHECK_THROWS_AS(rabi_frequency(1.6, -1.0), InputError);
}

TEST_CASE("presets reproduce the quoted scalars") {
  const SpinPreset g = ground_config();
  const EffectiveGFactors ge = effective_gfactors(g.tensor, g.field);
  CHECK(ge.g_parallel == doctest::Approx(10.5));
  CHECK(ge.g_mw == doctest::Approx(1.6));
  CHECK(std::abs(g.field.static_field - 21.23e-3) < 1e-5);
  CHECK(g.field.static_field > 0.015);
  CHECK(g.field.static_field < 0.025);
  CHECK(g.rabi_hz == 14.9e6);
  CHECK_FALSE(g.excited_g_parallel.has_value());

  const SpinPreset e = excited_config();
  const EffectiveGFactors ee = effective_gfactors(e.tensor, e.field);
  CHECK(ee.g_parallel == doctest::Approx(10.0));
  CHECK(ee.g_mw == doctest::Approx(0.95));
  CHECK(e.rabi_hz == 6.2e6);
  CHECK(zeeman_splitting(ee.g_parallel, e.field.static_field) == doctest::Approx(3.12e9));

  CHECK(preset_by_name("ground-config").name == "ground-config");
  CHECK_THROWS_AS(preset_by_name("mystery"), InputError);
}

TEST_CASE("field config validation") {
  FieldConfig fc;
  fc.static_dir = Vec3(1.0, 1.0, 0.0);
  CHECK_THROWS_AS(fc.validate(), InputError);
  fc.static_dir = axis::d2;
  fc.static_field = -0.1;
  CHECK_THROWS_AS(fc.validate(), InputError);
}
