#include "erspin/spin_geometry.hpp"

#include "erspin/constants.hpp"
#include "erspin/errors.hpp"

#include <cmath>

namespace erspin {

namespace {

constexpr double kUnitTolerance = 1e-9;

void require_unit(const Vec3& v, const char* what) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTolerance) {
    throw InputError(std::string(what) + " must be a unit vector");
  }
}

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) throw InputError(std::string(what) + " must be >= 0");
}

}  // namespace

GTensor::GTensor(const Mat3& g, std::string frame) : g_(g), frame_(std::move(frame)) {
  if (!g_.allFinite()) throw InputError("g-tensor has non-finite entries");
  if ((g_ - g_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InputError("g-tensor must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> es(g_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12) {
    throw InputError("g-tensor must be positive semi-definite");
  }
}

GTensor GTensor::isotropic(double g) { return GTensor(g * Mat3::Identity()); }

GTensor GTensor::diagonal(double g_d1, double g_d2, double g_b) {
  return GTensor(Vec3(g_d1, g_d2, g_b).asDiagonal().toDenseMatrix());
}

void FieldConfig::validate() const {
  require_unit(static_dir, "static field direction");
  require_unit(mw_dir, "MW field direction");
  require_nonnegative(static_field, "static field");
}

double effective_g(const GTensor& gt, const Vec3& dir) {
  require_unit(dir, "direction");
  const Mat3& g = gt.matrix();
  return std::sqrt(dir.dot(g * g.transpose() * dir));
}

EffectiveGFactors effective_gfactors(const GTensor& gt, const FieldConfig& fc) {
  fc.validate();
  return {effective_g(gt, fc.static_dir), effective_g(gt, fc.mw_dir)};
}

double zeeman_splitting(double g_eff, double field) {
  require_nonnegative(field, "static field");
  require_nonnegative(g_eff, "g-factor");
  return g_eff * constants::bohr_magneton * field / constants::planck;
}

double field_for_splitting(double g_eff, double splitting_hz) {
  require_nonnegative(splitting_hz, "splitting");
  if (!(g_eff > 0.0)) throw InputError("g-factor must be > 0");
  return splitting_hz * constants::planck / (g_eff * constants::bohr_magneton);
}

double rabi_frequency(double g_mw, double b1) {
  require_nonnegative(b1, "MW field amplitude");
  require_nonnegative(g_mw, "g-factor");
  return g_mw * constants::bohr_magneton * b1 / (2.0 * constants::hbar);
}

double field_for_rabi(double g_mw, double omega) {
  require_nonnegative(omega, "Rabi frequency");
  if (!(g_mw > 0.0)) throw InputError("g-factor must be > 0");
  return 2.0 * constants::hbar * omega / (g_mw * constants::bohr_magneton);
}

SpinPreset ground_config(double g_d1) {
  // static along D2, MW along b
  constexpr double g_static = 10.5, g_mw = 1.6, nu = 3.12e9;
  FieldConfig fc{axis::d2, field_for_splitting(g_static, nu), axis::b, "ground-config"};
  return {"ground-config", GTensor::diagonal(g_d1, g_static, g_mw), fc,
          {g_static, g_mw}, 14.9e6, nu, std::nullopt};
}

SpinPreset excited_config(double g_d1) {
  // static along b, MW along D2; field tuned so the splitting meets the resonator
  constexpr double g_static = 10.0, g_mw = 0.95, nu = 3.12e9;
  FieldConfig fc{axis::b, field_for_splitting(g_static, nu), axis::d2, "excited-config"};
  return {"excited-config", GTensor::diagonal(g_d1, g_mw, g_static), fc,
          {g_static, g_mw}, 6.2e6, nu, std::nullopt};
}

SpinPreset preset_by_name(std::string_view name) {
  if (name == "ground-config") return ground_config();
  if (name == "excited-config") return excited_config();
  throw InputError("unknown preset '" + std::string(name) + "'");
}

}  // namespace erspin
