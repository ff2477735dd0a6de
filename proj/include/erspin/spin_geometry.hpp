#pragma once

// Effective spin-1/2 description of a Kramers doublet with an anisotropic
// g-tensor. Vectors are expressed in the crystal frame (D1, D2, b).

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>

namespace erspin {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

namespace axis {
inline const Vec3 d1{1.0, 0.0, 0.0};
inline const Vec3 d2{0.0, 1.0, 0.0};
inline const Vec3 b{0.0, 0.0, 1.0};
}  // namespace axis

/// Symmetric, positive semi-definite g-tensor.
class GTensor {
 public:
  /// Throws InputError if `g` is not symmetric within 1e-12 or has a
  /// negative eigenvalue.
  explicit GTensor(const Mat3& g, std::string frame = "D1,D2,b");

  static GTensor isotropic(double g);
  static GTensor diagonal(double g_d1, double g_d2, double g_b);

  const Mat3& matrix() const noexcept { return g_; }
  const std::string& frame() const noexcept { return frame_; }

 private:
  Mat3 g_;
  std::string frame_;
};

struct FieldConfig {
  Vec3 static_dir = axis::d2;
  double static_field = 0.0;  // tesla
  Vec3 mw_dir = axis::b;
  std::string label;

  /// Throws InputError if a direction is not unit norm within 1e-9 or the
  /// field magnitude is negative.
  void validate() const;
};

struct EffectiveGFactors {
  double g_parallel = 0.0;  // along the static field
  double g_mw = 0.0;        // along the MW field
};

/// sqrt(n^T g g^T n). Throws InputError unless |dir| = 1 within 1e-9.
double effective_g(const GTensor& gt, const Vec3& dir);

EffectiveGFactors effective_gfactors(const GTensor& gt, const FieldConfig& fc);

/// Zeeman splitting g mu_B B / h in Hz.
double zeeman_splitting(double g_eff, double field);

/// Static field (T) that produces `splitting_hz` for the given g.
double field_for_splitting(double g_eff, double splitting_hz);

/// Rabi angular frequency g_mw mu_B B1 / (2 hbar) in rad/s.
double rabi_frequency(double g_mw, double b1);

/// MW amplitude (T) giving angular Rabi frequency `omega`.
double field_for_rabi(double g_mw, double omega);

/// Orientation preset. The effective scalars are the measured ones; the
/// tensor is a diagonal stand-in built from them. Its D1 element is not
/// determined by either orientation and defaults to zero.
struct SpinPreset {
  std::string name;
  GTensor tensor;
  FieldConfig field;
  EffectiveGFactors g;
  double rabi_hz;          // measured Omega / 2pi at full drive
  double splitting_hz;     // spin transition frequency
  // Excited-manifold g along the static field in the ground-state
  // orientation. Not stated anywhere; left for the user to supply.
  std::optional<double> excited_g_parallel;
};

SpinPreset ground_config(double g_d1 = 0.0);
SpinPreset excited_config(double g_d1 = 0.0);

/// Resolves "ground-config" / "excited-config". Throws InputError otherwise.
SpinPreset preset_by_name(std::string_view name);

}  // namespace erspin
