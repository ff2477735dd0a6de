#include "erspin/line_shape.hpp"

#include "erspin/errors.hpp"

#include <cmath>
#include <numbers>

namespace erspin {

namespace {
// FWHM = 2 sqrt(2 ln 2) sigma
const double kFwhmPerSigma = 2.0 * std::sqrt(2.0 * std::numbers::ln2);
}  // namespace

std::string_view to_string(LineKind k) {
  return k == LineKind::lorentzian ? "lorentzian" : "gaussian";
}

LineKind line_kind_from_string(std::string_view s) {
  if (s == "lorentzian") return LineKind::lorentzian;
  if (s == "gaussian") return LineKind::gaussian;
  throw InputError("unknown line shape '" + std::string(s) + "'");
}

void LineShape::validate() const {
  if (!(fwhm > 0.0) || !std::isfinite(fwhm)) throw InputError("line fwhm must be finite and > 0");
  if (!std::isfinite(center)) throw InputError("line center must be finite");
}

double line_value(const LineShape& ls, double f) {
  const double x = f - ls.center;
  if (ls.kind == LineKind::lorentzian) {
    const double hw = 0.5 * ls.fwhm;
    return hw / (std::numbers::pi * (x * x + hw * hw));
  }
  const double sigma = ls.fwhm / kFwhmPerSigma;
  return std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double line_cdf(const LineShape& ls, double f) {
  const double x = f - ls.center;
  if (ls.kind == LineKind::lorentzian) {
    return 0.5 + std::atan(2.0 * x / ls.fwhm) / std::numbers::pi;
  }
  const double sigma = ls.fwhm / kFwhmPerSigma;
  return 0.5 * std::erfc(-x / (sigma * std::numbers::sqrt2));
}

}  // namespace erspin
