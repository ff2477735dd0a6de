#pragma once

#include <string>
#include <string_view>

namespace erspin {

enum class LineKind { lorentzian, gaussian };

std::string_view to_string(LineKind k);
/// Throws InputError for anything but "lorentzian" / "gaussian".
LineKind line_kind_from_string(std::string_view s);

/// Unit-area inhomogeneous line.
struct LineShape {
  LineKind kind = LineKind::lorentzian;
  double fwhm = 9e6;    // Hz
  double center = 0.0;  // Hz

  void validate() const;
};

/// Normalized density in 1/Hz.
double line_value(const LineShape& ls, double f);

/// Cumulative distribution; used for quantile quadrature nodes.
double line_cdf(const LineShape& ls, double f);

}  // namespace erspin
