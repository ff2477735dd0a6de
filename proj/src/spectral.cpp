#include "erspin/spectral.hpp"

#include "erspin/errors.hpp"

#include <algorithm>
#include <cmath>

namespace erspin {

namespace {

// Gaussian kernel weights on the grid spacing, truncated at +-4 FWHM.
std::vector<double> probe_kernel(double probe_width, double step, int& half) {
  half = static_cast<int>(std::ceil(4.0 * probe_width / step));
  LineShape g{LineKind::gaussian, probe_width, 0.0};
  std::vector<double> w(2 * half + 1);
  double sum = 0.0;
  for (int j = -half; j <= half; ++j) {
    w[j + half] = line_value(g, j * step);
    sum += w[j + half];
  }
  for (double& x : w) x /= sum;
  return w;
}

double convolve_at(const LineShape& line, const std::vector<double>& kernel, int half, double step,
                   double f) {
  if (half == 0) return line_value(line, f);
  double acc = 0.0;
  for (int j = -half; j <= half; ++j) acc += kernel[j + half] * line_value(line, f - j * step);
  return acc;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

}  // namespace

void ReadoutModel::validate() const {
  if (!(baseline_absorption > 0.0 && baseline_absorption < 1.0)) {
    throw InputError("baseline_absorption must lie in (0, 1)");
  }
  if (!(probe_width >= 0.0) || !std::isfinite(probe_width)) {
    throw InputError("probe_width must be finite and >= 0");
  }
}

void SpectrumProfile::validate(double od_max) const {
  if (freq.size() != alpha.size()) throw InputError("frequency and alpha sizes differ");
  for (std::size_t i = 1; i < freq.size(); ++i) {
    if (!(freq[i] > freq[i - 1])) throw InputError("frequency grid must be strictly increasing");
  }
  for (double a : alpha) {
    if (!(a >= -od_max)) throw InputError("alpha below -od_max");
  }
}

std::vector<double> SpectrumGrid::points() const {
  if (!(step > 0.0) || !(stop > start)) throw InputError("invalid spectrum grid");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

SpectrumGrid default_grid(const LineShape& spin_line, const ReadoutModel& rm) {
  const double span = 20.0 * spin_line.fwhm + 4.0 * rm.probe_width;
  const double resolution = rm.probe_width > 0.0 ? std::min(spin_line.fwhm, rm.probe_width)
                                                 : spin_line.fwhm;
  return {spin_line.center - span, spin_line.center + span, resolution / 50.0};
}

std::vector<double> convolved_line(const LineShape& spin_line, double probe_width,
                                   const std::vector<double>& freq) {
  spin_line.validate();
  std::vector<double> out(freq.size());
  if (freq.empty()) return out;
  // Kernel spacing follows the grid when uniform enough; otherwise fall back
  // to a resolution fixed by the line widths.
  double step = freq.size() > 1 ? (freq.back() - freq.front()) / double(freq.size() - 1)
                                : spin_line.fwhm / 50.0;
  if (probe_width > 0.0) step = std::min(step, probe_width / 50.0);
  int half = 0;
  std::vector<double> kernel;
  if (probe_width > 0.0) kernel = probe_kernel(probe_width, step, half);
  const double peak = convolve_at(spin_line, kernel, half, step, spin_line.center);
  for (std::size_t i = 0; i < freq.size(); ++i) {
    out[i] = convolve_at(spin_line, kernel, half, step, freq[i]) / peak;
  }
  return out;
}

SpectrumProfile antihole_spectrum(const LineShape& spin_line, double polarization,
                                  const ReadoutModel& rm) {
  return antihole_spectrum(spin_line, polarization, rm, default_grid(spin_line, rm));
}

SpectrumProfile antihole_spectrum(const LineShape& spin_line, double polarization,
                                  const ReadoutModel& rm, const SpectrumGrid& grid) {
  rm.validate();
  if (!(std::abs(polarization) <= 1.0)) throw InputError("|polarization| must be <= 1");
  SpectrumProfile p;
  p.freq = grid.points();
  p.baseline = rm.baseline_absorption;
  const std::vector<double> k = convolved_line(spin_line, rm.probe_width, p.freq);
  p.alpha.resize(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    p.alpha[i] = rm.baseline_absorption + rm.baseline_absorption * polarization * k[i];
  }
  return p;
}

double excess_area(const SpectrumProfile& p) {
  std::vector<double> excess(p.alpha.size());
  for (std::size_t i = 0; i < excess.size(); ++i) excess[i] = p.alpha[i] - p.baseline;
  return trapezoid(p.freq, excess);
}

double hole_area_ratio(const SpectrumProfile& hole, const SpectrumProfile& antihole) {
  if (hole.freq != antihole.freq) throw InputError("hole and antihole grids differ");
  const double h = std::abs(excess_area(hole));
  if (h == 0.0) throw InputError("hole profile has zero area");
  return std::abs(excess_area(antihole)) / h;
}

double profile_fwhm(const SpectrumProfile& p) {
  const std::size_t n = p.freq.size();
  if (n < 3) throw NumericalError("profile too short for a width");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = std::abs(p.alpha[i] - p.baseline);
  const auto peak_it = std::max_element(y.begin(), y.end());
  const auto ipk = static_cast<std::size_t>(peak_it - y.begin());
  const double half = 0.5 * *peak_it;
  if (half == 0.0) throw NumericalError("profile has no feature");

  std::size_t l = ipk;
  while (l > 0 && y[l] > half) --l;
  std::size_t r = ipk;
  while (r + 1 < n && y[r] > half) ++r;
  if (y[l] > half || y[r] > half) throw NumericalError("feature wider than the grid");

  auto cross = [&](std::size_t a, std::size_t b) {
    return p.freq[a] + (half - y[a]) * (p.freq[b] - p.freq[a]) / (y[b] - y[a]);
  };
  return cross(r - 1, r) - cross(l, l + 1);
}

std::array<SpectrumProfile, 4> population_change_spectra(const FourLevelState& state,
                                                         const FourLevelState& reference,
                                                         const LineShape& spin_line,
                                                         const SpectrumGrid& grid) {
  spin_line.validate();
  std::array<SpectrumProfile, 4> out;
  const std::vector<double> f = grid.points();
  for (int l = 0; l < 4; ++l) {
    const double dp = state.p[l] - reference.p[l];
    out[l].freq = f;
    out[l].alpha.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[l].alpha[i] = dp * line_value(spin_line, f[i]);
  }
  return out;
}

double excited_hole_depth(double excited_population_resonant, double ground_depletion,
                          const ReadoutModel& rm) {
  if (!(excited_population_resonant >= 0.0 && excited_population_resonant <= 1.0) ||
      !(ground_depletion >= 0.0 && ground_depletion <= 1.0)) {
    throw InputError("populations must lie in [0, 1]");
  }
  return rm.baseline_absorption * (ground_depletion + excited_population_resonant);
}

double excited_readout_contrast(double excited_population_resonant, double ground_depletion,
                                const ReadoutModel& rm) {
  // (depth_before - depth_after) / depth_before; the baseline cancels.
  const double before = excited_hole_depth(excited_population_resonant, ground_depletion, rm);
  if (before == 0.0) return 0.0;
  return excited_population_resonant / (ground_depletion + excited_population_resonant);
}

std::vector<double> transmission(const SpectrumProfile& p) {
  std::vector<double> t(p.alpha.size());
  std::transform(p.alpha.begin(), p.alpha.end(), t.begin(), [](double a) { return std::exp(-a); });
  return t;
}

}  // namespace erspin
