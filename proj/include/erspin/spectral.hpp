#pragma once

// Absorption spectra around the probed optical transition: spin-line shaped
// antiholes, hole/antihole area comparison, transmission, and the readout
// contrast of excited-state spin control.

#include "erspin/level_dynamics.hpp"
#include "erspin/line_shape.hpp"

#include <array>
#include <vector>

namespace erspin {

struct ReadoutModel {
  double baseline_absorption = 0.04;  // optical depth per pass off the antihole
  double probe_width = 1e6;           // Hz, Gaussian FWHM of the probe response

  void validate() const;
};

struct SpectrumProfile {
  std::vector<double> freq;   // Hz, strictly increasing
  std::vector<double> alpha;  // optical depth
  double baseline = 0.0;      // alpha far from any hole

  /// Grid monotonic, sizes equal, alpha >= -od_max.
  void validate(double od_max) const;
};

/// Uniform frequency grid.
struct SpectrumGrid {
  double start;
  double stop;
  double step;

  std::vector<double> points() const;
};

/// Span of +-20 FWHM around the line, spacing min(fwhm, probe) / 50.
SpectrumGrid default_grid(const LineShape& spin_line, const ReadoutModel& rm);

/// Probe-convolved spin line, peak-normalized to 1 at the line center.
std::vector<double> convolved_line(const LineShape& spin_line, double probe_width,
                                   const std::vector<double>& freq);

/// alpha(f) = baseline * (1 + polarization * K(f)), K the peak-normalized
/// probe-convolved spin line. `polarization` is the fractional absorption
/// change at the antihole center; negative values give a hole.
SpectrumProfile antihole_spectrum(const LineShape& spin_line, double polarization,
                                  const ReadoutModel& rm);
SpectrumProfile antihole_spectrum(const LineShape& spin_line, double polarization,
                                  const ReadoutModel& rm, const SpectrumGrid& grid);

/// Trapezoid integral of alpha - baseline.
double excess_area(const SpectrumProfile& p);

/// |area(antihole)| / |area(hole)|. Throws InputError on mismatched grids or
/// a hole without area.
double hole_area_ratio(const SpectrumProfile& hole, const SpectrumProfile& antihole);

/// Full width at half maximum of |alpha - baseline|, linear interpolation at
/// the crossings. Throws NumericalError if the feature does not drop below
/// half maximum inside the grid.
double profile_fwhm(const SpectrumProfile& p);

/// Per-level population change (state - reference) spread over the spin line.
/// Used for spectral weight bookkeeping.
std::array<SpectrumProfile, 4> population_change_spectra(const FourLevelState& state,
                                                         const FourLevelState& reference,
                                                         const LineShape& spin_line,
                                                         const SpectrumGrid& grid);

/// Depth of a narrow spectral hole: reduced ground absorption plus
/// stimulated emission from the resonant excited population.
double excited_hole_depth(double excited_population_resonant, double ground_depletion,
                          const ReadoutModel& rm);

/// Relative change of the hole depth when a perfect excited-state pi-pulse
/// removes the resonant excited population but leaves the ground depletion.
double excited_readout_contrast(double excited_population_resonant, double ground_depletion,
                                const ReadoutModel& rm);

/// T = exp(-alpha).
std::vector<double> transmission(const SpectrumProfile& p);

}  // namespace erspin
