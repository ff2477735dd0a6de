#pragma once

// Least-squares fits of the curve families used by the experiments.
//
//   single_exponential  y = amplitude exp(-x / tau) + offset
//   biexponential       y = amp_fast exp(-x / tau_fast) + amp_slow exp(-x / tau_slow) + offset
//   sinusoid_decay      y = offset + amplitude exp(-decay_rate x) cos(2 pi frequency x + phase)
//   lorentzian          y = offset + amplitude / (1 + (2 (x - center) / fwhm)^2)
//
// Minimization is Levenberg-Marquardt on a central-difference Jacobian, run
// on data rescaled to unit range. Starting values come from fixed
// heuristics (documented per model in fit.cpp) unless given explicitly.

#include "erspin/trace.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace erspin {

enum class FitModel { single_exponential, biexponential, sinusoid_decay, lorentzian };

std::string_view to_string(FitModel m);
FitModel fit_model_from_string(std::string_view s);

/// Parameter names in the order used by initial guesses and results.
std::vector<std::string> parameter_names(FitModel m);

struct FitParameter {
  std::string name;
  double value;
  double sigma;  // one standard deviation from the residual-scaled covariance
};

struct FitResult {
  FitModel model;
  std::vector<FitParameter> params;
  double residual_norm;        // sqrt(sum of squared residuals)
  double initial_residual_norm;

  double value(std::string_view name) const;
  double sigma(std::string_view name) const;
  std::vector<double> values() const;
};

double evaluate(FitModel m, const std::vector<double>& params, double x);

/// Heuristic starting point for `m`.
std::vector<double> initial_guess(const Trace& trace, FitModel m);

/// Throws InputError with fewer than 2 points per parameter and
/// NumericalError for constant or otherwise degenerate data.
FitResult fit(const Trace& trace, FitModel m,
              const std::optional<std::vector<double>>& guess = std::nullopt);

}  // namespace erspin
