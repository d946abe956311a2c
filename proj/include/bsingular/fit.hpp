#pragma once

#include <utility>
#include <vector>

namespace bsingular {

struct RateFit {
  double exponent = 0.0;
  double intercept = 0.0;  // log C in value ~ C scale^exponent
  double residual = 0.0;   // RMS of log-deviations
  int samples = 0;
};

/// Least-squares slope of log(value) against log(scale).
/// Throws DegenerateFitError for fewer than 4 pairs or a non-positive entry.
RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs);

/// Common slope across groups, each with its own intercept (so constants
/// that differ between groups drop out). `intercept` is left at 0.
RateFit fit_rate_pooled(const std::vector<std::vector<std::pair<double, double>>>& groups);

}  // namespace bsingular
