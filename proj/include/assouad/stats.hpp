#pragma once

#include <span>

namespace assouad {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope * x. Requires >= 2 points
/// with distinct abscissae. r_squared is 1 when the data have no spread.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Standard normal CDF.
double normal_cdf(double z);

/// P(a <= Z <= b) for standard normal Z, computed without cancellation in
/// either tail.
double normal_interval_probability(double a, double b);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval for a binomial proportion (default 95%).
Interval wilson_interval(long long successes, long long trials, double z = 1.959963984540054);

} // namespace assouad
