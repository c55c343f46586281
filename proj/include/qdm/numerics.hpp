#pragma once

#include <span>

namespace qdm {

struct LineFit {
  double slope;
  double intercept;
};

// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

// Slope of log(y) against log(x); all entries must be positive.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace qdm
