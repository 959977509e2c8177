#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fracmix {

struct QuadResult {
  double value;
  double error_estimate;  // Richardson estimate |I_n - I_{n/2}| / 15
};

// Composite Simpson on [a, b] with n intervals (n even, >= 2). The error
// estimate compares against the half-resolution rule computed from the same
// samples.
QuadResult simpson(const std::function<double(double)>& f, double a, double b, int n);

// Simpson over pre-sampled uniform values (size must be odd >= 3).
QuadResult simpson_samples(std::span<const double> values, double a, double b);

// Ordinary least squares y ~ intercept + slope * x.
struct LinearFit {
  double slope;
  double intercept;
  double residual_norm;  // L2 of the fit residuals
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Piecewise-linear interpolation of uniform samples of f on [a, b].
double lerp_uniform(std::span<const double> values, double a, double b, double x);

}  // namespace fracmix
