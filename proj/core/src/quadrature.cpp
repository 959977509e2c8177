#include "fracmix/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "fracmix/errors.hpp"

namespace fracmix {

QuadResult simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("simpson: n must be even and >= 2");
  std::vector<double> vals(n + 1);
  double h = (b - a) / n;
  for (int i = 0; i <= n; ++i) vals[i] = f(a + i * h);
  return simpson_samples(vals, a, b);
}

QuadResult simpson_samples(std::span<const double> values, double a, double b) {
  const int n = static_cast<int>(values.size()) - 1;
  if (n < 2 || n % 2 != 0) {
    throw DomainError("simpson_samples: need an odd sample count >= 3");
  }
  double h = (b - a) / n;
  double s = values[0] + values[n];
  for (int i = 1; i < n; ++i) s += values[i] * (i % 2 == 1 ? 4.0 : 2.0);
  double fine = s * h / 3.0;

  double est = 0.0;
  if (n % 4 == 0) {
    double s2 = values[0] + values[n];
    for (int i = 2; i < n; i += 2) s2 += values[i] * (i % 4 == 2 ? 4.0 : 2.0);
    double coarse = s2 * (2.0 * h) / 3.0;
    est = std::fabs(fine - coarse) / 15.0;
  } else {
    est = std::fabs(fine) * 1e-15;
  }
  return {fine, est};
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  if (n != y.size() || n < 2) throw DomainError("linear_fit: need >= 2 matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  if (det == 0.0) throw DomainError("linear_fit: degenerate abscissae");
  double slope = (n * sxy - sx * sy) / det;
  double intercept = (sy - slope * sx) / n;
  double r2 = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double r = y[i] - (intercept + slope * x[i]);
    r2 += r * r;
  }
  return {slope, intercept, std::sqrt(r2)};
}

double lerp_uniform(std::span<const double> values, double a, double b, double x) {
  const int n = static_cast<int>(values.size()) - 1;
  if (n < 1) throw DomainError("lerp_uniform: need >= 2 samples");
  double s = (x - a) / (b - a) * n;
  if (s <= 0.0) return values[0];
  if (s >= n) return values[n];
  int i = static_cast<int>(s);
  double w = s - i;
  return values[i] * (1.0 - w) + values[i + 1] * w;
}

}  // namespace fracmix
