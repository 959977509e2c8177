// Test-side oracles, independent of the library evaluation paths.
#pragma once

#include <cmath>
#include <limits>

namespace oracles {

// Scaled complementary error function erfcx(x) = e^{x^2} erfc(x) for x >= 0,
// by Taylor series (small x) and a modified-Lentz continued fraction
// (large x). Closed-form check: E_{1/2,1}(-x) = erfcx(x).
inline double erfcx(double x) {
  if (x < 2.0) {
    // erf via its Taylor series, then scale.
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
      term *= -x * x / n;
      double add = term / (2 * n + 1);
      sum += add;
      if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
    }
    double erf = 2.0 / std::sqrt(M_PI) * sum;
    return std::exp(x * x) * (1.0 - erf);
  }
  // Continued fraction erfc(x) = e^{-x^2}/sqrt(pi) * K, with
  // K = 1/(x+) (1/2)/(x+) 1/(x+) (3/2)/(x+) 2/(x+) ...: a_1 = 1,
  // a_n = (n-1)/2, b_n = x. Modified Lentz; erfcx(x) = K/sqrt(pi).
  const double tiny = 1e-300;
  double f = tiny, c = f, d = 0.0;
  for (int n = 1; n < 400; ++n) {
    double an = (n == 1) ? 1.0 : (n - 1) / 2.0;
    d = x + an * d;
    if (d == 0.0) d = tiny;
    c = x + an / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return f / std::sqrt(M_PI);
}

// Brute-force long-double Kahan summation of the defining series. Returns the
// value and writes a rounding-noise estimate. Usable while the peak term is
// moderate; the estimate reports the loss.
inline double ml_series_brute(double mu, double eta, double z, double* err_estimate) {
  long double sum = 0.0L, comp = 0.0L, s_abs = 0.0L, p = 1.0L;
  int n = 0;
  for (; n < 100000; ++n) {
    long double g = tgammal(static_cast<long double>(mu) * n + static_cast<long double>(eta));
    long double term = (std::isinf((double)g)) ? 0.0L : p / g;
    long double t = sum + term;
    if (fabsl(sum) >= fabsl(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
    s_abs += fabsl(term);
    p *= z;
    double w = mu * n + eta;
    if (w > 1.0 && mu * std::log(w) > std::log(2.0 * std::fabs(z)) &&
        fabsl(term) < 1e-25L * s_abs) {
      break;
    }
  }
  if (err_estimate) {
    *err_estimate = static_cast<double>(s_abs) * 5.5e-20 * (n + 10);
  }
  return static_cast<double>(sum + comp);
}

}  // namespace oracles
