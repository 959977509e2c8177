#pragma once

#include "fracmix/dd.hpp"

namespace fracmix {

// sin(pi x) with exact zeros at integers and no large-argument phase loss.
double sinpi(double x);

// Reciprocal gamma 1/Gamma(x), entire: zero at non-positive integers.
double rgamma(double x);

// log|Gamma(x)| and the sign of Gamma(x); sign is 0 at the poles.
struct SignedLogGamma {
  double log_abs;
  int sign;
};
SignedLogGamma signed_log_gamma(double x);

// Gamma in double-double precision via Spouge's approximation (a = 41),
// relative accuracy ~1e-30. Requires x >= 0.5.
DD gamma_dd(const DD& x);

// Entire 1/Gamma in double-double precision, any real argument.
DD rgamma_dd(const DD& x);

}  // namespace fracmix
