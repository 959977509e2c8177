#include "fracmix/dd.hpp"

#include <array>
#include <limits>

namespace fracmix {

DD dd_sqrt(const DD& a) {
  if (a.hi <= 0.0) return DD(a.hi == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
  double y = std::sqrt(a.hi);
  // One Newton step in double-double doubles the accurate digits.
  DD yd(y);
  yd = dd_ldexp(yd + a / yd, -1);
  return dd_ldexp(yd + a / yd, -1);
}

DD dd_exp(const DD& a) {
  if (a.hi > 709.0) return DD(std::numeric_limits<double>::infinity());
  if (a.hi < -745.0) return DD(0.0);
  // a = k ln2 + r with |r| <= ln2/2, then Taylor on r.
  double k = std::nearbyint(a.hi / ddconst::ln2.hi);
  DD r = a - ddconst::ln2 * k;
  DD sum(1.0);
  DD term(1.0);
  for (int n = 1; n < 40; ++n) {
    term = term * r / static_cast<double>(n);
    sum = sum + term;
    if (std::fabs(term.hi) < 1e-35 * std::fabs(sum.hi)) break;
  }
  return dd_ldexp(sum, static_cast<int>(k));
}

DD dd_log(const DD& a) {
  // Newton iteration y <- y + a e^{-y} - 1 from a double seed.
  DD y(std::log(a.hi));
  for (int i = 0; i < 2; ++i) {
    y = y + a * dd_exp(-y) - 1.0;
  }
  return y;
}

DD dd_sinpi(const DD& a) {
  // Reduce to r in [-1/2, 1/2] against the nearest integer; the reduction is
  // exact for |a| below 2^52.
  double n = std::nearbyint(a.hi);
  DD r = a - n;
  bool negate = std::fmod(n, 2.0) != 0.0;
  if (r.hi == 0.0 && r.lo == 0.0) return DD(0.0);
  DD x = ddconst::pi * r;
  DD x2 = x * x;
  DD sum = x;
  DD term = x;
  for (int k = 1; k < 24; ++k) {
    term = term * x2 / static_cast<double>(2 * k * (2 * k + 1));
    term = -term;
    sum = sum + term;
    if (std::fabs(term.hi) < 1e-35 * std::fabs(sum.hi)) break;
  }
  return negate ? -sum : sum;
}

}  // namespace fracmix
