#pragma once

#include <cmath>

namespace fracmix {

// Double-double value: the unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving roughly 32 significant decimal digits. Error-free transforms follow
// the Dekker/Knuth algorithms as organized in the QD library of Hida, Li and
// Bailey. Only what the extended-precision Mittag-Leffler series needs is
// implemented: ring operations, division, sqrt, exp, log and sin(pi x).
struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h) : hi(h), lo(0.0) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

namespace ddops {

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// Requires |a| >= |b|.
inline DD quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace ddops

inline DD operator+(const DD& a, const DD& b) {
  DD s = ddops::two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  return ddops::quick_two_sum(s.hi, lo);
}

inline DD operator+(const DD& a, double b) {
  DD s = ddops::two_sum(a.hi, b);
  return ddops::quick_two_sum(s.hi, s.lo + a.lo);
}

inline DD operator+(double a, const DD& b) { return b + a; }

inline DD operator-(const DD& a) { return {-a.hi, -a.lo}; }

inline DD operator-(const DD& a, const DD& b) { return a + (-b); }
inline DD operator-(const DD& a, double b) { return a + (-b); }
inline DD operator-(double a, const DD& b) { return (-b) + a; }

inline DD operator*(const DD& a, const DD& b) {
  DD p = ddops::two_prod(a.hi, b.hi);
  double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
  return ddops::quick_two_sum(p.hi, lo);
}

inline DD operator*(const DD& a, double b) {
  DD p = ddops::two_prod(a.hi, b);
  return ddops::quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline DD operator*(double a, const DD& b) { return b * a; }

inline DD operator/(const DD& a, const DD& b) {
  double q1 = a.hi / b.hi;
  DD r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  DD q = ddops::quick_two_sum(q1, q2);
  return q + q3;
}

inline DD operator/(const DD& a, double b) { return a / DD(b); }
inline DD operator/(double a, const DD& b) { return DD(a) / b; }

inline bool operator<(const DD& a, const DD& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DD& a, const DD& b) { return b < a; }
inline bool operator==(const DD& a, const DD& b) {
  return a.hi == b.hi && a.lo == b.lo;
}

inline DD dd_abs(const DD& a) { return a.hi < 0.0 ? -a : a; }

// Exact scaling by a power of two.
inline DD dd_ldexp(const DD& a, int n) {
  return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)};
}

namespace ddconst {
// Standard hi/lo splits (QD library values).
inline constexpr DD pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr DD two_pi{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr DD ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
}  // namespace ddconst

DD dd_sqrt(const DD& a);
DD dd_exp(const DD& a);
DD dd_log(const DD& a);   // a > 0
// sin(pi * a); exact zeros at integer a.
DD dd_sinpi(const DD& a);

}  // namespace fracmix
