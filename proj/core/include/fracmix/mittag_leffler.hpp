#pragma once

#include <optional>
#include <vector>

#include "fracmix/dd.hpp"

namespace fracmix::ml {

struct MLQuery {
  double mu;   // order, 0 < mu <= 2
  double eta;  // second parameter
  double z;    // real argument
};

enum class Method { series, asymptotic, extended_precision };

struct MLResult {
  double value;
  double abs_error_bound;
  Method method;
};

inline constexpr double kDefaultTol = 1e-10;

// Reusable evaluator for one (mu, eta) pair. Caches the reciprocal-gamma
// tables shared by every argument, which makes dense scans (zero location,
// oracle reference curves) cheap. Instances are not thread-safe; create one
// per thread.
class Evaluator {
 public:
  Evaluator(double mu, double eta);

  // Dispatches between the plain series, the extended-precision series and
  // the asymptotic expansion so that the returned bound is <= tol.
  // Throws NonConvergenceError when no strategy can deliver tol.
  MLResult eval(double z, double tol) const;

  // Individual strategies, exposed so tests can cross-validate regimes.
  MLResult eval_series(double z) const;
  MLResult eval_series_dd(double z) const;
  // z = -x on the negative axis; stops at the optimal truncation or once the
  // bound falls below 0.5*tol. Includes the exponential (saddle) terms for
  // 1 <= mu <= 2, which are exact companions of the algebraic expansion.
  MLResult eval_asymptotic(double x, double tol) const;

  double mu() const { return mu_; }
  double eta() const { return eta_; }

 private:
  double rg_at(int n) const;       // 1/Gamma(mu n + eta), double
  const DD& rg_dd_at(int n) const; // same in double-double
  double series_ln_peak(double x) const;

  double mu_;
  double eta_;
  mutable std::vector<double> rg_d_;
  mutable std::vector<DD> rg_dd_;
};

// E_{mu,eta}(z) for real z with a rigorous absolute error bound.
MLResult ml_eval(const MLQuery& q, double tol = kDefaultTol);

// Algebraic asymptotic expansion -sum_{j=1..n} (-x)^{-j}/Gamma(eta - mu j)
// for E_{mu,eta}(-x), x > 0, 0 < mu < 2. The bound is the magnitude of the
// first nonzero omitted term. Throws AsymptoticRegimeError when x is too
// small for n_terms (first omitted term not smaller than the last kept one).
MLResult ml_asymptotic(double mu, double eta, double x, int n_terms);

struct ZeroScan {
  double mu;
  double eta;
  double t_max;
  std::vector<double> zeros;        // ascending
  std::optional<double> max_zero;   // zeros.back() when nonempty
};

// Sign-change zeros of t -> E_{mu,eta}(-t) on (0, t_max], 1 < mu < 2.
// Dense scan with step min(1e-2, t_max/1e4), bisection to 1e-12 absolute.
ZeroScan ml_real_zeros(double mu, double eta, double t_max);

// Sufficient condition eta >= 3 mu / 2 for zero-freeness on the negative
// axis, 1 < mu < 2. false means "not guaranteed", not "has zeros".
bool no_real_zeros(double mu, double eta);

struct EnvelopeFit {
  double m_fitted;   // sup over the grid of (1+z)|E(-z)|
  double z_at_max;
  bool stabilized;   // sup did not move in the last decade of the grid
};

// Empirical constant M in |E_{mu,eta}(-z)| <= M/(1+z); reported, never
// asserted against a fixed value.
EnvelopeFit decay_envelope_fit(double mu, double eta, double z_max = 1e6);

}  // namespace fracmix::ml
