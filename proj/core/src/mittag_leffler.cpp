#include "fracmix/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracmix/errors.hpp"
#include "fracmix/gamma.hpp"

namespace fracmix::ml {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
// Effective relative accuracy of one double-double series term (Spouge gamma
// noise plus accumulation), with safety factor folded in by the caller.
constexpr double kDDTermRel = 6e-29;
constexpr double kDDEps = 1.3e-32;
constexpr int kSeriesCap = 200000;

// Kahan-Babuska-Neumaier compensated accumulator.
struct Kahan {
  double s = 0.0;
  double c = 0.0;
  void add(double t) {
    double u = s + t;
    if (std::fabs(s) >= std::fabs(t))
      c += (s - u) + t;
    else
      c += (t - u) + s;
    s = u;
  }
  double value() const { return s + c; }
};

void validate_query(double mu, double eta, double z) {
  if (!(mu > 0.0) || mu > 2.0) {
    throw DomainError("ml_eval: mu must lie in (0, 2], got " + std::to_string(mu));
  }
  if (!std::isfinite(eta) || !std::isfinite(z)) {
    throw DomainError("ml_eval: eta and z must be finite");
  }
}

}  // namespace

Evaluator::Evaluator(double mu, double eta) : mu_(mu), eta_(eta) {
  validate_query(mu, eta, 0.0);
}

double Evaluator::rg_at(int n) const {
  if (static_cast<size_t>(n) >= rg_d_.size()) {
    size_t target = std::max<size_t>(n + 1, rg_d_.size() * 2 + 16);
    for (size_t m = rg_d_.size(); m < target; ++m) {
      rg_d_.push_back(rgamma(mu_ * static_cast<double>(m) + eta_));
    }
  }
  return rg_d_[n];
}

const DD& Evaluator::rg_dd_at(int n) const {
  if (static_cast<size_t>(n) >= rg_dd_.size()) {
    size_t target = std::max<size_t>(n + 1, rg_dd_.size() * 2 + 16);
    for (size_t m = rg_dd_.size(); m < target; ++m) {
      // The argument mu*m + eta is carried in double-double so the gamma sees
      // it exactly; a plain double product would already cost ~1e-14.
      DD w = ddops::two_prod(mu_, static_cast<double>(m)) + eta_;
      rg_dd_.push_back(rgamma_dd(w));
    }
  }
  return rg_dd_[n];
}

double Evaluator::series_ln_peak(double x) const {
  if (x <= 0.0) return -signed_log_gamma(eta_).log_abs;
  double r = std::pow(x, 1.0 / mu_);
  if (!std::isfinite(r)) return kInf;
  double n_star = std::max(0.0, (r - eta_) / mu_);
  double best = -kInf;
  for (double n : {0.0, std::floor(n_star), std::ceil(n_star), std::ceil(n_star) + 1.0}) {
    if (n < 0.0) continue;
    double f = n * std::log(x) - signed_log_gamma(mu_ * n + eta_).log_abs;
    best = std::max(best, f);
  }
  return best;
}

namespace {

// Stop once the term magnitudes have been both decreasing (empirical ratio
// below 0.9, so the geometric tail is at most 9x the last term) and
// negligible against the accumulated |term| mass for a few steps in a row.
struct SeriesStop {
  double eps_rel;
  int quiet = 0;
  double prev_abs = kInf;
  double tail = 0.0;

  bool done(double abs_term, double s_abs) {
    if (s_abs == 0.0) return false;  // leading Gamma poles only
    bool decelerating = abs_term < 0.9 * prev_abs;
    if (decelerating && abs_term <= eps_rel * s_abs + 1e-320) {
      if (++quiet >= 3) {
        tail = 9.0 * abs_term;
        return true;
      }
    } else {
      quiet = 0;
    }
    if (abs_term > 0.0) prev_abs = abs_term;
    return false;
  }
};

}  // namespace

MLResult Evaluator::eval_series(double z) const {
  Kahan sum;
  double s_abs = 0.0;
  double p = 1.0;
  int n = 0;
  SeriesStop stop{0.25 * kEps};
  for (; n < kSeriesCap; ++n) {
    double term = p * rg_at(n);
    sum.add(term);
    s_abs += std::fabs(term);
    if (stop.done(std::fabs(term), s_abs)) break;
    p *= z;
    if (!std::isfinite(p) || !std::isfinite(s_abs)) {
      return {sum.value(), kInf, Method::series};
    }
  }
  if (n >= kSeriesCap) return {sum.value(), kInf, Method::series};
  double bound = kEps * s_abs * (static_cast<double>(n) + 10.0) + stop.tail;
  return {sum.value(), bound, Method::series};
}

MLResult Evaluator::eval_series_dd(double z) const {
  DD sum(0.0);
  DD p(1.0);
  double s_abs = 0.0;
  int n = 0;
  SeriesStop stop{1e-33};
  for (; n < kSeriesCap; ++n) {
    DD term = p * rg_dd_at(n);
    sum = sum + term;
    s_abs += std::fabs(term.hi);
    if (stop.done(std::fabs(term.hi), s_abs)) break;
    p = p * z;
    if (!std::isfinite(p.hi) || !std::isfinite(s_abs)) {
      return {sum.value(), kInf, Method::extended_precision};
    }
  }
  if (n >= kSeriesCap) return {sum.value(), kInf, Method::extended_precision};
  double bound = 4.0 * s_abs * (kDDTermRel + static_cast<double>(n) * kDDEps) + stop.tail;
  return {sum.value(), bound, Method::extended_precision};
}

namespace {

// |t_j| of the algebraic expansion, sign separated; sign 0 at Gamma poles.
double asym_term_abs(double mu, double eta, double lx, int j, int* sign) {
  double w = eta - mu * static_cast<double>(j);
  SignedLogGamma slg = signed_log_gamma(w);
  *sign = slg.sign;
  if (slg.sign == 0) return 0.0;
  return std::exp(-static_cast<double>(j) * lx - slg.log_abs);
}

// Remainder estimate from the first two nonzero omitted magnitudes: the
// leading omitted term plus twice the next one, covering the same-sign case
// where the bare first-omitted-term rule undershoots slightly.
double asym_tail_bound(double mu, double eta, double lx, int from_j) {
  double first = 0.0;
  for (int j = from_j, found = 0; j < from_j + 300 && found < 2; ++j) {
    int sg = 0;
    double a = asym_term_abs(mu, eta, lx, j, &sg);
    if (sg == 0) continue;
    if (++found == 1)
      first = a;
    else
      return first + 2.0 * a;
  }
  return first;
}

}  // namespace

MLResult Evaluator::eval_asymptotic(double x, double tol) const {
  const double lx = std::log(x);
  Kahan alg;
  double s_abs = 0.0;
  double prev_abs = kInf;
  double bound = kInf;
  int zero_run = 0;
  constexpr int kJCap = 500;
  for (int j = 1; j <= kJCap; ++j) {
    int sign = 0;
    double abs_t = asym_term_abs(mu_, eta_, lx, j, &sign);
    if (sign == 0) {
      // Pole of Gamma: the term is exactly zero. Four consecutive zero terms
      // force mu to be an integer, and then every later term is zero too.
      if (++zero_run >= 4) {
        bound = 0.0;
        break;
      }
      continue;
    }
    zero_run = 0;
    if (abs_t <= 0.5 * tol || abs_t > prev_abs) {
      // First omitted term: either small enough, or the expansion started to
      // grow (optimal truncation).
      bound = asym_tail_bound(mu_, eta_, lx, j);
      break;
    }
    int parity = (j % 2 == 0) ? -1 : 1;  // (-1)^{j+1}
    alg.add(parity * sign * abs_t);
    s_abs += abs_t;
    prev_abs = abs_t;
  }
  if (bound == kInf) bound = prev_abs;

  // Exponential companions. For 1 < mu <= 2 the conjugate saddle pair is an
  // exact additive part of the expansion on the negative axis; at mu = 2 it
  // degenerates to the trigonometric closed forms. For mu = 1 only eta = 1
  // yields a real single saddle (e^{-x}); other eta get a bound floor.
  double saddle = 0.0;
  double saddle_scale = 0.0;
  if (mu_ == 1.0) {
    if (eta_ == 1.0) {
      saddle = std::exp(-x);
      saddle_scale = saddle * (1.0 + x);
    } else {
      bound += 2.0 * std::exp(-x + std::fabs(1.0 - eta_) * lx);
    }
  } else if (mu_ > 1.0) {
    double r = std::exp(lx / mu_);
    double c = std::cos(M_PI / mu_);
    double s = std::sin(M_PI / mu_);
    double amp = (2.0 / mu_) * std::exp((1.0 - eta_) * lx / mu_ + r * c);
    if (amp > 1e-320) {
      saddle = amp * std::cos(r * s + M_PI * (1.0 - eta_) / mu_);
      saddle_scale = amp * (1.0 + r);  // phase rounding grows with r
    }
  }
  double value = alg.value() + saddle;
  bound += 20.0 * kEps * (s_abs + saddle_scale + std::fabs(value));
  return {value, bound, Method::asymptotic};
}

MLResult Evaluator::eval(double z, double tol) const {
  if (!(tol > 0.0)) throw DomainError("ml_eval: tol must be positive");
  if (z == 0.0) {
    double v = rgamma(eta_);
    return {v, 4.0 * kEps * std::fabs(v) + 1e-300, Method::series};
  }

  double best_value = 0.0;
  double best_bound = kInf;
  auto consider = [&](const MLResult& r) {
    if (r.abs_error_bound < best_bound) {
      best_bound = r.abs_error_bound;
      best_value = r.value;
    }
  };

  if (z > 0.0) {
    MLResult r = eval_series(z);
    if (r.abs_error_bound <= tol) return r;
    throw NonConvergenceError("ml_eval: series did not reach tol on the positive axis",
                              r.value, r.abs_error_bound);
  }

  const double x = -z;
  const double ln_peak = series_ln_peak(x);
  double est_n = 40.0;
  double r1m = std::pow(2.0 * x, 1.0 / mu_);
  if (std::isfinite(r1m)) est_n += std::max(0.0, (r1m - eta_) / mu_);

  if (ln_peak + std::log(kEps * (est_n + 10.0)) <= std::log(0.5 * tol)) {
    MLResult r = eval_series(z);
    if (r.abs_error_bound <= tol) return r;
    consider(r);
  }

  MLResult ra = eval_asymptotic(x, tol);
  if (ra.abs_error_bound <= tol) return ra;
  consider(ra);

  double dd_budget = std::log(0.25 * tol) - std::log(4.0 * (kDDTermRel + est_n * kDDEps));
  if (ln_peak <= dd_budget) {
    MLResult r = eval_series_dd(z);
    if (r.abs_error_bound <= tol) return r;
    consider(r);
  }

  throw NonConvergenceError(
      "ml_eval(mu=" + std::to_string(mu_) + ", eta=" + std::to_string(eta_) +
          ", z=" + std::to_string(z) + "): no strategy reached tol=" + std::to_string(tol) +
          ", best bound " + std::to_string(best_bound),
      best_value, best_bound);
}

MLResult ml_eval(const MLQuery& q, double tol) {
  validate_query(q.mu, q.eta, q.z);
  Evaluator ev(q.mu, q.eta);
  return ev.eval(q.z, tol);
}

MLResult ml_asymptotic(double mu, double eta, double x, int n_terms) {
  if (!(mu > 0.0) || mu >= 2.0) {
    throw DomainError("ml_asymptotic: mu must lie in (0, 2)");
  }
  if (!(x > 0.0)) throw DomainError("ml_asymptotic: x must be positive");
  if (n_terms < 1) throw DomainError("ml_asymptotic: n_terms must be >= 1");

  const double lx = std::log(x);
  Kahan sum;
  double last_nonzero = 0.0;
  bool any_nonzero = false;
  for (int j = 1; j <= n_terms; ++j) {
    int sg = 0;
    double a = asym_term_abs(mu, eta, lx, j, &sg);
    int parity = (j % 2 == 0) ? -1 : 1;
    sum.add(parity * sg * a);
    if (sg != 0) {
      last_nonzero = a;
      any_nonzero = true;
    }
  }
  int sg_next = 0;
  double next_abs = asym_term_abs(mu, eta, lx, n_terms + 1, &sg_next);
  // The expansion is usable only while the magnitudes keep decreasing; zero
  // (pole) terms do not break the chain.
  if (sg_next != 0 && any_nonzero && next_abs >= last_nonzero) {
    throw AsymptoticRegimeError(
        "ml_asymptotic: x too small for n_terms=" + std::to_string(n_terms) +
        " (first omitted term not smaller than the last kept term)");
  }
  return {sum.value(), asym_tail_bound(mu, eta, lx, n_terms + 1), Method::asymptotic};
}

ZeroScan ml_real_zeros(double mu, double eta, double t_max) {
  if (!(mu > 1.0) || !(mu < 2.0)) {
    throw DomainError("ml_real_zeros: mu must lie in (1, 2)");
  }
  if (!(t_max > 0.0)) throw DomainError("ml_real_zeros: t_max must be positive");

  Evaluator ev(mu, eta);
  constexpr double kEvalTol = 1e-12;
  auto f = [&](double t) { return ev.eval(-t, kEvalTol).value; };

  ZeroScan scan{mu, eta, t_max, {}, std::nullopt};
  const double step = std::min(1e-2, t_max / 1e4);
  double t0 = step;
  double f0 = f(t0);
  const long nsteps = static_cast<long>(std::ceil(t_max / step));
  for (long i = 2; i <= nsteps; ++i) {
    double t1 = std::min(static_cast<double>(i) * step, t_max);
    double f1 = f(t1);
    if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
      double lo = t0, hi = t1, flo = f0;
      while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((flo < 0.0) == (fm < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      scan.zeros.push_back(0.5 * (lo + hi));
    }
    t0 = t1;
    f0 = f1;
  }
  if (!scan.zeros.empty()) scan.max_zero = scan.zeros.back();
  return scan;
}

bool no_real_zeros(double mu, double eta) {
  if (!(mu > 1.0) || !(mu < 2.0)) {
    throw DomainError("no_real_zeros: mu must lie in (1, 2)");
  }
  return eta >= 1.5 * mu;
}

EnvelopeFit decay_envelope_fit(double mu, double eta, double z_max) {
  Evaluator ev(mu, eta);
  EnvelopeFit fit{0.0, 0.0, false};
  double m_inner = 0.0;  // restricted to z <= z_max/10
  auto probe = [&](double zv) {
    double v = (1.0 + zv) * std::fabs(ev.eval(-zv, 1e-10).value);
    if (v > fit.m_fitted) {
      fit.m_fitted = v;
      fit.z_at_max = zv;
    }
    if (zv <= z_max / 10.0) m_inner = std::max(m_inner, v);
  };
  probe(0.0);
  const int per_decade = 40;
  const double z_lo = 1e-3;
  const int decades = static_cast<int>(std::ceil(std::log10(z_max / z_lo)));
  for (int i = 0; i <= decades * per_decade; ++i) {
    double zv = z_lo * std::pow(10.0, static_cast<double>(i) / per_decade);
    if (zv > z_max) break;
    probe(zv);
  }
  fit.stabilized = (fit.m_fitted == m_inner);
  return fit;
}

}  // namespace fracmix::ml
