#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracmix/errors.hpp"
#include "fracmix/gamma.hpp"
#include "fracmix/mittag_leffler.hpp"
#include "oracles.hpp"

using namespace fracmix;
using namespace fracmix::ml;

TEST_CASE("erfcx oracle sanity (independent of the library)") {
  // Against the C library erfc where it is reliable.
  for (double x : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0}) {
    double ref = std::exp(x * x) * std::erfc(x);
    CHECK(oracles::erfcx(x) == doctest::Approx(ref).epsilon(1e-13));
  }
  // Deep tail: at x = 10 the continued fraction alone stays in range.
  CHECK(oracles::erfcx(10.0) == doctest::Approx(0.05614099274382258585).epsilon(1e-13));
}

TEST_CASE("ml_eval trivial pins") {
  CHECK(ml_eval({1.0, 1.0, 0.0}).value == 1.0);
  auto r = ml_eval({1.0, 1.0, -1.0}, 1e-12);
  CHECK(r.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(r.abs_error_bound <= 1e-12);

  // E_{2,2}(-t^2) = sin(t)/t vanishes at t = pi.
  auto z = ml_eval({2.0, 2.0, -M_PI * M_PI}, 1e-10);
  CHECK(std::fabs(z.value) <= 1e-10);
}

TEST_CASE("ml_eval against the erfcx closed form, all regimes") {
  // E_{1/2,1}(-x) = erfcx(x); frozen spot value from the oracle:
  // erfcx(1) = 0.42758357615580700441.
  auto r1 = ml_eval({0.5, 1.0, -1.0}, 1e-12);
  CHECK(r1.value == doctest::Approx(0.42758357615580700441).epsilon(1e-12));

  for (double x : {0.05, 0.3, 1.0, 2.5, 4.0, 7.0, 10.0, 30.0, 100.0, 1e4}) {
    auto r = ml_eval({0.5, 1.0, -x}, 1e-11);
    double ref = oracles::erfcx(x);
    CHECK_MESSAGE(std::fabs(r.value - ref) <= r.abs_error_bound + 1e-13 * std::fabs(ref),
                  "x=", x, " value=", r.value, " ref=", ref, " bound=", r.abs_error_bound);
    CHECK(std::fabs(r.value - ref) <= 1e-9);
  }
}

TEST_CASE("identity suite: exp, cos, sinc") {
  Evaluator e11(1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    double z = -50.0 + 55.0 * i / 1000.0;
    worst = std::max(worst, std::fabs(e11.eval(z, 1e-11).value - std::exp(z)));
  }
  CHECK(worst <= 1e-10);

  Evaluator e21(2.0, 1.0), e22(2.0, 2.0);
  double wc = 0.0, ws = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    double t = 20.0 * i / 1000.0;
    wc = std::max(wc, std::fabs(e21.eval(-t * t, 1e-11).value - std::cos(t)));
    ws = std::max(ws, std::fabs(e22.eval(-t * t, 1e-11).value - std::sin(t) / t));
  }
  CHECK(wc <= 1e-10);
  CHECK(ws <= 1e-10);
}

TEST_CASE("term-shift recurrence E(z) = z E_{mu,mu+eta}(z) + 1/Gamma(eta)") {
  const double tol = 1e-11;
  for (double mu : {0.4, 0.5, 0.9, 1.3, 1.8}) {
    for (double eta : {1.0, 2.0}) {
      Evaluator lhs(mu, eta), rhs(mu, mu + eta);
      for (double z : {-40.0, -12.0, -3.0, -0.5, 0.0, 0.7, 3.0}) {
        double l = lhs.eval(z, tol).value;
        double r = z * rhs.eval(z, tol).value + rgamma(eta);
        CHECK_MESSAGE(std::fabs(l - r) <= 10.0 * tol, "mu=", mu, " eta=", eta, " z=", z);
      }
    }
  }
}

TEST_CASE("bound honesty against the long-double brute-force series") {
  for (double mu : {0.3, 0.6, 1.1, 1.7}) {
    for (double eta : {1.0, 2.0}) {
      for (double z : {-6.0, -2.0, -0.4, 0.8}) {
        double noise = 0.0;
        double ref = oracles::ml_series_brute(mu, eta, z, &noise);
        if (noise > 1e-9) continue;  // oracle unusable: its own cancellation
        auto r = ml_eval({mu, eta, z}, 1e-11);
        CHECK_MESSAGE(std::fabs(r.value - ref) <= r.abs_error_bound + noise,
                      "mu=", mu, " eta=", eta, " z=", z);
      }
    }
  }
}

TEST_CASE("strategy crossover: extended-precision series vs asymptotic agree") {
  // Near the dispatch boundary both engines must be usable; their values have
  // to agree within the combined bounds.
  for (auto [mu, eta] : {std::pair{0.3, 1.0}, {0.5, 1.0}, {0.8, 2.0},
                         {1.2, 2.0}, {1.5, 2.0}, {1.9, 2.0}}) {
    Evaluator ev(mu, eta);
    double xc = std::pow(30.0, mu);  // near where the asymptotic reaches ~1e-13
    for (double f : {0.85, 1.0, 1.15}) {
      double x = xc * f;
      auto rd = ev.eval_series_dd(-x);
      auto ra = ev.eval_asymptotic(x, 1e-30);  // run to optimal truncation
      REQUIRE(rd.abs_error_bound < 1e-10);
      CHECK_MESSAGE(std::fabs(rd.value - ra.value) <=
                        rd.abs_error_bound + ra.abs_error_bound,
                    "mu=", mu, " eta=", eta, " x=", x, " dd=", rd.value, " asym=", ra.value);
    }
  }
}

TEST_CASE("method dispatch picks the documented regimes") {
  CHECK(ml_eval({0.7, 1.0, -0.5}, 1e-10).method == Method::series);
  CHECK(ml_eval({0.7, 1.0, -20.0}, 1e-10).method == Method::asymptotic);
  // mid-range cancellation: extended precision
  CHECK(ml_eval({1.5, 2.0, -80.0}, 1e-12).method == Method::extended_precision);
}

TEST_CASE("ml_asymptotic: leading forms from the expansion") {
  // j = 1 term of E_{mu,1}(-x): 1/(x Gamma(1-mu)).
  auto r = ml_asymptotic(0.4, 1.0, 1e4, 1);
  CHECK(r.value == doctest::Approx(1.0 / (1e4 * std::tgamma(0.6))).epsilon(1e-12));
  // (beta, 2) form: 1/(x Gamma(2-beta)) with beta = 1.5.
  auto r2 = ml_asymptotic(1.5, 2.0, 1e4, 1);
  CHECK(r2.value == doctest::Approx(1.0 / (1e4 * std::tgamma(0.5))).epsilon(1e-12));

  // Cross-check against ml_eval within the combined returned bounds.
  auto r3 = ml_asymptotic(0.5, 1.0, 100.0, 3);
  auto rv = ml_eval({0.5, 1.0, -100.0}, 1e-12);
  CHECK(std::fabs(r3.value - rv.value) <= r3.abs_error_bound + rv.abs_error_bound);
  CHECK(r3.abs_error_bound < 1e-9);

  // x too small for the requested depth.
  CHECK_THROWS_AS(ml_asymptotic(0.5, 1.0, 1.05, 40), AsymptoticRegimeError);
  CHECK_THROWS_AS(ml_asymptotic(2.0, 1.0, 10.0, 1), DomainError);
  CHECK_THROWS_AS(ml_asymptotic(0.5, 1.0, -3.0, 1), DomainError);
}

TEST_CASE("asymptotic match invariant at x >= 1e3") {
  for (auto [mu, eta] : {std::pair{0.4, 1.0}, {0.9, 1.0}, {1.2, 2.0}, {1.5, 2.0}}) {
    for (double x : {1e3, 1e4, 1e5}) {
      auto ra = ml_asymptotic(mu, eta, x, 2);
      auto rv = ml_eval({mu, eta, -x}, 1e-12);
      CHECK_MESSAGE(std::fabs(ra.value - rv.value) <= ra.abs_error_bound + rv.abs_error_bound,
                    "mu=", mu, " eta=", eta, " x=", x);
    }
  }
}

TEST_CASE("decay envelope: finite, stabilized, reported") {
  for (auto [mu, eta] : {std::pair{0.5, 1.0}, {1.5, 2.0}}) {
    auto fit = decay_envelope_fit(mu, eta, 1e6);
    CHECK(std::isfinite(fit.m_fitted));
    CHECK(fit.m_fitted > 0.0);
    CHECK(fit.stabilized);
  }
}

TEST_CASE("real zeros: oscillatory family mu=1.9") {
  auto scan = ml_real_zeros(1.9, 2.0, 1000.0);
  // Frozen against an independent high-precision scan: 12 sign-change zeros
  // on (0, 1000], the first near 9.5141431, the last near 994.89339.
  CHECK(scan.zeros.size() == 12);
  REQUIRE(scan.max_zero.has_value());
  CHECK(scan.zeros.front() == doctest::Approx(9.5141431).epsilon(1e-6));
  CHECK(*scan.max_zero == doctest::Approx(994.8933933).epsilon(1e-6));

  // ascending and sign-change-bracketed
  Evaluator ev(1.9, 2.0);
  for (size_t i = 0; i < scan.zeros.size(); ++i) {
    if (i > 0) CHECK(scan.zeros[i] > scan.zeros[i - 1]);
    double t = scan.zeros[i];
    double fl = ev.eval(-(t - 1e-7), 1e-12).value;
    double fr = ev.eval(-(t + 1e-7), 1e-12).value;
    CHECK(fl * fr < 0.0);
    CHECK(std::fabs(ev.eval(-t, 1e-12).value) <= 1e-8);
  }
}

TEST_CASE("real zeros: guaranteed-empty and empirically-empty cases") {
  // eta >= 3 mu / 2 guarantees no zeros: (1.2, 2), 2 >= 1.8.
  auto s1 = ml_real_zeros(1.2, 2.0, 1000.0);
  CHECK(s1.zeros.empty());
  CHECK(!s1.max_zero.has_value());

  // Boundary eta = 3 mu / 2 included.
  auto s2 = ml_real_zeros(1.5, 2.25, 200.0);
  CHECK(s2.zeros.empty());

  // (1.5, 2): the sufficient condition fails (2 < 2.25) yet the function has
  // no real zeros; the scan must not invent any.
  auto s3 = ml_real_zeros(1.5, 2.0, 40.0);
  CHECK(s3.zeros.empty());
}

TEST_CASE("no_real_zeros sufficient condition") {
  CHECK(no_real_zeros(1.5, 2.25));
  CHECK(!no_real_zeros(1.5, 2.0));
  CHECK(no_real_zeros(1.1, 2.0));
  CHECK_THROWS_AS(no_real_zeros(0.9, 2.0), DomainError);
  CHECK_THROWS_AS(no_real_zeros(2.0, 4.0), DomainError);
}

TEST_CASE("domain and convergence errors") {
  CHECK_THROWS_AS(ml_eval({0.0, 1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(ml_eval({2.5, 1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(ml_eval({0.5, 1.0, -1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(ml_real_zeros(0.5, 1.0, 10.0), DomainError);

  // An impossible tolerance in the cancellation band reports the best bound.
  try {
    ml_eval({0.5, 1.0, -20.0}, 1e-30);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(e.best_bound() > 1e-30);
    CHECK(e.best_bound() < 1e-10);
    CHECK(std::fabs(e.best_value() - oracles::erfcx(20.0)) <= e.best_bound());
  }
}
