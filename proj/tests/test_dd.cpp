#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracmix/dd.hpp"
#include "fracmix/gamma.hpp"

using namespace fracmix;

namespace {

double rel_err(const DD& got, double hi, double lo) {
  DD diff = got - DD(hi, lo);
  double scale = std::fabs(hi) > 0 ? std::fabs(hi) : 1.0;
  return std::fabs(diff.value()) / scale;
}

}  // namespace

TEST_CASE("dd ring operations keep ~31 digits") {
  DD a(1.0);
  DD third = a / 3.0;
  DD one = third * 3.0;
  CHECK(std::fabs((one - 1.0).value()) < 1e-31);

  // (1 + 1e-20)^2 = 1 + 2e-20 + 1e-40: the 2e-20 must survive.
  DD x = DD(1.0) + 1e-20;
  DD sq = x * x;
  CHECK(std::fabs((sq - 1.0).value() - 2e-20) < 1e-35);
}

TEST_CASE("dd sqrt, exp, log against known double-double values") {
  // sqrt(2) hi/lo split
  CHECK(rel_err(dd_sqrt(DD(2.0)), 1.4142135623730951455e+00, -9.6672933134529158237e-17) < 1e-30);
  // exp(1)
  CHECK(rel_err(dd_exp(DD(1.0)), 2.7182818284590450908e+00, 1.4456468917292501578e-16) < 1e-30);
  // log(2)
  CHECK(rel_err(dd_log(DD(2.0)), 6.9314718055994528623e-01, 2.3190468138462995584e-17) < 1e-30);
  // exp(log(x)) = x round trip at a few magnitudes
  for (double v : {0.37, 3.0, 150.0, 1e8}) {
    DD r = dd_exp(dd_log(DD(v)));
    CHECK(std::fabs((r - v).value()) / v < 1e-29);
  }
}

TEST_CASE("dd sinpi: exact integer zeros and known values") {
  CHECK(dd_sinpi(DD(3.0)).value() == 0.0);
  CHECK(dd_sinpi(DD(-7.0)).value() == 0.0);
  // sin(pi/2) = 1
  CHECK(std::fabs((dd_sinpi(DD(0.5)) - 1.0).value()) < 1e-31);
  // sin(pi/6) = 1/2
  CHECK(std::fabs((dd_sinpi(DD(1.0) / 6.0) - 0.5).value()) < 1e-31);
  // sign and periodicity: sin(pi (n + r)) = (-1)^n sin(pi r)
  DD v1 = dd_sinpi(DD(0.3));
  DD v2 = dd_sinpi(DD(5.0) + DD(0.3));
  CHECK(std::fabs((v1 + v2).value()) < 2e-31);
}

TEST_CASE("Spouge gamma in double-double") {
  // Gamma(0.5) = sqrt(pi)
  DD g_half = gamma_dd(DD(0.5));
  DD sqrt_pi = dd_sqrt(ddconst::pi);
  CHECK(std::fabs((g_half - sqrt_pi).value()) / sqrt_pi.hi < 1e-28);

  // Integer factorials, exactly representable
  DD g7 = gamma_dd(DD(7.0));
  CHECK(std::fabs((g7 - 720.0).value()) / 720.0 < 1e-28);

  // Recurrence Gamma(x+1) = x Gamma(x) across magnitudes
  for (double x : {0.7, 1.3, 4.6, 23.25, 87.5}) {
    DD lhs = gamma_dd(DD(x) + 1.0);
    DD rhs = DD(x) * gamma_dd(DD(x));
    CHECK(std::fabs((lhs - rhs).value()) / std::fabs(lhs.value()) < 1e-28);
  }

  // Reflection through rgamma_dd: 1/Gamma(-0.5) = -1/(2 sqrt(pi)) * ... via
  // Gamma(-0.5) = -2 sqrt(pi)
  DD rg = rgamma_dd(DD(-0.5));
  DD expect = -1.0 / (2.0 * sqrt_pi);
  CHECK(std::fabs((rg - expect).value()) / std::fabs(expect.value()) < 1e-28);

  // Poles: exact zeros
  CHECK(rgamma_dd(DD(0.0)).value() == 0.0);
  CHECK(rgamma_dd(DD(-3.0)).value() == 0.0);
}

TEST_CASE("double rgamma and signed_log_gamma") {
  CHECK(rgamma(1.0) == 1.0);
  CHECK(rgamma(2.0) == 1.0);
  CHECK(rgamma(0.0) == 0.0);
  CHECK(rgamma(-2.0) == 0.0);
  CHECK(rgamma(0.5) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
  // Gamma(-0.5) = -2 sqrt(pi)
  CHECK(rgamma(-0.5) == doctest::Approx(-1.0 / (2.0 * std::sqrt(M_PI))).epsilon(1e-14));

  auto slg = signed_log_gamma(-0.5);
  CHECK(slg.sign == -1);
  CHECK(slg.log_abs == doctest::Approx(std::log(2.0 * std::sqrt(M_PI))).epsilon(1e-13));
  CHECK(signed_log_gamma(-1.5).sign == 1);
  CHECK(signed_log_gamma(-2.0).sign == 0);
}
