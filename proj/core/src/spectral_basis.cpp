#include "fracmix/spectral_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracmix/errors.hpp"
#include "fracmix/quadrature.hpp"

namespace fracmix::spectral {

namespace {

double ipow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

double SampledFn::value(double x) const {
  return lerp_uniform(values, 0.0, M_PI, x);
}

double EigenPair::value(double x) const {
  if (const auto* a = std::get_if<AnalyticSine>(&fn)) {
    return a->amplitude * std::sin(a->frequency * x);
  }
  return std::get<SampledFn>(fn).value(x);
}

double EigenPair::max_abs() const {
  if (const auto* a = std::get_if<AnalyticSine>(&fn)) return std::fabs(a->amplitude);
  const auto& v = std::get<SampledFn>(fn).values;
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

std::vector<EigenPair> analytic_eigens(int s, double p0_const, int K) {
  if (s < 1) throw DomainError("analytic_eigens: s must be >= 1");
  if (K < 1) throw DomainError("analytic_eigens: K must be >= 1");
  if (1.0 + p0_const <= 0.0) {
    throw PositivityViolationError("analytic_eigens: lambda_1 = 1 + p0 = " +
                                   std::to_string(1.0 + p0_const) + " is not positive");
  }
  const double amp = std::sqrt(2.0 / M_PI);
  std::vector<EigenPair> eigs;
  eigs.reserve(K);
  for (int k = 1; k <= K; ++k) {
    eigs.push_back({k, ipow(static_cast<double>(k), 2 * s) + p0_const,
                    AnalyticSine{amp, k}});
  }
  return eigs;
}

namespace {

// Number of eigenvalues of the symmetric tridiagonal (diag, off) below sigma,
// by the Sturm sign-agreement count of the LDL^T pivots.
int sturm_count(std::span<const double> diag, double off2, double sigma) {
  int count = 0;
  double q = 1.0;
  const double tiny = 1e-300;
  for (size_t i = 0; i < diag.size(); ++i) {
    q = diag[i] - sigma - (i > 0 ? off2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

// Tridiagonal LU with partial pivoting (dgttrf-style) and a solver.
struct TriLU {
  std::vector<double> dl, d, du, du2;
  std::vector<int> piv;

  // dgttrf-style factorization.
  void factor(std::vector<double> lower, std::vector<double> main, std::vector<double> upper) {
    const int n = static_cast<int>(main.size());
    dl = std::move(lower);
    d = std::move(main);
    du = std::move(upper);
    du2.assign(std::max(0, n - 2), 0.0);
    piv.assign(n, 0);
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int i = 0; i < n - 1; ++i) {
      if (std::fabs(d[i]) >= std::fabs(dl[i])) {
        if (d[i] == 0.0) d[i] = 1e-300;
        double m = dl[i] / d[i];
        dl[i] = m;
        d[i + 1] -= m * du[i];
      } else {
        double m = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = m;
        double tmp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = tmp - m * d[i + 1];
        if (i < n - 2) {
          du2[i] = du[i + 1];
          du[i + 1] = -m * du[i + 1];
        }
        piv[i] = i + 1;
      }
    }
    if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
  }

  void solve(std::vector<double>& b) const {
    const int n = static_cast<int>(d.size());
    for (int i = 0; i < n - 1; ++i) {
      if (piv[i] != i) std::swap(b[i], b[i + 1]);
      b[i + 1] -= dl[i] * b[i];
    }
    b[n - 1] /= d[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (int i = n - 3; i >= 0; --i) {
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
  }
};

}  // namespace

std::vector<EigenPair> numeric_eigens_s1(std::span<const double> p0_interior, int K) {
  const int n = static_cast<int>(p0_interior.size());
  if (K < 1) throw DomainError("numeric_eigens_s1: K must be >= 1");
  if (n < 8 * K) {
    throw DomainError("numeric_eigens_s1: need n >= 8K interior points (n=" +
                      std::to_string(n) + ", K=" + std::to_string(K) + ")");
  }
  const double h = M_PI / (n + 1);
  const double off = -1.0 / (h * h);
  const double off2 = off * off;
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = 2.0 / (h * h) + p0_interior[i];

  double dmin = *std::min_element(diag.begin(), diag.end());
  double dmax = *std::max_element(diag.begin(), diag.end());
  double glo = dmin - 2.0 * std::fabs(off);
  double ghi = dmax + 2.0 * std::fabs(off);

  std::vector<EigenPair> eigs;
  eigs.reserve(K);
  for (int k = 1; k <= K; ++k) {
    double lo = glo, hi = ghi;
    int iter = 0;
    while (hi - lo > 1e-13 * std::max({std::fabs(lo), std::fabs(hi), 1.0})) {
      if (++iter > 200) {
        throw ConvergenceFailureError("numeric_eigens_s1: bisection stalled at k=" +
                                      std::to_string(k), k);
      }
      double mid = 0.5 * (lo + hi);
      if (sturm_count(diag, off2, mid) >= k)
        hi = mid;
      else
        lo = mid;
    }
    double lambda = 0.5 * (lo + hi);

    // Inverse iteration from the exact p0=0 eigenvector shape.
    double shift = lambda * (1.0 + 1e-12) + 1e-30;
    TriLU lu;
    {
      std::vector<double> main(n), lower(n - 1, off), upper(n - 1, off);
      for (int i = 0; i < n; ++i) main[i] = diag[i] - shift;
      lu.factor(std::move(lower), std::move(main), std::move(upper));
    }
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::sin(k * (i + 1) * h);
    for (int sweep = 0; sweep < 3; ++sweep) {
      lu.solve(v);
      double nrm = 0.0;
      for (double t : v) nrm += t * t;
      nrm = std::sqrt(nrm);
      for (double& t : v) t /= nrm;
    }

    // Residual of the discrete eigenproblem.
    double resid = 0.0, vmax = 0.0;
    for (int i = 0; i < n; ++i) {
      double av = diag[i] * v[i] + (i > 0 ? off * v[i - 1] : 0.0) +
                  (i < n - 1 ? off * v[i + 1] : 0.0);
      resid = std::max(resid, std::fabs(av - lambda * v[i]));
      vmax = std::max(vmax, std::fabs(v[i]));
    }
    if (resid > 1e-7 * (std::fabs(lambda) + 1.0) * vmax) {
      throw ConvergenceFailureError("numeric_eigens_s1: inverse iteration residual " +
                                    std::to_string(resid) + " at k=" + std::to_string(k), k);
    }

    // Trapezoid normalization over [0, pi]; endpoint values are zero.
    double l2 = 0.0;
    for (double t : v) l2 += t * t;
    double scale = 1.0 / std::sqrt(h * l2);
    for (int i = 0; i < n; ++i) {
      if (v[i] != 0.0) {
        if (v[i] < 0.0) scale = -scale;
        break;
      }
    }
    SampledFn fn;
    fn.values.assign(n + 2, 0.0);
    for (int i = 0; i < n; ++i) fn.values[i + 1] = v[i] * scale;
    eigs.push_back({k, lambda, std::move(fn)});
  }
  return eigs;
}

AsymptoticFit asymptotic_fit(const std::vector<EigenPair>& eigs, int s) {
  if (eigs.size() < 6) {
    throw InsufficientDataError("asymptotic_fit: need >= 6 eigenpairs");
  }
  size_t from = eigs.size() / 2;
  std::vector<double> xs, ys;
  for (size_t i = from; i < eigs.size(); ++i) {
    double k = eigs[i].k;
    xs.push_back(1.0 / (k * k));
    ys.push_back(eigs[i].lambda - ipow(k, 2 * s));
  }
  LinearFit f = linear_fit(xs, ys);
  return {f.intercept, f.slope, f.residual_norm};
}

double phi_value(const PhiSpec& phi, double x) {
  if (const auto* sc = std::get_if<SineCombo>(&phi)) {
    double v = 0.0;
    for (size_t i = 0; i < sc->coeffs.size(); ++i) {
      v += sc->coeffs[i] * std::sin((i + 1) * x);
    }
    return v;
  }
  if (const auto* ps = std::get_if<PhiSamples>(&phi)) {
    return lerp_uniform(ps->values, 0.0, M_PI, x);
  }
  return std::get<std::function<double(double)>>(phi)(x);
}

SourceData fourier_coeffs(const PhiSpec& phi, const std::vector<EigenPair>& eigs) {
  SourceData out;
  out.coefficients.reserve(eigs.size());

  const auto* sc = std::get_if<SineCombo>(&phi);
  bool all_analytic = std::all_of(eigs.begin(), eigs.end(),
                                  [](const EigenPair& e) { return e.analytic(); });
  if (sc && all_analytic) {
    // Exact orthogonality: integral of sin(kx)^2 over [0, pi] is pi/2.
    for (const auto& e : eigs) {
      const auto& a = std::get<AnalyticSine>(e.fn);
      int k = a.frequency;
      double ck = (k >= 1 && static_cast<size_t>(k) <= sc->coeffs.size())
                      ? sc->coeffs[k - 1]
                      : 0.0;
      out.coefficients.push_back(ck * a.amplitude * M_PI / 2.0);
    }
    return out;
  }

  // Simpson quadrature. For sampled phi the native grid is used (the sample
  // count fixes the resolution); otherwise >= 2049 points.
  int n = 2048;
  if (const auto* ps = std::get_if<PhiSamples>(&phi)) {
    int m = static_cast<int>(ps->values.size()) - 1;
    if (m < 8 || m % 2 != 0) {
      throw DomainError("fourier_coeffs: phi samples need an odd count >= 9");
    }
    n = m;
  }
  for (const auto& e : eigs) {
    QuadResult q = simpson([&](double x) { return phi_value(phi, x) * e.value(x); },
                           0.0, M_PI, n);
    out.coefficients.push_back(q.value);
    out.quadrature_error_estimate = std::max(out.quadrature_error_estimate, q.error_estimate);
  }
  out.quadrature_warning = out.quadrature_error_estimate > 1e-8;
  return out;
}

namespace {

// One-sided even-order derivative at an endpoint by forward/backward
// differences with one Richardson step. side = +1 at x=0, -1 at x=pi.
struct DerivEstimate {
  double value;
  double uncertainty;
};

DerivEstimate fd_endpoint_derivative(const std::function<double(double)>& f, int order,
                                     int side, double h) {
  auto diff = [&](double step) {
    double x0 = side > 0 ? 0.0 : M_PI;
    double acc = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= order; ++i) {
      double sgn = ((order - i) % 2 == 0) ? 1.0 : -1.0;
      acc += sgn * binom * f(x0 + side * i * step);
      binom = binom * (order - i) / (i + 1.0);
    }
    return acc / std::pow(step, order);
  };
  double d1 = diff(h);
  double d2 = diff(h / 2.0);
  double rich = 2.0 * d2 - d1;
  double noise = std::numeric_limits<double>::epsilon() * std::pow(2.0, order + 2) /
                 std::pow(h / 2.0, order);
  return {rich, std::fabs(d2 - d1) + noise};
}

}  // namespace

PhiValidationReport validate_phi(const PhiSpec& phi, int s,
                                 const std::function<double(double)>& p0) {
  if (s < 1) throw DomainError("validate_phi: s must be >= 1");
  PhiValidationReport report;

  const auto* sc = std::get_if<SineCombo>(&phi);
  auto add_check = [&](const std::string& name, double value, double unc) {
    bool pass = std::fabs(value) <= std::max(1e-8, 10.0 * unc);
    report.checks.push_back({name, value, unc, pass});
    report.all_pass = report.all_pass && pass;
  };

  auto deriv = [&](int order, int side) -> DerivEstimate {
    if (sc) {
      // Even derivatives of sin(kx) vanish at both endpoints.
      return {0.0, 0.0};
    }
    double h = 1e-3;
    if (const auto* ps = std::get_if<PhiSamples>(&phi)) {
      // Use the native sample spacing so the stencil reads raw samples.
      h = M_PI / (static_cast<int>(ps->values.size()) - 1);
    } else if (order >= 4) {
      h = 5e-2;  // balance truncation vs eps amplification for high orders
    }
    return fd_endpoint_derivative([&](double x) { return phi_value(phi, x); },
                                  order, side, h);
  };

  double sgn_s = (s % 2 == 0) ? 1.0 : -1.0;
  for (int j = 0; j < s; ++j) {
    for (int side : {+1, -1}) {
      std::string at = side > 0 ? "(0)" : "(pi)";
      DerivEstimate d = deriv(2 * j, side);
      add_check("phi^(" + std::to_string(2 * j) + ")" + at, d.value, d.uncertainty);

      // lphi^{(2j)} = (-1)^s phi^{(2j+2s)} + p0 phi^{(2j)}; derivative cross
      // terms of a variable p0 are omitted (the numeric-p0 path is s=1,
      // where only j=0 arises and none exist).
      DerivEstimate dh = deriv(2 * j + 2 * s, side);
      double x0 = side > 0 ? 0.0 : M_PI;
      double lval = sgn_s * dh.value + p0(x0) * d.value;
      double lunc = dh.uncertainty + std::fabs(p0(x0)) * d.uncertainty;
      add_check("l(phi)^(" + std::to_string(2 * j) + ")" + at, lval, lunc);
    }
  }
  return report;
}

std::vector<double> bessel_bound_check(const std::vector<EigenPair>& eigs, double x_probe) {
  if (eigs.size() < 2) throw DomainError("bessel_bound_check: need >= 2 eigenpairs");
  std::vector<double> partial;
  partial.reserve(eigs.size());
  double acc = 0.0;
  for (const auto& e : eigs) {
    double xv = e.value(x_probe);
    acc += xv * xv / (e.lambda * e.lambda);
    partial.push_back(acc);
  }
  return partial;
}

}  // namespace fracmix::spectral
