#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fracmix::spectral {

// amplitude * sin(frequency * x) on [0, pi]
struct AnalyticSine {
  double amplitude;
  int frequency;
};

// Uniform samples on [0, pi] including both endpoints; linear interpolation
// between nodes.
struct SampledFn {
  std::vector<double> values;
  double value(double x) const;
};

struct EigenPair {
  int k = 0;           // 1-based index
  double lambda = 0.0;
  std::variant<AnalyticSine, SampledFn> fn;

  double value(double x) const;
  double max_abs() const;
  bool analytic() const { return std::holds_alternative<AnalyticSine>(fn); }
};

// lambda_k = k^{2s} + p0, X_k = sqrt(2/pi) sin(kx). Throws
// PositivityViolationError when lambda_1 <= 0.
std::vector<EigenPair> analytic_eigens(int s, double p0_const, int K);

// Eigenpairs of -X'' + p0(x) X = lambda X, X(0)=X(pi)=0 by second-order
// central differences; Sturm-sequence bisection for the eigenvalues, inverse
// iteration for the eigenvectors, trapezoid normalization. p0 holds samples
// on the n interior nodes of a uniform grid; requires n >= 8K.
std::vector<EigenPair> numeric_eigens_s1(std::span<const double> p0_interior, int K);

struct AsymptoticFit {
  double c0;
  double c2;
  double residual_norm;
};

// Least-squares fit of lambda_k - k^{2s} against {1, k^{-2}} over the top
// half of the supplied indices.
AsymptoticFit asymptotic_fit(const std::vector<EigenPair>& eigs, int s);

// Source datum phi on [0, pi]: a sine combination (coeffs[k-1] multiplies
// sin(kx)), uniform samples including endpoints, or an arbitrary callable.
struct SineCombo {
  std::vector<double> coeffs;
};
struct PhiSamples {
  std::vector<double> values;
};
using PhiSpec = std::variant<SineCombo, PhiSamples, std::function<double(double)>>;

double phi_value(const PhiSpec& phi, double x);

struct SourceData {
  std::vector<double> coefficients;  // phi_k for k = 1..K
  bool quadrature_warning = false;
  double quadrature_error_estimate = 0.0;
};

// phi_k = integral of phi X_k; exact sine orthogonality when both sides are
// analytic, composite Simpson otherwise. Sets quadrature_warning when the
// estimated quadrature error exceeds 1e-8.
SourceData fourier_coeffs(const PhiSpec& phi, const std::vector<EigenPair>& eigs);

struct PhiCheck {
  std::string quantity;
  double value;
  double uncertainty;
  bool pass;
};
struct PhiValidationReport {
  std::vector<PhiCheck> checks;
  bool all_pass = true;
};

// Endpoint compatibility checks phi^{(2j)}(0) = phi^{(2j)}(pi) = 0 and the
// same for lphi = (-1)^s phi^{(2s)} + p0 phi, j = 0..s-1, against threshold
// 1e-8 (widened by the finite-difference uncertainty for non-analytic phi).
// Report only; violations downgrade convergence guarantees but do not abort.
PhiValidationReport validate_phi(const PhiSpec& phi, int s,
                                 const std::function<double(double)>& p0);

// Monotone partial sums of sum_k X_k(x)^2 / lambda_k^2.
std::vector<double> bessel_bound_check(const std::vector<EigenPair>& eigs, double x_probe);

}  // namespace fracmix::spectral
