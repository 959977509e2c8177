#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracmix/problem.hpp"

namespace fracmix::modes {

struct ModeSolution {
  int k = 0;
  double lambda = 0.0;
  double phi_k = 0.0;
  double delta_k = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

struct FieldSolution {
  ProblemConfig config;
  std::vector<spectral::EigenPair> eigs;
  std::vector<ModeSolution> modes;
  std::vector<double> x_grid;  // nx+1 nodes on [0, pi]
  std::vector<double> y_grid;  // ny+1 nodes containing -a, 0, b exactly
  std::vector<double> values;  // values[ix * y_grid.size() + iy]
  // Estimate of the dropped l(u)-series remainder M sum_{k>K} lambda_k |phi_k|
  // sup|X_k| extrapolated from the computed coefficient decay; +inf when the
  // fitted decay does not converge. An estimate, not a theorem.
  double tail_bound = 0.0;
  // Companion estimate for the jump-condition remainder sum_{k>K} |phi_k| sup|X_k|.
  double jump_tail_bound = 0.0;
  std::vector<int> zeroed_modes;  // degenerate indices solved by orthogonality
  bool quadrature_warning = false;

  double value_at(size_t ix, size_t iy) const { return values[ix * y_grid.size() + iy]; }
};

// Delta(k) of the uniqueness criterion:
// E_{alpha,1}(-lambda b^alpha) - E_{beta,1}(-lambda a^beta) - a lambda E_{beta,2}(-lambda a^beta).
double delta(double lambda, const ProblemConfig& cfg);

struct UniquenessReport {
  std::vector<double> lambdas;
  std::vector<double> deltas;
  double min_abs_delta = 0.0;
  int argmin_k = 0;
  std::vector<int> flagged;      // |Delta(k)| <= degenerate threshold
  double limit = 0.0;            // -1/(a^{beta-1} Gamma(2-beta))
  std::optional<double> h;       // max real zero of E_{beta,2}(-t), when any
  bool h_excluded_by_condition = false;  // eta >= 3 beta/2 held, no scan needed
  std::optional<int> k0;         // first k with lambda_k a^beta > h
  double observed_conv_order = 0.0;  // fitted decay order of |Delta(k) - limit|
  std::string notes;
};

UniquenessReport uniqueness_scan(const ProblemConfig& cfg);

// c1 = phi_k / Delta(k), c2 = c1, c3 = lambda_k c1.
// Throws DegenerateModeError when |Delta(k)| is at or below the threshold.
ModeSolution solve_mode(int k, double lambda_k, double phi_k, const ProblemConfig& cfg);

// u_k(y) on [-a, b]; both branches agree (= c1) at y = 0.
double eval_mode(const ModeSolution& m, double y, const ProblemConfig& cfg);
// The y < 0 branch evaluated at t = -y >= 0 (exposed for transmission checks).
double eval_mode_neg_branch(const ModeSolution& m, double t, const ProblemConfig& cfg);

FieldSolution assemble(const ProblemConfig& cfg);

// Remark-2 path: degenerate modes with phi_k orthogonal get the minimal-norm
// completion c1 = 0; otherwise throws InfeasibleError with the violators.
FieldSolution solve_degenerate(const ProblemConfig& cfg, std::span<const int> degenerate_indices);

struct TransmissionReport {
  double continuity_max = 0.0;     // max_k |u_k(+0) - u_k(-0)| (0 by construction)
  double flux_identity_max = 0.0;  // max_k |c3 - lambda_k c1| (exact)
  std::vector<double> flux_fd_steps;   // finite-difference corroboration of u_y(x,-0)
  std::vector<double> flux_fd_errors;  // max_x |FD - analytic|, per step
  double jump_residual_max = 0.0;  // max_x |u(x,b) - u(x,-a) - phi(x)|
  std::string notes;
};

TransmissionReport transmission_check(const FieldSolution& f);

}  // namespace fracmix::modes
