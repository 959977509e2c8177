#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracmix/mode_solver.hpp"

namespace fracmix::oracle {

// L1 discretization of the Caputo derivative of order alpha in (0, 1) on a
// uniform grid: weighted first differences, weights
// ((j+1)^{1-alpha} - j^{1-alpha}) dt^{-alpha} / Gamma(2-alpha).
// Exactly zero for constant samples. O(dt^{2-alpha}) for C^2 functions.
std::vector<double> caputo_apply_alpha(std::span<const double> samples, double alpha, double dt);

// Caputo derivative of order beta in (1, 2) via the Grunwald-Letnikov
// approximation of the Riemann-Liouville derivative applied to the samples
// minus the linear part v0 + v1 t (Caputo-RL relation). First-order accurate.
// Weights from w_0 = 1, w_j = w_{j-1} (1 - (beta+1)/j).
std::vector<double> caputo_apply_beta(std::span<const double> samples, double beta, double dt,
                                      double v0, double v1);

struct OracleRun {
  double order = 0.0;    // alpha or beta
  double lambda = 0.0;
  double dt = 0.0;       // nominal step horizon / N
  double horizon = 0.0;
  std::vector<double> t_grid;
  std::vector<double> values;
  std::vector<double> reference;
  double error_max = 0.0;      // max |values - reference| over the grid
  double error_horizon = 0.0;  // error at t = horizon (the rate-study metric)
  std::optional<double> observed_rate;
};

// Implicit L1 stepping of D^alpha v = -lambda v, v(0) = 1, on the graded mesh
// t_j = T (j/N)^r with r = (2-alpha)/alpha. The grading resolves the t^alpha
// layer of E_{alpha,1}(-lambda t^alpha), so the error decays at the scheme's
// full order 2-alpha; a uniform mesh stalls at first order for this datum.
// alpha = 1 degenerates to uniform backward Euler. Accepts alpha in (0, 1].
OracleRun step_mode_alpha(double lambda, double alpha, double dt, double horizon);

// Implicit Grunwald-Letnikov stepping of D^beta v = -lambda v, v(0) = v0,
// v'(0) = v1, uniform grid. Reference:
// v0 E_{beta,1}(-lambda t^beta) + v1 t E_{beta,2}(-lambda t^beta).
// Accepts beta in (1, 2].
OracleRun step_mode_beta(double lambda, double beta, double v0, double v1, double dt,
                         double horizon);

// Least-squares slope of log(error) against log(step). Throws
// DegenerateDataError for non-positive errors or a rounding-floor sequence.
double observed_order(std::span<const double> errors, std::span<const double> steps);

struct ResidualReport {
  double dt = 0.0;
  // Maxima over the fixed interior windows y in [b/2, b] and -y in [a/2, a];
  // this is what the local truncation controls (rates 2-alpha and 1). The
  // nodes adjacent to y = 0 carry the scheme's O(1) startup defect and only
  // enter the full-grid figures.
  double alpha_residual_interior = 0.0;
  double beta_residual_interior = 0.0;
  double alpha_residual_full = 0.0;
  double beta_residual_full = 0.0;
  std::string notes;
};

// Applies the discrete Caputo operators along y to the assembled field,
// adds the spectral image of l(u) (mode-wise lambda_k u_k re-summed), and
// reports the residual maxima.
ResidualReport residual_field_check(const modes::FieldSolution& f, const ProblemConfig& cfg,
                                    double dt);

}  // namespace fracmix::oracle
