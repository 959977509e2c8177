#include "fracmix/caputo_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "fracmix/errors.hpp"
#include "fracmix/mittag_leffler.hpp"
#include "fracmix/quadrature.hpp"

namespace fracmix::oracle {

namespace {

std::vector<double> l1_weights(double alpha, int n) {
  std::vector<double> w(n + 1);
  for (int j = 0; j <= n; ++j) {
    w[j] = std::pow(j + 1.0, 1.0 - alpha) - std::pow(static_cast<double>(j), 1.0 - alpha);
  }
  return w;
}

std::vector<double> l1_apply(std::span<const double> f, double alpha, double dt) {
  const int n = static_cast<int>(f.size()) - 1;
  auto w = l1_weights(alpha, n);
  const double c = std::pow(dt, -alpha) / std::tgamma(2.0 - alpha);
  std::vector<double> out(n + 1, 0.0);
  for (int m = 1; m <= n; ++m) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
      s += w[j] * (f[m - j] - f[m - j - 1]);
    }
    out[m] = c * s;
  }
  return out;
}

std::vector<double> gl_weights(double beta, int n) {
  std::vector<double> w(n + 1);
  w[0] = 1.0;
  for (int j = 1; j <= n; ++j) {
    w[j] = w[j - 1] * (1.0 - (beta + 1.0) / j);
  }
  return w;
}

std::vector<double> gl_apply(std::span<const double> f, double beta, double dt, double v0,
                             double v1) {
  const int n = static_cast<int>(f.size()) - 1;
  auto w = gl_weights(beta, n);
  std::vector<double> g(n + 1);
  for (int m = 0; m <= n; ++m) g[m] = f[m] - v0 - v1 * (m * dt);
  const double c = std::pow(dt, -beta);
  std::vector<double> out(n + 1, 0.0);
  for (int m = 1; m <= n; ++m) {
    double s = 0.0;
    for (int j = 0; j <= m; ++j) s += w[j] * g[m - j];
    out[m] = c * s;
  }
  return out;
}

}  // namespace

std::vector<double> caputo_apply_alpha(std::span<const double> samples, double alpha, double dt) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw DomainError("caputo_apply_alpha: alpha must lie in (0, 1)");
  }
  if (!(dt > 0.0)) throw DomainError("caputo_apply_alpha: dt must be positive");
  if (samples.size() < 2) throw DomainError("caputo_apply_alpha: need >= 2 samples");
  return l1_apply(samples, alpha, dt);
}

std::vector<double> caputo_apply_beta(std::span<const double> samples, double beta, double dt,
                                      double v0, double v1) {
  if (!(beta > 1.0) || !(beta < 2.0)) {
    throw DomainError("caputo_apply_beta: beta must lie in (1, 2)");
  }
  if (!(dt > 0.0)) throw DomainError("caputo_apply_beta: dt must be positive");
  if (samples.size() < 2) throw DomainError("caputo_apply_beta: need >= 2 samples");
  return gl_apply(samples, beta, dt, v0, v1);
}

OracleRun step_mode_alpha(double lambda, double alpha, double dt, double horizon) {
  if (!(lambda >= 0.0)) throw DomainError("step_mode_alpha: lambda must be >= 0");
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw DomainError("step_mode_alpha: alpha must lie in (0, 1]");
  }
  if (!(dt > 0.0) || !(horizon > 0.0) || dt > horizon) {
    throw DomainError("step_mode_alpha: need 0 < dt <= horizon");
  }
  const int n = std::max(2, static_cast<int>(std::lround(horizon / dt)));
  const double r = (2.0 - alpha) / alpha;
  const double p = 1.0 - alpha;
  const double c = 1.0 / std::tgamma(2.0 - alpha);

  OracleRun run;
  run.order = alpha;
  run.lambda = lambda;
  run.dt = horizon / n;
  run.horizon = horizon;
  run.t_grid.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    run.t_grid[j] = horizon * std::pow(static_cast<double>(j) / n, r);
  }
  auto& t = run.t_grid;
  auto& v = run.values;
  v.assign(n + 1, 1.0);
  for (int m = 1; m <= n; ++m) {
    double dtm = t[m] - t[m - 1];
    double coef = c * std::pow(dtm, -alpha);
    double rhs = 0.0;
    for (int j = 1; j < m; ++j) {
      // Kernel cell integral over [t_{j-1}, t_j] divided by the cell width,
      // evaluated as B^p expm1(p log1p(dtj/B)) to keep the tiny graded cells
      // from cancelling.
      double dtj = t[j] - t[j - 1];
      double big = t[m] - t[j];
      double x = dtj / big;
      double i_over_dt;
      if (x < 0.5) {
        i_over_dt = c * std::pow(big, p) * std::expm1(p * std::log1p(x)) / dtj;
      } else {
        i_over_dt = c * (std::pow(big + dtj, p) - std::pow(big, p)) / dtj;
      }
      rhs -= (v[j] - v[j - 1]) * i_over_dt;
    }
    v[m] = (coef * v[m - 1] + rhs) / (coef + lambda);
  }

  ml::Evaluator ev(alpha, 1.0);
  run.reference.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    run.reference[j] = ev.eval(-lambda * std::pow(t[j], alpha), 1e-12).value;
    double e = std::fabs(v[j] - run.reference[j]);
    run.error_max = std::max(run.error_max, e);
  }
  run.error_horizon = std::fabs(v[n] - run.reference[n]);
  return run;
}

OracleRun step_mode_beta(double lambda, double beta, double v0, double v1, double dt,
                         double horizon) {
  if (!(lambda >= 0.0)) throw DomainError("step_mode_beta: lambda must be >= 0");
  if (!(beta > 1.0) || beta > 2.0) {
    throw DomainError("step_mode_beta: beta must lie in (1, 2]");
  }
  if (!(dt > 0.0) || !(horizon > 0.0) || dt > horizon) {
    throw DomainError("step_mode_beta: need 0 < dt <= horizon");
  }
  const int n = std::max(2, static_cast<int>(std::lround(horizon / dt)));
  OracleRun run;
  run.order = beta;
  run.lambda = lambda;
  run.dt = horizon / n;
  run.horizon = horizon;
  run.t_grid.resize(n + 1);
  for (int j = 0; j <= n; ++j) run.t_grid[j] = run.dt * j;

  auto w = gl_weights(beta, n);
  const double rho = std::pow(run.dt, -beta);
  std::vector<double> g(n + 1, 0.0);
  for (int m = 1; m <= n; ++m) {
    double hist = 0.0;
    for (int j = 1; j <= m; ++j) hist += w[j] * g[m - j];
    g[m] = (-rho * hist - lambda * (v0 + v1 * run.t_grid[m])) / (rho + lambda);
  }
  run.values.resize(n + 1);
  for (int m = 0; m <= n; ++m) run.values[m] = g[m] + v0 + v1 * run.t_grid[m];

  ml::Evaluator e1(beta, 1.0), e2(beta, 2.0);
  run.reference.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    double t = run.t_grid[j];
    double z = -lambda * std::pow(t, beta);
    double ref = v0 * e1.eval(z, 1e-12).value + v1 * t * e2.eval(z, 1e-12).value;
    run.reference[j] = ref;
    run.error_max = std::max(run.error_max, std::fabs(run.values[j] - ref));
  }
  run.error_horizon = std::fabs(run.values[n] - run.reference[n]);
  return run;
}

double observed_order(std::span<const double> errors, std::span<const double> steps) {
  if (errors.size() != steps.size() || errors.size() < 3) {
    throw DomainError("observed_order: need >= 3 matching (error, step) pairs");
  }
  double emax = 0.0;
  for (double e : errors) emax = std::max(emax, e);
  std::vector<double> lx, ly;
  for (size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || errors[i] < 1e-14 * emax) {
      throw DegenerateDataError("observed_order: error sequence at the rounding floor");
    }
    lx.push_back(std::log(steps[i]));
    ly.push_back(std::log(errors[i]));
  }
  return linear_fit(lx, ly).slope;
}

ResidualReport residual_field_check(const modes::FieldSolution& f, const ProblemConfig& cfg,
                                    double dt) {
  if (!(dt > 0.0)) throw DomainError("residual_field_check: dt must be positive");
  ResidualReport rep;
  rep.dt = dt;
  rep.notes = condition5_note();

  const size_t nmodes = f.modes.size();
  const size_t nxp = f.x_grid.size();

  // Upper branch y > 0: L1 in y, image sum_k lambda_k X_k u_k.
  {
    const int n = std::max(4, static_cast<int>(std::lround(cfg.b / dt)));
    const double h = cfg.b / n;
    std::vector<std::vector<double>> prof(nmodes, std::vector<double>(n + 1));
    for (size_t mi = 0; mi < nmodes; ++mi) {
      for (int j = 0; j <= n; ++j) {
        prof[mi][j] = modes::eval_mode(f.modes[mi], j * h, cfg);
      }
    }
    std::vector<double> line(n + 1), img(n + 1);
    for (size_t ix = 0; ix < nxp; ++ix) {
      std::fill(line.begin(), line.end(), 0.0);
      std::fill(img.begin(), img.end(), 0.0);
      for (size_t mi = 0; mi < nmodes; ++mi) {
        double xk = f.eigs[mi].value(f.x_grid[ix]);
        if (xk == 0.0) continue;
        for (int j = 0; j <= n; ++j) {
          line[j] += xk * prof[mi][j];
          img[j] += f.modes[mi].lambda * xk * prof[mi][j];
        }
      }
      auto cap = l1_apply(line, cfg.alpha, h);
      for (int j = 1; j <= n; ++j) {
        double res = std::fabs(cap[j] + img[j]);
        rep.alpha_residual_full = std::max(rep.alpha_residual_full, res);
        if (j * h >= 0.5 * cfg.b) {
          rep.alpha_residual_interior = std::max(rep.alpha_residual_interior, res);
        }
      }
    }
  }

  // Lower branch in t = -y: GL with the linear part (v0, v1) = (u(.,0), sum c3 X_k).
  {
    const int n = std::max(4, static_cast<int>(std::lround(cfg.a / dt)));
    const double h = cfg.a / n;
    std::vector<std::vector<double>> prof(nmodes, std::vector<double>(n + 1));
    for (size_t mi = 0; mi < nmodes; ++mi) {
      for (int j = 0; j <= n; ++j) {
        prof[mi][j] = modes::eval_mode_neg_branch(f.modes[mi], j * h, cfg);
      }
    }
    std::vector<double> line(n + 1), img(n + 1);
    for (size_t ix = 0; ix < nxp; ++ix) {
      std::fill(line.begin(), line.end(), 0.0);
      std::fill(img.begin(), img.end(), 0.0);
      double v0 = 0.0, v1 = 0.0;
      for (size_t mi = 0; mi < nmodes; ++mi) {
        double xk = f.eigs[mi].value(f.x_grid[ix]);
        if (xk == 0.0) continue;
        v0 += xk * f.modes[mi].c1;
        v1 += xk * f.modes[mi].c3;  // v'(0) = -u_y(x, -0) = c3 sum
        for (int j = 0; j <= n; ++j) {
          line[j] += xk * prof[mi][j];
          img[j] += f.modes[mi].lambda * xk * prof[mi][j];
        }
      }
      auto cap = gl_apply(line, cfg.beta, h, v0, v1);
      for (int j = 1; j <= n; ++j) {
        double res = std::fabs(cap[j] + img[j]);
        rep.beta_residual_full = std::max(rep.beta_residual_full, res);
        if (j * h >= 0.5 * cfg.a) {
          rep.beta_residual_interior = std::max(rep.beta_residual_interior, res);
        }
      }
    }
  }
  return rep;
}

}  // namespace fracmix::oracle
