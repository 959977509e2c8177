#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fracmix/spectral_basis.hpp"

namespace fracmix {

struct Tolerances {
  double ml_tol = 1e-10;               // general Mittag-Leffler evaluations
  double delta_ml_tol = 1e-12;         // building blocks of Delta(k)
  double degenerate_threshold = 1e-8;  // |Delta(k)| at or below counts as zero
  double orthogonality_tol = 1e-10;    // |phi_k| considered zero in the degenerate path
};

// Constant coefficient (any s) or interior-grid samples (numeric path, s=1).
using P0Spec = std::variant<double, std::vector<double>>;

struct GridSpec {
  int nx = 64;
  int ny = 64;
};

struct ProblemConfig {
  int s = 1;
  double alpha = 0.5;   // (0,1); 1 allowed with classical_switch
  double beta = 1.5;    // (1,2); 2 allowed with classical_switch
  double a = 1.0;
  double b = 1.0;
  P0Spec p0 = 0.0;
  spectral::PhiSpec phi = spectral::SineCombo{{1.0}};
  int K = 16;
  GridSpec grid;
  Tolerances tol;
  bool classical_switch = false;

  void validate() const;
  std::vector<spectral::EigenPair> eigenpairs() const;
  double p0_at(double x) const;
  bool p0_constant() const { return std::holds_alternative<double>(p0); }
};

// Schema-validated JSON loaders; unknown keys are rejected (fail-closed).
ProblemConfig parse_config_json(const std::string& json_text);
ProblemConfig load_config_file(const std::string& path);

// Interpretation note attached to every emitted report.
std::string condition5_note();

}  // namespace fracmix
