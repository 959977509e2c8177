#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracmix {

// Invalid parameter or argument combination. CLI maps this to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// No evaluation strategy met the requested tolerance. Carries the best
// value/bound pair that was achieved so callers can decide to proceed anyway.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& msg, double best_value, double best_bound)
      : std::runtime_error(msg), best_value_(best_value), best_bound_(best_bound) {}
  double best_value() const { return best_value_; }
  double best_bound() const { return best_bound_; }

 private:
  double best_value_;
  double best_bound_;
};

// Argument too small for the requested number of asymptotic terms.
class AsymptoticRegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Smallest eigenvalue is not positive.
class PositivityViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigenvalue or eigenvector iteration failed; carries the offending index.
class ConvergenceFailureError : public std::runtime_error {
 public:
  ConvergenceFailureError(const std::string& msg, int index)
      : std::runtime_error(msg), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |Delta(k)| at or below the degenerate threshold; caller must route the mode
// through the orthogonality path.
class DegenerateModeError : public std::runtime_error {
 public:
  DegenerateModeError(const std::string& msg, int mode)
      : std::runtime_error(msg), mode_(mode) {}
  int mode() const { return mode_; }

 private:
  int mode_;
};

// Degenerate modes with nonzero data: the problem has no solution.
// CLI maps this to exit code 4.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& msg, std::vector<int> modes,
                  std::vector<double> magnitudes)
      : std::runtime_error(msg),
        modes_(std::move(modes)),
        magnitudes_(std::move(magnitudes)) {}
  const std::vector<int>& modes() const { return modes_; }
  const std::vector<double>& magnitudes() const { return magnitudes_; }

 private:
  std::vector<int> modes_;
  std::vector<double> magnitudes_;
};

// Error sequence unusable for a rate fit (zeros or rounding floor).
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracmix
