#pragma once

#include <stdexcept>
#include <string>

namespace fbvp {

/// Invalid input data: bad measure, out-of-range parameter, malformed config.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical value left its domain (negative log argument, non-finite sample, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (H1) fails: Λ ∉ [0,1), so the kernel H is undefined.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative procedure stopped before reaching its tolerance. Carries the
/// best value seen and its error estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best, double estimate)
      : std::runtime_error(what), best_(best), estimate_(estimate) {}

  double best() const noexcept { return best_; }
  double estimate() const noexcept { return estimate_; }

 private:
  double best_;
  double estimate_;
};

}  // namespace fbvp
