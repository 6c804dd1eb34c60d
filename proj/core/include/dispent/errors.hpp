#pragma once

#include <stdexcept>
#include <string>

namespace dispent {

// Malformed input: wrong shape, asymmetric matrix, non-positive definite factor.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A numerical procedure failed to reach its target. Carries the best value
// obtained so far and its error estimate.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double best = 0.0, double err = 0.0)
      : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
  double best_estimate;
  double error_estimate;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace dispent
