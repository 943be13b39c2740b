#pragma once

#include <stdexcept>
#include <string>

namespace covmin {

/// A parameter value lies outside the region where the quantity is defined
/// (theta outside the family's parameter space, theta outside [a, b] for the
/// clamped estimator, and so on).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The inputs violate a hypothesis of the finite-reduction result that a
/// candidate set or minimizer relies on, e.g. a crossover outside (a, b).
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace covmin
