#pragma once

#include <cstdint>

#include "covmin/criterion.hpp"
#include "covmin/family.hpp"
#include "covmin/rational.hpp"

namespace covmin {

/// Integer acceptance range [g, h] for Y_n.
struct Bounds {
  std::int64_t g = 0;
  std::int64_t h = 0;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// g = floor(n (theta - eps)) + 1, h = ceil(n (theta + eps)) - 1, so that
/// g <= Y_n <= h exactly when |Y_n / n - theta| < eps.
Bounds bounds_abs(std::int64_t n, const Rational& eps, const Rational& theta);

/// g = floor(n theta (1 - eps)) + 1, h = ceil(n theta (1 + eps)) - 1.
/// Requires theta > 0 and 0 < eps < 1.
Bounds bounds_rel(std::int64_t n, const Rational& eps, const Rational& theta);

/// Which event decomposition applies at a given theta.
enum class Branch {
  TwoSided,    ///< Pr{g <= Y_n <= h}
  BelowUpper,  ///< Pr{Y_n <= h}: the lower clamp removes the lower failure event
  AboveLower,  ///< Pr{Y_n >= g}: the upper clamp removes the upper failure event
  Certain,     ///< both failure events are impossible; coverage is 1
};

struct BranchChoice {
  Branch branch = Branch::TwoSided;
  Bounds bounds;
};

/// Picks the decomposition of the coverage event at theta and the matching
/// (g, h). Unbiased estimators are always TwoSided; the clamped estimator
/// switches at a + eps / b - eps (absolute) or a / (1 - eps) / b / (1 + eps)
/// (relative); mixed criteria dispatch at the crossover eps_a / eps_r, the
/// absolute side including the crossover itself.
BranchChoice select_branch(std::int64_t n, const ErrorCriterion& criterion, const EstimatorKind& estimator,
                           const Rational& theta);

/// Probability of the event described by `branch` at theta.
double evaluate_branch(const DistributionFamily& family, std::int64_t n, Branch branch, const Bounds& bounds,
                       double theta);

/// Coverage probability C(theta) = Pr{estimate meets the criterion | theta}.
///
/// Throws DomainError when theta is outside the family's parameter space,
/// outside [a, b] for the range-preserving estimator, or not positive where a
/// relative margin is applied.
double coverage(const DistributionFamily& family, std::int64_t n, const ErrorCriterion& criterion,
                const EstimatorKind& estimator, const Rational& theta);

}  // namespace covmin
