#include "covmin/coverage.hpp"

#include "covmin/errors.hpp"

namespace covmin {
namespace {

void require_positive_n(std::int64_t n) {
  if (n < 1) throw DomainError("sample size must be at least 1");
}

// Clamped estimator, one margin type. `lo_break`/`hi_break` are where the
// lower and upper clamps stop mattering: a + eps and b - eps for the absolute
// margin, a / (1 - eps) and b / (1 + eps) for the relative one.
Branch clamped_branch(const Rational& theta, const Rational& lo_break, const Rational& hi_break) {
  if (lo_break <= hi_break) {
    if (theta < lo_break) return Branch::BelowUpper;
    if (theta > hi_break) return Branch::AboveLower;
    return Branch::TwoSided;
  }
  if (theta <= hi_break) return Branch::BelowUpper;
  if (theta >= lo_break) return Branch::AboveLower;
  return Branch::Certain;
}

BranchChoice absolute_choice(std::int64_t n, const Rational& eps, const EstimatorKind& estimator,
                             const Rational& theta) {
  BranchChoice choice{Branch::TwoSided, bounds_abs(n, eps, theta)};
  if (const auto* rp = estimator.clamp()) choice.branch = clamped_branch(theta, rp->a + eps, rp->b - eps);
  return choice;
}

BranchChoice relative_choice(std::int64_t n, const Rational& eps, const EstimatorKind& estimator,
                             const Rational& theta) {
  if (theta.sign() <= 0) throw DomainError("relative margin needs theta > 0, got " + theta.to_string());
  BranchChoice choice{Branch::TwoSided, bounds_rel(n, eps, theta)};
  if (const auto* rp = estimator.clamp()) {
    choice.branch = clamped_branch(theta, rp->a / (Rational(1) - eps), rp->b / (Rational(1) + eps));
  }
  return choice;
}

}  // namespace

Bounds bounds_abs(std::int64_t n, const Rational& eps, const Rational& theta) {
  require_positive_n(n);
  const Rational size(n);
  return {(size * (theta - eps)).floor() + 1, (size * (theta + eps)).ceil() - 1};
}

Bounds bounds_rel(std::int64_t n, const Rational& eps, const Rational& theta) {
  require_positive_n(n);
  if (theta.sign() <= 0) throw DomainError("relative margin needs theta > 0, got " + theta.to_string());
  const Rational scaled = Rational(n) * theta;
  return {(scaled * (Rational(1) - eps)).floor() + 1, (scaled * (Rational(1) + eps)).ceil() - 1};
}

BranchChoice select_branch(std::int64_t n, const ErrorCriterion& criterion, const EstimatorKind& estimator,
                           const Rational& theta) {
  if (const auto* rp = estimator.clamp()) {
    if (theta < rp->a || theta > rp->b) {
      throw DomainError("theta = " + theta.to_string() + " outside the clamp interval [" + rp->a.to_string() +
                        ", " + rp->b.to_string() + "]");
    }
  }
  struct Visitor {
    std::int64_t n;
    const EstimatorKind& estimator;
    const Rational& theta;
    BranchChoice operator()(const Absolute& c) const { return absolute_choice(n, c.eps, estimator, theta); }
    BranchChoice operator()(const Relative& c) const { return relative_choice(n, c.eps, estimator, theta); }
    BranchChoice operator()(const Mixed& c) const {
      if (theta <= c.crossover()) return absolute_choice(n, c.eps_a, estimator, theta);
      return relative_choice(n, c.eps_r, estimator, theta);
    }
  };
  return std::visit(Visitor{n, estimator, theta}, criterion.variant());
}

double evaluate_branch(const DistributionFamily& family, std::int64_t n, Branch branch, const Bounds& bounds,
                       double theta) {
  switch (branch) {
    case Branch::TwoSided:
      return bounds.g > bounds.h ? 0.0 : prob_range_unchecked(family, n, bounds.g, bounds.h, theta);
    case Branch::BelowUpper:
      return prob_range_unchecked(family, n, family.support(n).min, bounds.h, theta);
    case Branch::AboveLower:
      return prob_range_unchecked(family, n, bounds.g, kUnbounded, theta);
    case Branch::Certain:
      return 1.0;
  }
  return 0.0;
}

double coverage(const DistributionFamily& family, std::int64_t n, const ErrorCriterion& criterion,
                const EstimatorKind& estimator, const Rational& theta) {
  check_admissible(family, n, theta);
  const BranchChoice choice = select_branch(n, criterion, estimator, theta);
  return evaluate_branch(family, n, choice.branch, choice.bounds, theta.to_double());
}

}  // namespace covmin
