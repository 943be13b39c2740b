#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "covmin/candidates.hpp"
#include "covmin/criterion.hpp"
#include "covmin/family.hpp"
#include "covmin/rational.hpp"

namespace covmin {

struct Evaluation {
  Rational theta;
  double coverage = 0.0;
};

/// Worst-case coverage over [a, b] for a fixed sample size.
///
/// `evaluations` lists every candidate point in increasing theta with its
/// coverage; `argmin_theta` is the smallest theta attaining `min_coverage`.
struct CoverageReport {
  std::int64_t n = 0;
  double min_coverage = 1.0;
  Rational argmin_theta;
  std::vector<Evaluation> evaluations;
  CandidateSet candidate_set;
};

/// Exact minimum of the coverage probability over theta in [a, b], found by
/// evaluating it on the finite candidate set matching (criterion, estimator).
/// Coverage evaluations run on the internal thread pool; the reduction walks
/// them in sorted order so the result never depends on scheduling.
///
/// Throws DomainError when [a, b] leaves the family's parameter space and
/// HypothesisError when the candidate-set hypotheses fail.
CoverageReport min_coverage(const DistributionFamily& family, std::int64_t n, const ErrorCriterion& criterion,
                            const EstimatorKind& estimator, const Rational& a, const Rational& b);

struct CurvePoint {
  Rational theta;
  double coverage = 0.0;
  /// Set when theta belongs to the candidate set.
  std::optional<Provenance> provenance;
};

/// Coverage on the grid {a + j step} within [a, b] merged with the
/// candidate points, in increasing theta. Intended for plotting.
std::vector<CurvePoint> coverage_curve(const DistributionFamily& family, std::int64_t n,
                                       const ErrorCriterion& criterion, const EstimatorKind& estimator,
                                       const Rational& a, const Rational& b, const Rational& step);

/// Checks a and b against the family's parameter space.
void check_interval(const DistributionFamily& family, const Rational& a, const Rational& b);

}  // namespace covmin
