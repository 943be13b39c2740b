#pragma once

#include <cstddef>
#include <cstdint>

#include "covmin/criterion.hpp"
#include "covmin/family.hpp"
#include "covmin/rational.hpp"

namespace covmin::oracle {

// Brute-force reference path. Nothing here uses the integer acceptance
// bounds or the candidate-set reduction (apart from optionally borrowing the
// candidate points as extra grid points), so agreement with the main path is
// meaningful evidence.

/// Sum of Pr{Y_n = k} over every outcome k whose estimate k/n (clamped to
/// [a, b] for the range-preserving estimator) satisfies the criterion with
/// strict inequality, all comparisons done in exact arithmetic.
double indicator_coverage(const DistributionFamily& family, std::int64_t n, const ErrorCriterion& criterion,
                          const EstimatorKind& estimator, const Rational& theta);

struct GridSpec {
  Rational step;
  /// Also scan the candidate points of the matching reduction.
  bool include_candidates = false;
};

struct GridMinimum {
  double min_coverage = 1.0;
  Rational argmin_theta;
  std::size_t points_scanned = 0;
};

/// Minimum of indicator_coverage over {a + j step : j >= 0} within [a, b]
/// (plus the candidate points when requested). Ties resolve to the smallest
/// theta. Throws std::invalid_argument for step <= 0 or a >= b.
GridMinimum grid_min_coverage(const DistributionFamily& family, std::int64_t n, const ErrorCriterion& criterion,
                              const EstimatorKind& estimator, const Rational& a, const Rational& b,
                              const GridSpec& grid);

}  // namespace covmin::oracle
