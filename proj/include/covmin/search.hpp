#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covmin/criterion.hpp"
#include "covmin/rational.hpp"

namespace covmin {

/// Margin added to 1 - delta when the guard band is requested.
inline constexpr double kGuardBand = 1e-12;

struct SampleSizeQuery {
  std::string family = "bernoulli";
  ErrorCriterion criterion;
  EstimatorKind estimator;
  Rational a;
  Rational b;
  Rational delta;
  std::int64_t n_start = 2;
  std::int64_t n_max = 1'000'000;
  /// Require min coverage > 1 - delta + kGuardBand instead of > 1 - delta.
  bool guard_band = false;
  /// Called after every examined n with its worst-case coverage.
  std::function<void(std::int64_t n, double min_coverage)> progress;
};

struct TraceEntry {
  std::int64_t n = 0;
  double min_coverage = 0.0;
  Rational argmin_theta;
};

/// `n_min` is empty when no n up to n_max qualifies; `coverage_at_n_min`
/// and `argmin_theta` then describe the last examined n.
struct SampleSizeResult {
  std::optional<std::int64_t> n_min;
  double coverage_at_n_min = 0.0;
  Rational argmin_theta;
  std::vector<TraceEntry> trace;
  double threshold = 0.0;
};

/// Smallest n in [n_start, n_max] whose worst-case coverage over [a, b]
/// strictly exceeds 1 - delta. Every n is examined in turn; the worst-case
/// coverage is not monotone in n, so no bisection is attempted.
SampleSizeResult min_sample_size(const SampleSizeQuery& query);

}  // namespace covmin
