#include "covmin/minimizer.hpp"

#include <algorithm>
#include <stdexcept>

#include "covmin/coverage.hpp"
#include "covmin/errors.hpp"
#include "covmin/parallel.hpp"

namespace covmin {

void check_interval(const DistributionFamily& family, const Rational& a, const Rational& b) {
  if (!(a < b)) throw HypothesisError("interval requires a < b");
  const auto space = family.parameter_space();
  if (!space.contains(a) || !space.contains(b)) {
    throw DomainError("[" + a.to_string() + ", " + b.to_string() + "] is not inside the " +
                      std::string(family.name()) + " parameter space " + space.describe());
  }
}

CoverageReport min_coverage(const DistributionFamily& family, std::int64_t n, const ErrorCriterion& criterion,
                            const EstimatorKind& estimator, const Rational& a, const Rational& b) {
  if (n < 1) throw DomainError("sample size must be at least 1");
  check_interval(family, a, b);

  CoverageReport report;
  report.n = n;
  report.candidate_set = candidates_for(n, criterion, estimator, a, b);

  const auto& points = report.candidate_set.points;
  auto values = parallel_map<double>(points.size(), [&](std::size_t i) {
    return coverage(family, n, criterion, estimator, points[i].theta);
  });

  report.evaluations.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    report.evaluations.push_back({points[i].theta, values[i]});
    if (i == 0 || values[i] < report.min_coverage) {
      report.min_coverage = values[i];
      report.argmin_theta = points[i].theta;
    }
  }
  return report;
}

std::vector<CurvePoint> coverage_curve(const DistributionFamily& family, std::int64_t n,
                                       const ErrorCriterion& criterion, const EstimatorKind& estimator,
                                       const Rational& a, const Rational& b, const Rational& step) {
  if (step.sign() <= 0) throw std::invalid_argument("curve step must be positive");
  check_interval(family, a, b);
  const CandidateSet candidates = candidates_for(n, criterion, estimator, a, b);

  std::vector<CurvePoint> curve;
  const std::int64_t steps = ((b - a) / step).floor();
  for (std::int64_t j = 0; j <= steps; ++j) curve.push_back({a + step * Rational(j), 0.0, std::nullopt});
  for (const auto& p : candidates.points) curve.push_back({p.theta, 0.0, p.provenance});
  // Candidates sort after grid points at the same theta, so keep the last.
  std::stable_sort(curve.begin(), curve.end(),
                   [](const CurvePoint& x, const CurvePoint& y) { return x.theta < y.theta; });
  std::vector<CurvePoint> merged;
  merged.reserve(curve.size());
  for (auto& point : curve) {
    if (!merged.empty() && merged.back().theta == point.theta) {
      if (point.provenance) merged.back().provenance = point.provenance;
      continue;
    }
    merged.push_back(std::move(point));
  }

  parallel_for(merged.size(), [&](std::size_t i) {
    merged[i].coverage = coverage(family, n, criterion, estimator, merged[i].theta);
  });
  return merged;
}

}  // namespace covmin
