#include "covmin/search.hpp"

#include <stdexcept>

#include "covmin/family.hpp"
#include "covmin/minimizer.hpp"

namespace covmin {

SampleSizeResult min_sample_size(const SampleSizeQuery& query) {
  if (query.delta.sign() <= 0 || query.delta >= Rational(1)) {
    throw std::invalid_argument("delta must lie in (0, 1), got " + query.delta.to_string());
  }
  if (query.n_start < 1) throw std::invalid_argument("n_start must be at least 1");
  if (query.n_start > query.n_max) throw std::invalid_argument("n_start must not exceed n_max");

  const FamilyPtr family = find_family(query.family);
  SampleSizeResult result;
  result.threshold = (Rational(1) - query.delta).to_double() + (query.guard_band ? kGuardBand : 0.0);

  for (std::int64_t n = query.n_start; n <= query.n_max; ++n) {
    const CoverageReport report = min_coverage(*family, n, query.criterion, query.estimator, query.a, query.b);
    result.trace.push_back({n, report.min_coverage, report.argmin_theta});
    result.coverage_at_n_min = report.min_coverage;
    result.argmin_theta = report.argmin_theta;
    if (query.progress) query.progress(n, report.min_coverage);
    if (report.min_coverage > result.threshold) {
      result.n_min = n;
      break;
    }
  }
  return result;
}

}  // namespace covmin
