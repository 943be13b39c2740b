#include "covmin/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "covmin/candidates.hpp"
#include "covmin/errors.hpp"
#include "covmin/numeric.hpp"
#include "covmin/parallel.hpp"

namespace covmin::oracle {
namespace {

using i128 = __int128;

// Unreduced fraction; the per-outcome checks stay gcd-free.
struct Frac {
  i128 num;
  i128 den;  // > 0
};

Frac frac(const Rational& r) { return {r.num(), r.den()}; }

bool less(const Frac& x, const Frac& y) { return x.num * y.den < y.num * x.den; }

i128 magnitude(i128 v) { return v < 0 ? -v : v; }

// |x - y| < margin
bool within(const Frac& x, const Frac& y, const Frac& margin) {
  const i128 diff_num = x.num * y.den - y.num * x.den;
  const i128 diff_den = x.den * y.den;
  return magnitude(diff_num) * margin.den < margin.num * diff_den;
}

struct Acceptance {
  bool use_absolute = false;
  bool use_relative = false;
  Frac absolute{0, 1};
  Frac relative{0, 1};  // eps_r * theta

  bool accepts(const Frac& estimate, const Frac& theta) const {
    if (use_absolute && within(estimate, theta, absolute)) return true;
    return use_relative && within(estimate, theta, relative);
  }
};

Acceptance acceptance(const ErrorCriterion& criterion, const Rational& theta) {
  struct Visitor {
    const Rational& theta;
    Acceptance operator()(const Absolute& c) const { return {true, false, frac(c.eps), {0, 1}}; }
    Acceptance operator()(const Relative& c) const { return {false, true, {0, 1}, frac(c.eps * theta)}; }
    Acceptance operator()(const Mixed& c) const { return {true, true, frac(c.eps_a), frac(c.eps_r * theta)}; }
  };
  return std::visit(Visitor{theta}, criterion.variant());
}

}  // namespace

double indicator_coverage(const DistributionFamily& family, std::int64_t n, const ErrorCriterion& criterion,
                          const EstimatorKind& estimator, const Rational& theta) {
  check_admissible(family, n, theta);
  const auto* clamp = estimator.clamp();
  if (clamp && (theta < clamp->a || theta > clamp->b)) {
    throw DomainError("theta = " + theta.to_string() + " outside the clamp interval");
  }
  if (criterion.is_relative() && theta.sign() <= 0) {
    throw DomainError("relative margin needs theta > 0, got " + theta.to_string());
  }

  const double x = theta.to_double();
  const std::int64_t lo = family.support(n).min;
  const std::int64_t hi = summation_limit(family, n, x);
  if (hi < lo) return 0.0;

  thread_local std::vector<double> mass;
  mass.resize(static_cast<std::size_t>(hi - lo + 1));
  family.pmf_block(n, x, lo, hi, mass);

  const Acceptance accept = acceptance(criterion, theta);
  const Frac t = frac(theta);
  Frac lower{0, 1};
  Frac upper{0, 1};
  if (clamp) {
    lower = frac(clamp->a);
    upper = frac(clamp->b);
  }

  CompensatedSum total;
  for (std::int64_t k = lo; k <= hi; ++k) {
    Frac estimate{k, n};
    if (clamp) {
      if (less(estimate, lower)) estimate = lower;
      else if (less(upper, estimate)) estimate = upper;
    }
    if (accept.accepts(estimate, t)) total.add(mass[static_cast<std::size_t>(k - lo)]);
  }
  return clamp_probability(total.value());
}

GridMinimum grid_min_coverage(const DistributionFamily& family, std::int64_t n, const ErrorCriterion& criterion,
                              const EstimatorKind& estimator, const Rational& a, const Rational& b,
                              const GridSpec& grid) {
  if (grid.step.sign() <= 0) throw std::invalid_argument("grid step must be positive");
  if (!(a < b)) throw std::invalid_argument("grid interval requires a < b");

  std::vector<Rational> thetas;
  const std::int64_t steps = ((b - a) / grid.step).floor();
  thetas.reserve(static_cast<std::size_t>(steps) + 1);
  for (std::int64_t j = 0; j <= steps; ++j) thetas.push_back(a + grid.step * Rational(j));
  if (grid.include_candidates) {
    for (const auto& p : candidates_for(n, criterion, estimator, a, b).points) thetas.push_back(p.theta);
    std::sort(thetas.begin(), thetas.end());
    thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
  }

  auto values = parallel_map<double>(thetas.size(), [&](std::size_t i) {
    return indicator_coverage(family, n, criterion, estimator, thetas[i]);
  });

  GridMinimum best;
  best.points_scanned = thetas.size();
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (i == 0 || values[i] < best.min_coverage) {
      best.min_coverage = values[i];
      best.argmin_theta = thetas[i];
    }
  }
  return best;
}

}  // namespace covmin::oracle
