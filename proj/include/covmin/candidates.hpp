#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "covmin/criterion.hpp"
#include "covmin/rational.hpp"

namespace covmin {

/// How a candidate point arose.
enum class Provenance {
  Endpoint,      ///< a or b
  Breakpoint,    ///< a clamp breakpoint or the mixed crossover
  PlusLattice,   ///< l/n + eps
  MinusLattice,  ///< l/n - eps
  RelUpper,      ///< l / (n (1 + eps))
  RelLower,      ///< l / (n (1 - eps))
};

/// Which finite-reduction rule produced a set.
enum class CandidateRule {
  Absolute,
  Relative,
  Mixed,
  ClampedAbsolute,
  ClampedRelative,
  ClampedMixed,
};

std::string_view to_string(Provenance p);
std::string_view to_string(CandidateRule r);

struct CandidatePoint {
  Rational theta;
  Provenance provenance;
};

/// Sorted, duplicate-free set of parameter values in [a, b] on which the
/// minimum of the coverage probability over [a, b] is attained.
///
/// `cardinality_bound` is the strict upper bound on the number of points
/// that the reduction guarantees; it is exact (a Rational) because the bound
/// formulas are not integers in general.
struct CandidateSet {
  std::vector<CandidatePoint> points;
  CandidateRule rule = CandidateRule::Absolute;
  Rational cardinality_bound;
  Rational a;
  Rational b;

  std::size_t size() const { return points.size(); }
  std::vector<Rational> thetas() const;
  bool contains(const Rational& theta) const;
};

/// {a, b} and both lattices l/n +- eps inside (a, b). Needs 0 <= a < b and
/// eps > 0. Bound 2n(b-a)+4.
CandidateSet candidates_abs(std::int64_t n, const Rational& eps, const Rational& a, const Rational& b);

/// {a, b} and both lattices l/(n(1 +- eps)) inside (a, b). Needs 0 < a < b
/// and 0 < eps < 1. Bound 2n(b-a)+4.
CandidateSet candidates_rel(std::int64_t n, const Rational& eps, const Rational& a, const Rational& b);

/// Mixed margin for the sample mean, crossover c = eps_a / eps_r with
/// a < c < b. On [a, c] the absolute margin is the binding one and on (c, b]
/// the relative one, so the set is {a, c, b}, both absolute lattices inside
/// (a, c) and both relative lattices inside (c, b). Bound 2n(b-a)+7.
CandidateSet candidates_mixed(std::int64_t n, const Rational& eps_a, const Rational& eps_r, const Rational& a,
                              const Rational& b);

/// Clamped estimator, absolute margin: {a, b, a+eps, b-eps}, l/n - eps in
/// (a, b-eps) and l/n + eps in (a+eps, b), all intersected with [a, b].
/// Needs 0 < a < b. Bound max(2n(b-a-eps)+6, 6).
CandidateSet candidates_rp_abs(std::int64_t n, const Rational& eps, const Rational& a, const Rational& b);

/// Clamped estimator, relative margin: {a, b, a/(1-eps), b/(1+eps)},
/// l/(n(1+eps)) in (a, b/(1+eps)) and l/(n(1-eps)) in (a/(1-eps), b), all
/// intersected with [a, b]. Needs 0 < a < b. Bound
/// max(2n(b-a) - n eps (a+b) + 6, 6).
CandidateSet candidates_rp_rel(std::int64_t n, const Rational& eps, const Rational& a, const Rational& b);

/// Clamped estimator, mixed margin, crossover c with 0 <= a < c < b. The
/// clamp stays [a, b] on both sides of c, so the absolute side uses the
/// clamped-absolute points of [a, b] that fall in [a, c] and the relative
/// side the clamped-relative points of [a, b] that fall in [c, b], plus c.
/// Reported bound: max(2n(b-a-eps_a) - n(eps_a + b eps_r) + 11, 11).
CandidateSet candidates_rp_mixed(std::int64_t n, const Rational& eps_a, const Rational& eps_r, const Rational& a,
                                 const Rational& b);

/// Dispatches on (criterion, estimator). For the range-preserving estimator
/// the clamp interval must equal [a, b].
CandidateSet candidates_for(std::int64_t n, const ErrorCriterion& criterion, const EstimatorKind& estimator,
                            const Rational& a, const Rational& b);

}  // namespace covmin
