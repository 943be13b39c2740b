#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "covmin/candidates.hpp"
#include "covmin/coverage.hpp"
#include "covmin/criterion.hpp"
#include "covmin/family.hpp"
#include "covmin/rational.hpp"

namespace covmin::testing {

enum class Pair { Absolute, Relative, Mixed, ClampedAbsolute, ClampedRelative, ClampedMixed };

inline const std::vector<Pair>& all_pairs() {
  static const std::vector<Pair> pairs = {Pair::Absolute,        Pair::Relative,        Pair::Mixed,
                                          Pair::ClampedAbsolute, Pair::ClampedRelative, Pair::ClampedMixed};
  return pairs;
}

inline std::string pair_name(Pair p) {
  switch (p) {
    case Pair::Absolute: return "absolute/unbiased";
    case Pair::Relative: return "relative/unbiased";
    case Pair::Mixed: return "mixed/unbiased";
    case Pair::ClampedAbsolute: return "absolute/range-preserving";
    case Pair::ClampedRelative: return "relative/range-preserving";
    case Pair::ClampedMixed: return "mixed/range-preserving";
  }
  return "?";
}

struct Instance {
  FamilyPtr family;
  std::int64_t n;
  ErrorCriterion criterion;
  EstimatorKind estimator;
  Rational a;
  Rational b;

  std::string describe() const {
    return std::string(family->name()) + " n=" + std::to_string(n) + " " + criterion.describe() + " " +
           estimator.describe() + " [" + a.to_string() + ", " + b.to_string() + "]";
  }
};

// Random instances on a fixed decimal lattice so every value is exact.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  /// Bernoulli: a < b in [0, 1]; Poisson: a < b in [1/2, 20].
  Instance draw(const std::string& family_id, Pair pair, std::int64_t n_lo = 2, std::int64_t n_hi = 60) {
    const bool poisson = family_id == "poisson";
    const std::int64_t scale = poisson ? 100 : 1000;
    const std::int64_t lo_units = poisson ? 50 : 0;
    const std::int64_t hi_units = poisson ? 2000 : 1000;
    const bool needs_positive = pair != Pair::Absolute && pair != Pair::Mixed && pair != Pair::ClampedMixed;
    const std::int64_t min_units = std::max<std::int64_t>(lo_units, needs_positive ? 1 : 0);

    std::int64_t a_units = uniform(min_units, hi_units - 2);
    std::int64_t b_units = uniform(a_units + 2, hi_units);
    const Rational a(a_units, scale);
    const Rational b(b_units, scale);
    const std::int64_t n = uniform(n_lo, n_hi);
    const Rational width = b - a;

    auto abs_eps = [&] {
      // Mostly below b - a, sometimes beyond it.
      const Rational top = poisson ? Rational(3) : Rational(1, 2);
      const std::int64_t units = uniform(1, 1000);
      return uniform(0, 4) == 0 ? top * Rational(units, 1000) : min(width, top) * Rational(units, 1000);
    };
    auto rel_eps = [&] { return Rational(uniform(1, 999), 1000); };
    auto crossover = [&] { return Rational(uniform(a_units + 1, b_units - 1), scale); };

    ErrorCriterion criterion = ErrorCriterion::absolute(Rational(1, 10));
    switch (pair) {
      case Pair::Absolute:
      case Pair::ClampedAbsolute: criterion = ErrorCriterion::absolute(abs_eps()); break;
      case Pair::Relative:
      case Pair::ClampedRelative: criterion = ErrorCriterion::relative(rel_eps()); break;
      case Pair::Mixed:
      case Pair::ClampedMixed: {
        const Rational eps_r = rel_eps();
        criterion = ErrorCriterion::mixed(crossover() * eps_r, eps_r);
        break;
      }
    }
    const bool clamped = pair == Pair::ClampedAbsolute || pair == Pair::ClampedRelative || pair == Pair::ClampedMixed;
    return {find_family(family_id), n, criterion,
            clamped ? EstimatorKind::range_preserving(a, b) : EstimatorKind::unbiased(), a, b};
  }

  /// Theta in [a, b]: a candidate point, a lattice-adjacent value, or a
  /// uniform draw, in roughly equal shares.
  Rational theta_in(const Instance& inst, const CandidateSet& set) {
    switch (uniform(0, 2)) {
      case 0: return set.points[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(set.size()) - 1))].theta;
      case 1: {
        const Rational t = set.points[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(set.size()) - 1))].theta;
        const Rational nudged = t + Rational(uniform(-1, 1), 999'983);
        if (nudged >= inst.a && nudged <= inst.b) return nudged;
        return t;
      }
      default: return inst.a + (inst.b - inst.a) * Rational(uniform(0, 100'000), 100'000);
    }
  }

 private:
  std::mt19937_64 rng_;
};

/// Bounds actually consulted by the active branch; unused sides are
/// replaced by sentinels so that comparisons ignore them.
inline Bounds effective_bounds(const BranchChoice& c) {
  constexpr std::int64_t kIgnored = -1'000'000'007;
  switch (c.branch) {
    case Branch::TwoSided: return c.bounds;
    case Branch::BelowUpper: return {kIgnored, c.bounds.h};
    case Branch::AboveLower: return {c.bounds.g, kIgnored};
    case Branch::Certain: return {kIgnored, kIgnored};
  }
  return c.bounds;
}

}  // namespace covmin::testing
