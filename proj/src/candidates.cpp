#include "covmin/candidates.hpp"

#include <algorithm>
#include <stdexcept>

#include "covmin/errors.hpp"

namespace covmin {
namespace {

class SetBuilder {
 public:
  SetBuilder(const Rational& a, const Rational& b) : a_(a), b_(b) {}

  void point(const Rational& theta, Provenance provenance) {
    if (theta >= a_ && theta <= b_) points_.push_back({theta, provenance});
  }

  // Every step * l + offset strictly inside (lo, hi), l an integer.
  void lattice(const Rational& step, const Rational& offset, const Rational& lo, const Rational& hi,
               Provenance provenance) {
    if (!(lo < hi)) return;
    std::int64_t l = ((lo - offset) / step).floor() + 1;
    for (Rational theta = step * Rational(l) + offset; theta < hi; theta += step) point(theta, provenance);
  }

  CandidateSet finish(CandidateRule rule, Rational bound) {
    std::sort(points_.begin(), points_.end(), [](const CandidatePoint& x, const CandidatePoint& y) {
      if (x.theta != y.theta) return x.theta < y.theta;
      return x.provenance < y.provenance;
    });
    auto last = std::unique(points_.begin(), points_.end(),
                            [](const CandidatePoint& x, const CandidatePoint& y) { return x.theta == y.theta; });
    points_.erase(last, points_.end());
    return CandidateSet{std::move(points_), rule, std::move(bound), a_, b_};
  }

 private:
  Rational a_;
  Rational b_;
  std::vector<CandidatePoint> points_;
};

void require_n(std::int64_t n) {
  if (n < 1) throw HypothesisError("sample size must be at least 1");
}

void require_interval(const Rational& a, const Rational& b, bool strictly_positive, std::string_view rule) {
  if (!(a < b)) throw HypothesisError(std::string(rule) + " requires a < b");
  if (strictly_positive ? a.sign() <= 0 : a.sign() < 0) {
    throw HypothesisError(std::string(rule) + (strictly_positive ? " requires 0 < a < b" : " requires 0 <= a < b"));
  }
}

void require_crossover(const Rational& c, const Rational& a, const Rational& b, std::string_view rule) {
  if (!(a < c && c < b)) {
    throw HypothesisError(std::string(rule) + " requires a < eps_a/eps_r < b (got eps_a/eps_r = " + c.to_string() +
                          "); use a pure absolute or pure relative margin instead");
  }
}

Rational floored(const Rational& bound, std::int64_t floor_value) { return max(bound, Rational(floor_value)); }

// Lattice steps for the relative families.
Rational upper_step(std::int64_t n, const Rational& eps) { return Rational(1) / (Rational(n) * (Rational(1) + eps)); }
Rational lower_step(std::int64_t n, const Rational& eps) { return Rational(1) / (Rational(n) * (Rational(1) - eps)); }

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Endpoint: return "endpoint";
    case Provenance::Breakpoint: return "breakpoint";
    case Provenance::PlusLattice: return "plus-lattice";
    case Provenance::MinusLattice: return "minus-lattice";
    case Provenance::RelUpper: return "rel-upper";
    case Provenance::RelLower: return "rel-lower";
  }
  return "unknown";
}

std::string_view to_string(CandidateRule r) {
  switch (r) {
    case CandidateRule::Absolute: return "absolute";
    case CandidateRule::Relative: return "relative";
    case CandidateRule::Mixed: return "mixed";
    case CandidateRule::ClampedAbsolute: return "clamped-absolute";
    case CandidateRule::ClampedRelative: return "clamped-relative";
    case CandidateRule::ClampedMixed: return "clamped-mixed";
  }
  return "unknown";
}

std::vector<Rational> CandidateSet::thetas() const {
  std::vector<Rational> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.theta);
  return out;
}

bool CandidateSet::contains(const Rational& theta) const {
  return std::binary_search(points.begin(), points.end(), CandidatePoint{theta, Provenance::Endpoint},
                            [](const CandidatePoint& x, const CandidatePoint& y) { return x.theta < y.theta; });
}

CandidateSet candidates_abs(std::int64_t n, const Rational& eps, const Rational& a, const Rational& b) {
  require_n(n);
  require_interval(a, b, false, "absolute margin");
  if (eps.sign() <= 0) throw HypothesisError("absolute margin requires eps > 0");
  const Rational step(1, n);
  SetBuilder set(a, b);
  set.point(a, Provenance::Endpoint);
  set.point(b, Provenance::Endpoint);
  set.lattice(step, eps, a, b, Provenance::PlusLattice);
  set.lattice(step, -eps, a, b, Provenance::MinusLattice);
  return set.finish(CandidateRule::Absolute, Rational(2 * n) * (b - a) + Rational(4));
}

CandidateSet candidates_rel(std::int64_t n, const Rational& eps, const Rational& a, const Rational& b) {
  require_n(n);
  require_interval(a, b, true, "relative margin");
  if (eps.sign() <= 0 || eps >= Rational(1)) throw HypothesisError("relative margin requires 0 < eps < 1");
  SetBuilder set(a, b);
  set.point(a, Provenance::Endpoint);
  set.point(b, Provenance::Endpoint);
  set.lattice(upper_step(n, eps), Rational(0), a, b, Provenance::RelUpper);
  set.lattice(lower_step(n, eps), Rational(0), a, b, Provenance::RelLower);
  return set.finish(CandidateRule::Relative, Rational(2 * n) * (b - a) + Rational(4));
}

CandidateSet candidates_mixed(std::int64_t n, const Rational& eps_a, const Rational& eps_r, const Rational& a,
                              const Rational& b) {
  require_n(n);
  require_interval(a, b, false, "mixed margin");
  const auto criterion = ErrorCriterion::mixed(eps_a, eps_r);
  const Rational c = std::get<Mixed>(criterion.variant()).crossover();
  require_crossover(c, a, b, "mixed margin");

  const Rational step(1, n);
  SetBuilder set(a, b);
  set.point(a, Provenance::Endpoint);
  set.point(b, Provenance::Endpoint);
  set.point(c, Provenance::Breakpoint);
  set.lattice(step, eps_a, a, c, Provenance::PlusLattice);
  set.lattice(step, -eps_a, a, c, Provenance::MinusLattice);
  set.lattice(upper_step(n, eps_r), Rational(0), c, b, Provenance::RelUpper);
  set.lattice(lower_step(n, eps_r), Rational(0), c, b, Provenance::RelLower);
  return set.finish(CandidateRule::Mixed, Rational(2 * n) * (b - a) + Rational(7));
}

CandidateSet candidates_rp_abs(std::int64_t n, const Rational& eps, const Rational& a, const Rational& b) {
  require_n(n);
  require_interval(a, b, true, "clamped absolute margin");
  if (eps.sign() <= 0) throw HypothesisError("absolute margin requires eps > 0");
  const Rational step(1, n);
  SetBuilder set(a, b);
  set.point(a, Provenance::Endpoint);
  set.point(b, Provenance::Endpoint);
  set.point(a + eps, Provenance::Breakpoint);
  set.point(b - eps, Provenance::Breakpoint);
  set.lattice(step, -eps, a, b - eps, Provenance::MinusLattice);
  set.lattice(step, eps, a + eps, b, Provenance::PlusLattice);
  return set.finish(CandidateRule::ClampedAbsolute, floored(Rational(2 * n) * (b - a - eps) + Rational(6), 6));
}

CandidateSet candidates_rp_rel(std::int64_t n, const Rational& eps, const Rational& a, const Rational& b) {
  require_n(n);
  require_interval(a, b, true, "clamped relative margin");
  if (eps.sign() <= 0 || eps >= Rational(1)) throw HypothesisError("relative margin requires 0 < eps < 1");
  const Rational lo_break = a / (Rational(1) - eps);
  const Rational hi_break = b / (Rational(1) + eps);
  SetBuilder set(a, b);
  set.point(a, Provenance::Endpoint);
  set.point(b, Provenance::Endpoint);
  set.point(lo_break, Provenance::Breakpoint);
  set.point(hi_break, Provenance::Breakpoint);
  set.lattice(upper_step(n, eps), Rational(0), a, hi_break, Provenance::RelUpper);
  set.lattice(lower_step(n, eps), Rational(0), lo_break, b, Provenance::RelLower);
  const Rational size(n);
  return set.finish(CandidateRule::ClampedRelative,
                    floored(Rational(2) * size * (b - a) - size * eps * (a + b) + Rational(6), 6));
}

CandidateSet candidates_rp_mixed(std::int64_t n, const Rational& eps_a, const Rational& eps_r, const Rational& a,
                                 const Rational& b) {
  require_n(n);
  require_interval(a, b, false, "clamped mixed margin");
  const auto criterion = ErrorCriterion::mixed(eps_a, eps_r);
  const Rational c = std::get<Mixed>(criterion.variant()).crossover();
  require_crossover(c, a, b, "clamped mixed margin");

  const Rational step(1, n);
  SetBuilder set(a, b);

  // [a, c]: clamped absolute margin eps_a with clamp [a, b].
  SetBuilder low(a, c);
  low.point(a, Provenance::Endpoint);
  low.point(a + eps_a, Provenance::Breakpoint);
  low.point(b - eps_a, Provenance::Breakpoint);
  low.point(c, Provenance::Breakpoint);
  low.lattice(step, -eps_a, a, min(b - eps_a, c), Provenance::MinusLattice);
  low.lattice(step, eps_a, a + eps_a, c, Provenance::PlusLattice);

  // [c, b]: clamped relative margin eps_r with clamp [a, b].
  const Rational lo_break = a / (Rational(1) - eps_r);
  const Rational hi_break = b / (Rational(1) + eps_r);
  SetBuilder high(c, b);
  high.point(b, Provenance::Endpoint);
  high.point(lo_break, Provenance::Breakpoint);
  high.point(hi_break, Provenance::Breakpoint);
  high.lattice(upper_step(n, eps_r), Rational(0), c, hi_break, Provenance::RelUpper);
  high.lattice(lower_step(n, eps_r), Rational(0), max(lo_break, c), b, Provenance::RelLower);

  for (const auto& p : low.finish(CandidateRule::ClampedMixed, Rational(0)).points) set.point(p.theta, p.provenance);
  for (const auto& p : high.finish(CandidateRule::ClampedMixed, Rational(0)).points) set.point(p.theta, p.provenance);

  const Rational size(n);
  const Rational bound = Rational(2) * size * (b - a - eps_a) - size * (eps_a + b * eps_r) + Rational(11);
  return set.finish(CandidateRule::ClampedMixed, floored(bound, 11));
}

CandidateSet candidates_for(std::int64_t n, const ErrorCriterion& criterion, const EstimatorKind& estimator,
                            const Rational& a, const Rational& b) {
  const auto* rp = estimator.clamp();
  if (rp && (rp->a != a || rp->b != b)) {
    throw HypothesisError("range-preserving estimator must clamp to the same [a, b] that is searched");
  }
  struct Visitor {
    std::int64_t n;
    bool clamped;
    const Rational& a;
    const Rational& b;
    CandidateSet operator()(const Absolute& c) const {
      return clamped ? candidates_rp_abs(n, c.eps, a, b) : candidates_abs(n, c.eps, a, b);
    }
    CandidateSet operator()(const Relative& c) const {
      return clamped ? candidates_rp_rel(n, c.eps, a, b) : candidates_rel(n, c.eps, a, b);
    }
    CandidateSet operator()(const Mixed& c) const {
      return clamped ? candidates_rp_mixed(n, c.eps_a, c.eps_r, a, b) : candidates_mixed(n, c.eps_a, c.eps_r, a, b);
    }
  };
  return std::visit(Visitor{n, rp != nullptr, a, b}, criterion.variant());
}

}  // namespace covmin
