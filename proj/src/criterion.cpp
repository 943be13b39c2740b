#include "covmin/criterion.hpp"

#include <stdexcept>

namespace covmin {

ErrorCriterion ErrorCriterion::absolute(const Rational& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("absolute margin must be positive, got " + eps.to_string());
  return ErrorCriterion(Absolute{eps});
}

ErrorCriterion ErrorCriterion::relative(const Rational& eps) {
  if (eps.sign() <= 0 || eps >= Rational(1)) {
    throw std::invalid_argument("relative margin must lie in (0, 1), got " + eps.to_string());
  }
  return ErrorCriterion(Relative{eps});
}

ErrorCriterion ErrorCriterion::mixed(const Rational& eps_a, const Rational& eps_r) {
  if (eps_a.sign() <= 0) throw std::invalid_argument("absolute margin must be positive, got " + eps_a.to_string());
  if (eps_r.sign() <= 0 || eps_r >= Rational(1)) {
    throw std::invalid_argument("relative margin must lie in (0, 1), got " + eps_r.to_string());
  }
  return ErrorCriterion(Mixed{eps_a, eps_r});
}

std::string ErrorCriterion::describe() const {
  struct Visitor {
    std::string operator()(const Absolute& c) const { return "absolute(eps=" + c.eps.to_string() + ")"; }
    std::string operator()(const Relative& c) const { return "relative(eps=" + c.eps.to_string() + ")"; }
    std::string operator()(const Mixed& c) const {
      return "mixed(eps_a=" + c.eps_a.to_string() + ", eps_r=" + c.eps_r.to_string() + ")";
    }
  };
  return std::visit(Visitor{}, value_);
}

EstimatorKind EstimatorKind::unbiased() { return EstimatorKind(Unbiased{}); }

EstimatorKind EstimatorKind::range_preserving(const Rational& a, const Rational& b) {
  if (!(a < b)) throw std::invalid_argument("range-preserving estimator needs a < b");
  return EstimatorKind(RangePreserving{a, b});
}

std::string EstimatorKind::describe() const {
  if (const auto* rp = clamp()) return "range-preserving[" + rp->a.to_string() + ", " + rp->b.to_string() + "]";
  return "unbiased";
}

}  // namespace covmin
