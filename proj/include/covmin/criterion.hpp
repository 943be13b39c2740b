#pragma once

#include <string>
#include <variant>

#include "covmin/rational.hpp"

namespace covmin {

/// |estimate - theta| < eps.
struct Absolute {
  Rational eps;
};

/// |estimate - theta| < eps * theta.
struct Relative {
  Rational eps;
};

/// Either the absolute margin eps_a or the relative margin eps_r is met.
/// For theta <= eps_a / eps_r the absolute event contains the relative one,
/// above it the relative event contains the absolute one.
struct Mixed {
  Rational eps_a;
  Rational eps_r;

  Rational crossover() const { return eps_a / eps_r; }
};

/// Validated tagged union of the three margin types. Construct through the
/// factories; they reject eps <= 0 and relative margins outside (0, 1).
class ErrorCriterion {
 public:
  using Variant = std::variant<Absolute, Relative, Mixed>;

  static ErrorCriterion absolute(const Rational& eps);
  static ErrorCriterion relative(const Rational& eps);
  static ErrorCriterion mixed(const Rational& eps_a, const Rational& eps_r);

  const Variant& variant() const { return value_; }
  bool is_absolute() const { return std::holds_alternative<Absolute>(value_); }
  bool is_relative() const { return std::holds_alternative<Relative>(value_); }
  bool is_mixed() const { return std::holds_alternative<Mixed>(value_); }

  std::string describe() const;

 private:
  explicit ErrorCriterion(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

/// The sample mean Y_n / n.
struct Unbiased {};

/// The sample mean clamped to [a, b].
struct RangePreserving {
  Rational a;
  Rational b;
};

class EstimatorKind {
 public:
  using Variant = std::variant<Unbiased, RangePreserving>;

  static EstimatorKind unbiased();
  /// Throws std::invalid_argument unless a < b.
  static EstimatorKind range_preserving(const Rational& a, const Rational& b);

  const Variant& variant() const { return value_; }
  bool is_range_preserving() const { return std::holds_alternative<RangePreserving>(value_); }
  const RangePreserving* clamp() const { return std::get_if<RangePreserving>(&value_); }

  std::string describe() const;

 private:
  explicit EstimatorKind(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

}  // namespace covmin
