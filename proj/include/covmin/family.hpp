#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covmin/rational.hpp"

namespace covmin {

/// Sentinel for "no upper limit" in range queries.
inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

/// Parameter space of a family: an interval of means with per-endpoint
/// closure. A missing upper bound means +infinity.
struct ParameterSpace {
  Rational lower;
  std::optional<Rational> upper;
  bool lower_closed = false;
  bool upper_closed = false;

  bool contains(const Rational& theta) const;
  std::string describe() const;
};

/// Integer support of Y_n; `max` is empty for unbounded support.
struct Support {
  std::int64_t min = 0;
  std::optional<std::int64_t> max;
};

/// Law of Y_n = X_1 + ... + X_n for an integer-valued X parameterized by its
/// mean theta.
///
/// Implementations must be pure: every member is const and callable from
/// many threads at once. The finite-reduction results assume that
/// Pr{Y_n in I | theta} is continuous and unimodal in theta for every
/// integer interval I; registering a family asserts this property.
class DistributionFamily {
 public:
  virtual ~DistributionFamily() = default;

  virtual std::string_view name() const = 0;
  virtual ParameterSpace parameter_space() const = 0;
  virtual Support support(std::int64_t n) const = 0;

  /// Pr{Y_n = k | theta} for k inside the support.
  virtual double pmf_at(std::int64_t n, double theta, std::int64_t k) const = 0;

  /// Writes pmf_at(n, theta, k) for k = lo..hi into `out` (size hi-lo+1).
  /// The default calls pmf_at per term; built-in families override it with
  /// a ratio recurrence re-anchored every few dozen terms.
  virtual void pmf_block(std::int64_t n, double theta, std::int64_t lo, std::int64_t hi,
                         std::span<double> out) const;

  /// Largest k worth summing for an unbounded upper tail. Only consulted when
  /// support(n).max is empty.
  virtual std::int64_t tail_cutoff(std::int64_t n, double theta) const;
};

/// Bernoulli trials: Y_n ~ Binomial(n, theta), theta in [0, 1].
class BernoulliFamily final : public DistributionFamily {
 public:
  std::string_view name() const override { return "bernoulli"; }
  ParameterSpace parameter_space() const override;
  Support support(std::int64_t n) const override;
  double pmf_at(std::int64_t n, double theta, std::int64_t k) const override;
  void pmf_block(std::int64_t n, double theta, std::int64_t lo, std::int64_t hi,
                 std::span<double> out) const override;
};

/// Poisson counts: Y_n ~ Poisson(n * theta), theta > 0.
///
/// Upper tails are truncated at ceil(n theta) + 40 sqrt(n theta) + 40, beyond
/// which the remaining mass is far below 1e-15.
class PoissonFamily final : public DistributionFamily {
 public:
  std::string_view name() const override { return "poisson"; }
  ParameterSpace parameter_space() const override;
  Support support(std::int64_t n) const override;
  double pmf_at(std::int64_t n, double theta, std::int64_t k) const override;
  void pmf_block(std::int64_t n, double theta, std::int64_t lo, std::int64_t hi,
                 std::span<double> out) const override;
  std::int64_t tail_cutoff(std::int64_t n, double theta) const override;
};

/// Adapter for user-supplied families (used by the Python bindings and by
/// tests). The callbacks must be thread-safe.
class CustomFamily final : public DistributionFamily {
 public:
  using PmfFn = std::function<double(std::int64_t n, double theta, std::int64_t k)>;
  using SupportFn = std::function<Support(std::int64_t n)>;

  CustomFamily(std::string name, ParameterSpace space, SupportFn support, PmfFn pmf);

  std::string_view name() const override { return name_; }
  ParameterSpace parameter_space() const override { return space_; }
  Support support(std::int64_t n) const override { return support_(n); }
  double pmf_at(std::int64_t n, double theta, std::int64_t k) const override { return pmf_(n, theta, k); }

 private:
  std::string name_;
  ParameterSpace space_;
  SupportFn support_;
  PmfFn pmf_;
};

using FamilyPtr = std::shared_ptr<const DistributionFamily>;

/// Looks up "bernoulli", "poisson" or a registered custom family.
/// Throws std::invalid_argument for unknown identifiers.
FamilyPtr find_family(std::string_view id);

/// Adds or replaces a family under its name().
void register_family(FamilyPtr family);

std::vector<std::string> family_names();

/// Throws DomainError when theta is outside the family's parameter space or
/// n < 1.
void check_admissible(const DistributionFamily& family, std::int64_t n, const Rational& theta);

/// Pr{Y_n = k | theta}; 0 outside the support.
double pmf(const DistributionFamily& family, std::int64_t n, const Rational& theta, std::int64_t k);

/// S(n, k, l, theta) = Pr{k <= Y_n <= l | theta}. Zero when k > l; both ends
/// are clipped to the support, and l = kUnbounded (or anything past the tail
/// cutoff for unbounded families) sums to the truncation point.
double prob_range(const DistributionFamily& family, std::int64_t n, std::int64_t k, std::int64_t l,
                  const Rational& theta);

/// prob_range on an already-converted theta; admissibility is the caller's
/// responsibility.
double prob_range_unchecked(const DistributionFamily& family, std::int64_t n, std::int64_t k,
                            std::int64_t l, double theta);

/// Effective inclusive upper summation limit for Y_n at theta.
std::int64_t summation_limit(const DistributionFamily& family, std::int64_t n, double theta);

}  // namespace covmin
