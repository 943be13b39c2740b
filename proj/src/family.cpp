#include "covmin/family.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "covmin/errors.hpp"
#include "covmin/numeric.hpp"

namespace covmin {
namespace {

constexpr double kLn2Pi = 1.837877066409345483560659472811;
constexpr double kSqrt2Pi = 2.506628274631000502415765284811;

// Terms computed by recurrence between exact anchors.
constexpr std::int64_t kAnchorStride = 32;

// Error of Stirling's approximation: log(x!) - log(sqrt(2 pi x) (x/e)^x).
double stirlerr(double x) {
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  if (x <= 15.0) {
    long double lx = x;
    return static_cast<double>(std::lgamma(lx + 1.0L) - (lx + 0.5L) * std::log(lx) + lx -
                               0.918938533204672741780329736406L);
  }
  double xx = x * x;
  if (x > 500.0) return (S0 - S1 / xx) / x;
  if (x > 80.0) return (S0 - (S1 - S2 / xx) / xx) / x;
  if (x > 35.0) return (S0 - (S1 - (S2 - S3 / xx) / xx) / xx) / x;
  return (S0 - (S1 - (S2 - (S3 - S4 / xx) / xx) / xx) / xx) / x;
}

// Deviance term x log(x/m) + m - x, evaluated without cancellation near x = m.
double bd0(double x, double m) {
  if (std::fabs(x - m) < 0.1 * (x + m)) {
    double v = (x - m) / (x + m);
    double s = (x - m) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / m) + m - x;
}

// Saddle-point binomial pmf (Loader 2000).
double binomial_pmf(std::int64_t n, double p, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  double q = 1.0 - p;
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (q == 0.0) return k == n ? 1.0 : 0.0;
  double nn = static_cast<double>(n);
  if (k == 0) {
    double lc = p < 0.1 ? -bd0(nn, nn * q) - nn * p : nn * std::log(q);
    return std::exp(lc);
  }
  if (k == n) {
    double lc = q < 0.1 ? -bd0(nn, nn * p) - nn * q : nn * std::log(p);
    return std::exp(lc);
  }
  double x = static_cast<double>(k);
  double lc = stirlerr(nn) - stirlerr(x) - stirlerr(nn - x) - bd0(x, nn * p) - bd0(nn - x, nn * q);
  double lf = kLn2Pi + std::log(x) + std::log1p(-x / nn);
  return std::exp(lc - 0.5 * lf);
}

double poisson_pmf(double lambda, std::int64_t k) {
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  if (k == 0) return std::exp(-lambda);
  double x = static_cast<double>(k);
  return std::exp(-stirlerr(x) - bd0(x, lambda)) / (kSqrt2Pi * std::sqrt(x));
}

// Fills out[k - lo] for k in [lo, hi]. Starting from the mode (clipped into
// the block) and walking outward, exact anchors are placed every
// kAnchorStride terms with ratio recurrences in between; `up(k)` is
// pmf(k+1)/pmf(k) and `down(k)` is pmf(k-1)/pmf(k). Terms only shrink away
// from the mode, so an anchor that underflows ends its direction.
template <class Exact, class UpRatio, class DownRatio>
void anchored_block(std::int64_t lo, std::int64_t hi, std::int64_t mode, std::span<double> out, Exact exact,
                    UpRatio up, DownRatio down) {
  auto at = [&](std::int64_t k) -> double& { return out[static_cast<std::size_t>(k - lo)]; };
  const std::int64_t centre = std::clamp(mode, lo, hi);

  for (std::int64_t start = centre; start <= hi; start += kAnchorStride) {
    double value = exact(start);
    at(start) = value;
    if (value == 0.0) {
      for (std::int64_t k = start + 1; k <= hi; ++k) at(k) = 0.0;
      break;
    }
    std::int64_t stop = std::min(hi, start + kAnchorStride - 1);
    for (std::int64_t k = start; k < stop; ++k) {
      value *= up(k);
      at(k + 1) = value;
    }
  }
  for (std::int64_t start = centre - 1; start >= lo; start -= kAnchorStride) {
    double value = exact(start);
    at(start) = value;
    if (value == 0.0) {
      for (std::int64_t k = start - 1; k >= lo; --k) at(k) = 0.0;
      break;
    }
    std::int64_t stop = std::max(lo, start - kAnchorStride + 1);
    for (std::int64_t k = start; k > stop; --k) {
      value *= down(k);
      at(k - 1) = value;
    }
  }
}

struct Registry {
  std::mutex mutex;
  std::map<std::string, FamilyPtr, std::less<>> families;

  Registry() {
    families.emplace("bernoulli", std::make_shared<BernoulliFamily>());
    families.emplace("poisson", std::make_shared<PoissonFamily>());
  }
};

Registry& registry() {
  static Registry instance;
  return instance;
}

}  // namespace

bool ParameterSpace::contains(const Rational& theta) const {
  if (lower_closed ? theta < lower : theta <= lower) return false;
  if (upper) {
    if (upper_closed ? theta > *upper : theta >= *upper) return false;
  }
  return true;
}

std::string ParameterSpace::describe() const {
  std::ostringstream os;
  os << (lower_closed ? '[' : '(') << lower.to_double() << ", ";
  if (upper) {
    os << upper->to_double() << (upper_closed ? ']' : ')');
  } else {
    os << "inf)";
  }
  return os.str();
}

void DistributionFamily::pmf_block(std::int64_t n, double theta, std::int64_t lo, std::int64_t hi,
                                   std::span<double> out) const {
  for (std::int64_t k = lo; k <= hi; ++k) out[static_cast<std::size_t>(k - lo)] = pmf_at(n, theta, k);
}

std::int64_t DistributionFamily::tail_cutoff(std::int64_t n, double theta) const {
  // Generic fallback: walk until the accumulated mass is within 1e-16 of 1.
  constexpr std::int64_t kWalkLimit = 100'000'000;
  CompensatedSum mass;
  std::int64_t k = support(n).min;
  for (std::int64_t steps = 0; steps < kWalkLimit; ++steps, ++k) {
    mass.add(pmf_at(n, theta, k));
    if (mass.value() >= 1.0 - 1e-16) return k;
  }
  return k;
}

ParameterSpace BernoulliFamily::parameter_space() const { return {Rational(0), Rational(1), true, true}; }

Support BernoulliFamily::support(std::int64_t n) const { return {0, n}; }

double BernoulliFamily::pmf_at(std::int64_t n, double theta, std::int64_t k) const {
  return binomial_pmf(n, theta, k);
}

void BernoulliFamily::pmf_block(std::int64_t n, double theta, std::int64_t lo, std::int64_t hi,
                                std::span<double> out) const {
  if (theta <= 0.0 || theta >= 1.0) {
    for (std::int64_t k = lo; k <= hi; ++k) out[static_cast<std::size_t>(k - lo)] = binomial_pmf(n, theta, k);
    return;
  }
  const double odds = theta / (1.0 - theta);
  const auto mode = static_cast<std::int64_t>(std::floor(static_cast<double>(n + 1) * theta));
  anchored_block(
      lo, hi, mode, out, [&](std::int64_t k) { return binomial_pmf(n, theta, k); },
      [&](std::int64_t k) { return static_cast<double>(n - k) / static_cast<double>(k + 1) * odds; },
      [&](std::int64_t k) { return static_cast<double>(k) / static_cast<double>(n - k + 1) / odds; });
}

ParameterSpace PoissonFamily::parameter_space() const { return {Rational(0), std::nullopt, false, false}; }

Support PoissonFamily::support(std::int64_t) const { return {0, std::nullopt}; }

double PoissonFamily::pmf_at(std::int64_t n, double theta, std::int64_t k) const {
  return poisson_pmf(static_cast<double>(n) * theta, k);
}

void PoissonFamily::pmf_block(std::int64_t n, double theta, std::int64_t lo, std::int64_t hi,
                              std::span<double> out) const {
  const double lambda = static_cast<double>(n) * theta;
  if (lambda <= 0.0) {
    for (std::int64_t k = lo; k <= hi; ++k) out[static_cast<std::size_t>(k - lo)] = poisson_pmf(lambda, k);
    return;
  }
  const auto mode = static_cast<std::int64_t>(std::floor(lambda));
  anchored_block(
      lo, hi, mode, out, [&](std::int64_t k) { return poisson_pmf(lambda, k); },
      [&](std::int64_t k) { return lambda / static_cast<double>(k + 1); },
      [&](std::int64_t k) { return static_cast<double>(k) / lambda; });
}

std::int64_t PoissonFamily::tail_cutoff(std::int64_t n, double theta) const {
  const double lambda = static_cast<double>(n) * theta;
  return static_cast<std::int64_t>(std::ceil(lambda) + std::ceil(40.0 * std::sqrt(lambda))) + 40;
}

CustomFamily::CustomFamily(std::string name, ParameterSpace space, SupportFn support, PmfFn pmf)
    : name_(std::move(name)), space_(std::move(space)), support_(std::move(support)), pmf_(std::move(pmf)) {
  if (name_.empty()) throw std::invalid_argument("custom family needs a name");
  if (!support_ || !pmf_) throw std::invalid_argument("custom family needs support and pmf callbacks");
}

FamilyPtr find_family(std::string_view id) {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  auto it = reg.families.find(id);
  if (it == reg.families.end()) throw std::invalid_argument("unknown distribution family '" + std::string(id) + "'");
  return it->second;
}

void register_family(FamilyPtr family) {
  if (!family) throw std::invalid_argument("null family");
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  reg.families[std::string(family->name())] = std::move(family);
}

std::vector<std::string> family_names() {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  std::vector<std::string> names;
  for (const auto& [name, _] : reg.families) names.push_back(name);
  return names;
}

void check_admissible(const DistributionFamily& family, std::int64_t n, const Rational& theta) {
  if (n < 1) throw DomainError("sample size must be at least 1");
  auto space = family.parameter_space();
  if (!space.contains(theta)) {
    throw DomainError("theta = " + theta.to_string() + " outside the " + std::string(family.name()) +
                      " parameter space " + space.describe());
  }
}

double pmf(const DistributionFamily& family, std::int64_t n, const Rational& theta, std::int64_t k) {
  check_admissible(family, n, theta);
  auto sup = family.support(n);
  if (k < sup.min || (sup.max && k > *sup.max)) return 0.0;
  return family.pmf_at(n, theta.to_double(), k);
}

std::int64_t summation_limit(const DistributionFamily& family, std::int64_t n, double theta) {
  auto sup = family.support(n);
  return sup.max ? *sup.max : family.tail_cutoff(n, theta);
}

double prob_range_unchecked(const DistributionFamily& family, std::int64_t n, std::int64_t k, std::int64_t l,
                            double theta) {
  auto sup = family.support(n);
  std::int64_t lo = std::max(k, sup.min);
  const std::int64_t limit = summation_limit(family, n, theta);
  std::int64_t hi = std::min(l, limit);
  if (lo > hi) return 0.0;
  // Whole support: exactly one rather than a rounded sum.
  if (lo == sup.min && l >= (sup.max ? *sup.max : limit)) return 1.0;

  constexpr std::int64_t kChunk = 1024;
  std::array<double, kChunk> buffer{};
  CompensatedSum total;
  for (std::int64_t start = lo; start <= hi; start += kChunk) {
    std::int64_t stop = std::min(hi, start + kChunk - 1);
    auto count = static_cast<std::size_t>(stop - start + 1);
    std::span<double> out(buffer.data(), count);
    family.pmf_block(n, theta, start, stop, out);
    for (double p : out) total.add(p);
  }
  return clamp_probability(total.value());
}

double prob_range(const DistributionFamily& family, std::int64_t n, std::int64_t k, std::int64_t l,
                  const Rational& theta) {
  check_admissible(family, n, theta);
  if (k > l) return 0.0;
  return prob_range_unchecked(family, n, k, l, theta.to_double());
}

}  // namespace covmin
