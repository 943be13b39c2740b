// Independent computation of minimum sample sizes: indicator coverage on a
// dense grid joined with the jump points of every outcome's indicator,
// scanned over n one at a time. Shares no code with the candidate sets.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "covmin/criterion.hpp"
#include "covmin/family.hpp"
#include "covmin/oracle.hpp"
#include "covmin/rational.hpp"

using namespace covmin;

namespace {

struct Case {
  const char* label;
  const char* family;
  bool relative;
  Rational eps;
  Rational a;
  Rational b;
  Rational delta;
};

// theta values where |k/n - theta| = eps (or = eps theta) for some outcome k.
std::vector<Rational> jump_points(const Case& c, std::int64_t n) {
  std::vector<Rational> out;
  const Rational nn(n);
  const std::int64_t k_hi = (c.b * nn * Rational(2)).ceil() + 2;
  for (std::int64_t k = 0; k <= k_hi; ++k) {
    const Rational est = Rational(k) / nn;
    std::vector<Rational> pts;
    if (c.relative) {
      pts = {est / (Rational(1) + c.eps), est / (Rational(1) - c.eps)};
    } else {
      pts = {est - c.eps, est + c.eps};
    }
    for (const auto& t : pts) {
      if (t >= c.a && t <= c.b) out.push_back(t);
    }
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<Case> cases = {
      {"bernoulli absolute eps=1/10 delta=1/20 [0,1]", "bernoulli", false, Rational(1, 10), Rational(0),
       Rational(1), Rational(1, 20)},
      {"bernoulli relative eps=1/5 delta=1/20 [1/10,9/10]", "bernoulli", true, Rational(1, 5), Rational(1, 10),
       Rational(9, 10), Rational(1, 20)},
      {"poisson absolute eps=1/2 delta=1/20 [1,10]", "poisson", false, Rational(1, 2), Rational(1), Rational(10),
       Rational(1, 20)},
  };
  for (const auto& c : cases) {
    const FamilyPtr family = find_family(c.family);
    const ErrorCriterion criterion = c.relative ? ErrorCriterion::relative(c.eps) : ErrorCriterion::absolute(c.eps);
    const EstimatorKind estimator = EstimatorKind::unbiased();
    const double threshold = (Rational(1) - c.delta).to_double();
    const Rational step = (c.b - c.a) / Rational(10'000);

    for (std::int64_t n = 2;; ++n) {
      // Jump points first: failing n are usually rejected there at once.
      std::vector<Rational> thetas = jump_points(c, n);
      for (std::int64_t j = 0; j <= 10'000; ++j) thetas.push_back(c.a + step * Rational(j));
      double worst = 1.0;
      Rational where;
      bool failed = false;
      for (const auto& t : thetas) {
        const double v = oracle::indicator_coverage(*family, n, criterion, estimator, t);
        if (v < worst || (v == worst && t < where)) {
          worst = v;
          where = t;
        }
        if (v <= threshold) {
          failed = true;
          break;
        }
      }
      if (!failed) {
        // Also report the plain-grid minimum for comparison.
        const auto grid_only =
            oracle::grid_min_coverage(*family, n, criterion, estimator, c.a, c.b, oracle::GridSpec{step, false});
        std::printf("%s: n_min=%lld min=%.17g at %s (grid-only min %.17g)\n", c.label, static_cast<long long>(n),
                    worst, where.to_string().c_str(), grid_only.min_coverage);
        break;
      }
    }
  }
  return 0;
}
