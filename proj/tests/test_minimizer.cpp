#include <doctest.h>

#include <cmath>

#include "covmin/errors.hpp"
#include "covmin/minimizer.hpp"
#include "covmin/oracle.hpp"
#include "covmin/parallel.hpp"
#include "support.hpp"

using namespace covmin;
using covmin::testing::all_pairs;
using covmin::testing::InstanceGenerator;

TEST_CASE("boundary outcomes are excluded by the strict margin") {
  const auto bern = find_family("bernoulli");
  const auto report = min_coverage(*bern, 2, ErrorCriterion::absolute(Rational(1, 4)), EstimatorKind::unbiased(),
                                   Rational(0), Rational(1));
  CHECK(report.candidate_set.thetas() == std::vector<Rational>{Rational(0), Rational(1, 4), Rational(3, 4), Rational(1)});
  REQUIRE(report.evaluations.size() == 4);
  CHECK(report.evaluations[0].coverage == 1.0);
  CHECK(report.evaluations[3].coverage == 1.0);
  CHECK(report.min_coverage == 0.0);
  CHECK(report.argmin_theta == Rational(1, 4));
}

TEST_CASE("a margin wider than the support gives full coverage") {
  const auto bern = find_family("bernoulli");
  // eps > 1 and eps > b: every k/n in [0, 1] is strictly within eps of theta
  for (std::int64_t n : {1, 3, 17}) {
    const auto report = min_coverage(*bern, n, ErrorCriterion::absolute(Rational(11, 10)), EstimatorKind::unbiased(),
                                     Rational(0), Rational(1, 2));
    CHECK(report.min_coverage == 1.0);
  }
  const auto rp = min_coverage(*bern, 9, ErrorCriterion::absolute(Rational(1, 2)),
                               EstimatorKind::range_preserving(Rational(1, 5), Rational(3, 5)), Rational(1, 5),
                               Rational(3, 5));
  CHECK(rp.min_coverage == 1.0);
  CHECK(rp.argmin_theta == Rational(1, 5));
}

TEST_CASE("interval checks") {
  const auto bern = find_family("bernoulli");
  const auto pois = find_family("poisson");
  const auto crit = ErrorCriterion::absolute(Rational(1, 10));
  CHECK_THROWS_AS(min_coverage(*bern, 5, crit, EstimatorKind::unbiased(), Rational(1, 2), Rational(1, 2)),
                  HypothesisError);
  CHECK_THROWS_AS(min_coverage(*bern, 5, crit, EstimatorKind::unbiased(), Rational(1, 2), Rational(2)), DomainError);
  CHECK_THROWS_AS(min_coverage(*pois, 5, crit, EstimatorKind::unbiased(), Rational(0), Rational(2)), DomainError);
}

TEST_CASE("one-sided limits at candidate points do not undercut the point") {
  // The limit of C from either side at theta* is the neighbouring event
  // (bounds taken just beside theta*) evaluated at theta* itself.
  InstanceGenerator gen(41);
  const Rational eta(1, 1'000'000'000);
  for (auto pair : all_pairs()) {
    for (int rep = 0; rep < 10; ++rep) {
      const auto inst = gen.draw("bernoulli", pair, 2, 30);
      const auto report = min_coverage(*inst.family, inst.n, inst.criterion, inst.estimator, inst.a, inst.b);
      CAPTURE(inst.describe());
      for (const auto& e : report.evaluations) {
        for (const Rational& t : {e.theta - eta, e.theta + eta}) {
          if (t < inst.a || t > inst.b) continue;
          const auto side = select_branch(inst.n, inst.criterion, inst.estimator, t);
          const double limit = evaluate_branch(*inst.family, inst.n, side.branch, side.bounds, e.theta.to_double());
          CHECK(limit >= e.coverage - 1e-12);
          CHECK(coverage(*inst.family, inst.n, inst.criterion, inst.estimator, t) >= e.coverage - 1e-7);
        }
      }
    }
  }
}

TEST_CASE("agrees with the dense-grid oracle") {
  InstanceGenerator gen(42);
  for (const char* id : {"bernoulli", "poisson"}) {
    for (auto pair : all_pairs()) {
      for (int rep = 0; rep < 3; ++rep) {
        const auto inst = gen.draw(id, pair, 2, 30);
        const auto report = min_coverage(*inst.family, inst.n, inst.criterion, inst.estimator, inst.a, inst.b);
        const auto grid = oracle::grid_min_coverage(*inst.family, inst.n, inst.criterion, inst.estimator, inst.a,
                                                    inst.b, oracle::GridSpec{(inst.b - inst.a) / Rational(2000), true});
        CAPTURE(inst.describe());
        CHECK(std::fabs(report.min_coverage - grid.min_coverage) <= 5e-10);
      }
    }
  }
}

TEST_CASE("result does not depend on the thread count") {
  InstanceGenerator gen(43);
  const auto saved = thread_count();
  for (auto pair : all_pairs()) {
    const auto inst = gen.draw("bernoulli", pair, 200, 400);
    set_thread_count(1);
    const auto serial = min_coverage(*inst.family, inst.n, inst.criterion, inst.estimator, inst.a, inst.b);
    set_thread_count(4);
    const auto threaded = min_coverage(*inst.family, inst.n, inst.criterion, inst.estimator, inst.a, inst.b);
    CAPTURE(inst.describe());
    CHECK(serial.min_coverage == threaded.min_coverage);
    CHECK(serial.argmin_theta == threaded.argmin_theta);
    REQUIRE(serial.evaluations.size() == threaded.evaluations.size());
    for (std::size_t i = 0; i < serial.evaluations.size(); ++i) {
      CHECK(serial.evaluations[i].coverage == threaded.evaluations[i].coverage);
    }
  }
  set_thread_count(saved);
}

TEST_CASE("coverage curve merges grid and candidates") {
  const auto bern = find_family("bernoulli");
  const auto crit = ErrorCriterion::absolute(Rational(1, 4));
  const auto curve =
      coverage_curve(*bern, 2, crit, EstimatorKind::unbiased(), Rational(0), Rational(1), Rational(1, 2));
  REQUIRE(curve.size() == 5);
  CHECK(curve[0].theta == Rational(0));
  CHECK(curve[1].theta == Rational(1, 4));
  CHECK(curve[1].provenance.has_value());
  CHECK(curve[1].coverage == 0.0);
  CHECK(curve[2].theta == Rational(1, 2));
  CHECK_FALSE(curve[2].provenance.has_value());
  CHECK(curve[2].coverage == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(curve[4].provenance == Provenance::Endpoint);
}
