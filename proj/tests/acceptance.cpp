// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "covmin/candidates.hpp"
#include "covmin/coverage.hpp"
#include "covmin/minimizer.hpp"
#include "covmin/oracle.hpp"
#include "covmin/parallel.hpp"
#include "covmin/search.hpp"
#include "support.hpp"

using namespace covmin;
using covmin::testing::all_pairs;
using covmin::testing::effective_bounds;
using covmin::testing::Instance;
using covmin::testing::InstanceGenerator;
using covmin::testing::Pair;
using covmin::testing::pair_name;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Candidate sets seen by the randomized suites, for the cardinality check.
struct SetLog {
  struct Tally {
    std::size_t sets = 0;
    std::size_t violations = 0;
    std::string first_violation;
  };
  std::map<CandidateRule, Tally> by_rule;

  void record(const Instance& inst, const CandidateSet& set) {
    auto& t = by_rule[set.rule];
    ++t.sets;
    if (!(Rational(static_cast<std::int64_t>(set.size())) < set.cardinality_bound)) {
      if (t.violations++ == 0) {
        t.first_violation = inst.describe() + ": " + std::to_string(set.size()) + " points, bound " +
                            set.cardinality_bound.to_string();
      }
    }
  }
};

SetLog g_sets;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Verdict reduction_validity() {
  Verdict v;
  InstanceGenerator gen(1001);
  std::ostringstream detail;
  double worst_all = 0.0;
  for (const char* family : {"bernoulli", "poisson"}) {
    const int count = std::string(family) == "bernoulli" ? 200 : 50;
    for (auto pair : all_pairs()) {
      double worst = 0.0;
      std::string worst_case;
      for (int i = 0; i < count; ++i) {
        const Instance inst = gen.draw(family, pair);
        const CoverageReport report =
            min_coverage(*inst.family, inst.n, inst.criterion, inst.estimator, inst.a, inst.b);
        g_sets.record(inst, report.candidate_set);
        const auto grid = oracle::grid_min_coverage(*inst.family, inst.n, inst.criterion, inst.estimator, inst.a,
                                                    inst.b, oracle::GridSpec{(inst.b - inst.a) / Rational(10'000), true});
        const double gap = std::fabs(report.min_coverage - grid.min_coverage);
        if (gap > worst) {
          worst = gap;
          worst_case = inst.describe();
        }
      }
      worst_all = std::max(worst_all, worst);
      if (worst > 5e-10) {
        v.pass = false;
        detail << " " << family << " " << pair_name(pair) << " gap " << fmt(worst) << " (" << worst_case << ");";
      }
    }
  }
  v.detail = "6 pairs x (200 bernoulli + 50 poisson), worst gap " + fmt(worst_all) + detail.str();
  return v;
}

Verdict bounds_correctness() {
  Verdict v;
  InstanceGenerator gen(1002);
  const int total = 10'000;
  int mismatches = 0;
  double worst = 0.0;
  std::string first;
  for (int i = 0; i < total; ++i) {
    const Pair pair = all_pairs()[static_cast<std::size_t>(i) % all_pairs().size()];
    const Instance inst = gen.draw(i % 4 == 3 ? "poisson" : "bernoulli", pair);
    const CandidateSet set = candidates_for(inst.n, inst.criterion, inst.estimator, inst.a, inst.b);
    g_sets.record(inst, set);
    const Rational theta = gen.theta_in(inst, set);
    const double c = coverage(*inst.family, inst.n, inst.criterion, inst.estimator, theta);
    const double o = oracle::indicator_coverage(*inst.family, inst.n, inst.criterion, inst.estimator, theta);
    const double d = std::fabs(c - o);
    worst = std::max(worst, d);
    if (d > 1e-12 && mismatches++ == 0) first = inst.describe() + " theta=" + theta.to_string();
  }
  v.pass = mismatches == 0;
  v.detail = std::to_string(total) + " triples over 6 pairs, " + std::to_string(mismatches) + " mismatches, worst " +
             fmt(worst) + (first.empty() ? "" : " (first: " + first + ")");
  return v;
}

Verdict lemma_constancy() {
  Verdict v;
  InstanceGenerator gen(1003);
  const int total = 100;
  std::size_t intervals = 0;
  std::size_t violations = 0;
  std::string first;
  for (int i = 0; i < total; ++i) {
    const Pair pair = all_pairs()[static_cast<std::size_t>(i) % all_pairs().size()];
    const Instance inst = gen.draw(i % 5 == 4 ? "poisson" : "bernoulli", pair);
    const CandidateSet set = candidates_for(inst.n, inst.criterion, inst.estimator, inst.a, inst.b);
    g_sets.record(inst, set);
    for (std::size_t k = 1; k < set.size(); ++k) {
      ++intervals;
      const Rational lo = set.points[k - 1].theta;
      const Rational width = set.points[k].theta - lo;
      const Bounds ref =
          effective_bounds(select_branch(inst.n, inst.criterion, inst.estimator, lo + width / Rational(51)));
      for (int j = 2; j <= 50; ++j) {
        const Rational t = lo + width * Rational(j, 51);
        if (!(effective_bounds(select_branch(inst.n, inst.criterion, inst.estimator, t)) == ref)) {
          if (violations++ == 0) first = inst.describe() + " theta=" + t.to_string();
        }
      }
    }
  }
  v.pass = violations == 0;
  v.detail = std::to_string(total) + " instances, " + std::to_string(intervals) + " gaps x 50 samples, " +
             std::to_string(violations) + " violations" + (first.empty() ? "" : " (first: " + first + ")");
  return v;
}

Verdict cardinality() {
  Verdict v;
  std::ostringstream detail;
  for (const auto& [rule, tally] : g_sets.by_rule) {
    detail << to_string(rule) << " " << tally.violations << "/" << tally.sets << "; ";
    if (tally.violations) v.pass = false;
  }
  for (const auto& [rule, tally] : g_sets.by_rule) {
    if (tally.violations) detail << "first " << to_string(rule) << " violation: " << tally.first_violation << "; ";
  }
  v.detail = detail.str();
  return v;
}

Verdict degenerate_cases() {
  Verdict v;
  InstanceGenerator gen(1005);
  int checked = 0;
  int failures = 0;
  std::string first;
  for (int i = 0; i < 120; ++i) {
    const bool relative = i % 2 == 1;
    const bool poisson = i % 3 == 2;
    const std::int64_t scale = poisson ? 100 : 1000;
    const std::int64_t a_units = gen.uniform(poisson ? 50 : 1, poisson ? 1500 : 800);
    const Rational a(a_units, scale);
    const Rational b(gen.uniform(a_units + 1, a_units + (poisson ? 300 : 150)), scale);
    if (!poisson && b > Rational(1)) continue;
    Rational eps;
    if (relative) {
      // a / (1 - eps) > b and b / (1 + eps) < a: eps > max(1 - a/b, b/a - 1)
      const Rational lower = max(Rational(1) - a / b, b / a - Rational(1));
      if (lower >= Rational(1)) continue;
      eps = lower + (Rational(1) - lower) * Rational(gen.uniform(1, 999), 1000);
    } else {
      eps = (b - a) * Rational(gen.uniform(1001, 3000), 1000);
    }
    const ErrorCriterion crit = relative ? ErrorCriterion::relative(eps) : ErrorCriterion::absolute(eps);
    const EstimatorKind est = EstimatorKind::range_preserving(a, b);
    const std::int64_t n_start = gen.uniform(1, 40);
    const auto family = find_family(poisson ? "poisson" : "bernoulli");
    const auto report = min_coverage(*family, n_start + gen.uniform(0, 200), crit, est, a, b);
    const SampleSizeQuery query{.family = std::string(family->name()),
                                .criterion = crit,
                                .estimator = est,
                                .a = a,
                                .b = b,
                                .delta = Rational(gen.uniform(1, 500), 1000),
                                .n_start = n_start,
                                .n_max = n_start + 1000,
                                .guard_band = false,
                                .progress = {}};
    const auto result = min_sample_size(query);
    ++checked;
    if (report.min_coverage != 1.0 || !result.n_min || *result.n_min != n_start) {
      if (failures++ == 0) first = std::string(family->name()) + " " + crit.describe() + " " + est.describe();
    }
  }
  v.pass = failures == 0 && checked > 0;
  v.detail = std::to_string(checked) + " cases (absolute a+eps > b, relative a/(1-eps) > b > a > b/(1+eps)), " +
             std::to_string(failures) + " failures" + (first.empty() ? "" : " (first: " + first + ")");
  return v;
}

Verdict golden_sample_sizes() {
  struct Golden {
    const char* label;
    SampleSizeQuery query;
    std::int64_t n_min;
  };
  // Frozen from the independent indicator + dense grid + linear scan run.
  const std::vector<Golden> goldens = {
      {"bernoulli abs 0.1", {.family = "bernoulli", .criterion = ErrorCriterion::absolute(Rational(1, 10)),
                             .estimator = EstimatorKind::unbiased(), .a = Rational(0), .b = Rational(1),
                             .delta = Rational(1, 20)}, 101},
      {"bernoulli rel 0.2", {.family = "bernoulli", .criterion = ErrorCriterion::relative(Rational(1, 5)),
                             .estimator = EstimatorKind::unbiased(), .a = Rational(1, 10), .b = Rational(9, 10),
                             .delta = Rational(1, 20)}, 901},
      {"poisson abs 0.5", {.family = "poisson", .criterion = ErrorCriterion::absolute(Rational(1, 2)),
                           .estimator = EstimatorKind::unbiased(), .a = Rational(1), .b = Rational(10),
                           .delta = Rational(1, 20)}, 156},
  };
  Verdict v;
  std::ostringstream detail;
  for (const auto& g : goldens) {
    const auto result = min_sample_size(g.query);
    const bool ok = result.n_min && *result.n_min == g.n_min;
    v.pass = v.pass && ok;
    detail << g.label << " -> " << (result.n_min ? std::to_string(*result.n_min) : "not found") << " (golden "
           << g.n_min << ")" << (ok ? "" : " MISMATCH") << "; ";
  }
  v.detail = detail.str();
  return v;
}

Verdict cli_determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"sample-size", "--abs-eps", "0.1", "--a", "0", "--b", "1", "--delta", "0.05", "--trace", "--format", "json"},
      {"min-coverage", "--n", "500", "--abs-eps", "0.04", "--rel-eps", "0.1", "--a", "0.1", "--b", "0.9",
       "--estimator", "range-preserving", "--format", "json"},
      {"coverage-curve", "--family", "poisson", "--n", "30", "--rel-eps", "0.2", "--a", "0.5", "--b", "8"},
      {"candidates", "--n", "200", "--abs-eps", "0.02", "--rel-eps", "0.1", "--a", "0.05", "--b", "0.95"},
      {"verify", "--n", "10", "--n-to", "14", "--rel-eps", "0.3", "--a", "0.2", "--b", "0.7", "--estimator",
       "range-preserving", "--format", "csv"},
  };
  Verdict v;
  const auto saved = thread_count();
  set_thread_count(std::max<std::size_t>(4, saved));
  int identical = 0;
  std::string failed;
  for (const auto& cmd : commands) {
    std::ostringstream out1, err1, out2, err2;
    const int s1 = cli::run(cmd, out1, err1);
    const int s2 = cli::run(cmd, out2, err2);
    if (s1 == s2 && out1.str() == out2.str() && !out1.str().empty()) {
      ++identical;
    } else {
      failed += cmd.front() + " ";
    }
  }
  set_thread_count(saved);
  v.pass = identical == static_cast<int>(commands.size());
  v.detail = std::to_string(identical) + "/" + std::to_string(commands.size()) +
             " subcommands byte-identical across two runs with 4 threads" + (failed.empty() ? "" : "; differ: " + failed);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "reduction validity (candidate minimum vs dense grid, <= 5e-10)", reduction_validity},
      {2, "g/h coverage equals indicator coverage (<= 1e-12)", bounds_correctness},
      {3, "g/h constant between consecutive candidates", lemma_constancy},
      {4, "candidate-set cardinality bounds", cardinality},
      {5, "degenerate range-preserving cases give coverage 1 and n_min = n_start", degenerate_cases},
      {6, "golden minimum sample sizes", golden_sample_sizes},
      {7, "CLI determinism under threading", cli_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failures;
    std::printf("[%s] criterion %d: %s -- %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str(),
                seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
