#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "covmin/candidates.hpp"
#include "covmin/errors.hpp"
#include "covmin/family.hpp"
#include "covmin/minimizer.hpp"
#include "covmin/oracle.hpp"
#include "covmin/report.hpp"
#include "covmin/search.hpp"

namespace covmin::cli {
namespace {

using nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

struct Options {
  std::string family = "bernoulli";
  std::string abs_eps;
  std::string rel_eps;
  std::string estimator = "unbiased";
  std::string a;
  std::string b;
  std::string delta;
  std::string step;
  std::int64_t n = 0;
  std::int64_t n_to = 0;
  std::int64_t n_start = 2;
  std::int64_t n_max = 1'000'000;
  Format format = Format::Text;
  std::string output;
  bool trace = false;
  bool guard_band = false;
  bool grid_only = false;
  double tolerance = 5e-10;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_value(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError("--" + flag + ": " + e.what());
  }
}

// Validated, exact form of the options.
struct Config {
  FamilyPtr family;
  std::optional<ErrorCriterion> criterion;
  std::optional<EstimatorKind> estimator;
  Rational a;
  Rational b;
};

Config resolve(const Options& o) {
  Config c;
  try {
    c.family = find_family(o.family);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (o.abs_eps.empty() && o.rel_eps.empty()) throw ConfigError("give --abs-eps, --rel-eps or both");
  c.a = parse_value("a", o.a);
  c.b = parse_value("b", o.b);
  if (!(c.a < c.b)) throw ConfigError("--a must be smaller than --b");
  try {
    if (!o.abs_eps.empty() && !o.rel_eps.empty()) {
      c.criterion = ErrorCriterion::mixed(parse_value("abs-eps", o.abs_eps), parse_value("rel-eps", o.rel_eps));
    } else if (!o.abs_eps.empty()) {
      c.criterion = ErrorCriterion::absolute(parse_value("abs-eps", o.abs_eps));
    } else {
      c.criterion = ErrorCriterion::relative(parse_value("rel-eps", o.rel_eps));
    }
    c.estimator = o.estimator == "unbiased" ? EstimatorKind::unbiased() : EstimatorKind::range_preserving(c.a, c.b);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

void require_n(std::int64_t n) {
  if (n < 1) throw ConfigError("--n must be at least 1");
}

Rational resolve_step(const Options& o, const Config& c, std::int64_t divisions) {
  if (o.step.empty()) return (c.b - c.a) / Rational(divisions);
  Rational step = parse_value("step", o.step);
  if (step.sign() <= 0) throw ConfigError("--step must be positive");
  return step;
}

std::string theta_text(const Rational& theta) {
  return theta.to_string() + " (" + format_double(theta.to_double()) + ")";
}

void header(std::ostream& out, const Options& o, const Config& c) {
  out << "family      " << o.family << '\n'
      << "criterion   " << c.criterion->describe() << '\n'
      << "estimator   " << c.estimator->describe() << '\n'
      << "interval    [" << c.a.to_string() << ", " << c.b.to_string() << "]\n";
}

int cmd_sample_size(const Options& o, std::ostream& out) {
  const Config c = resolve(o);
  if (o.delta.empty()) throw ConfigError("--delta is required");
  SampleSizeQuery query{.family = o.family,
                        .criterion = *c.criterion,
                        .estimator = *c.estimator,
                        .a = c.a,
                        .b = c.b,
                        .delta = parse_value("delta", o.delta),
                        .n_start = o.n_start,
                        .n_max = o.n_max,
                        .guard_band = o.guard_band,
                        .progress = {}};
  if (query.delta.sign() <= 0 || query.delta >= Rational(1)) throw ConfigError("--delta must lie in (0, 1)");
  if (o.n_start < 1 || o.n_start > o.n_max) throw ConfigError("need 1 <= --n-start <= --n-max");

  const SampleSizeResult result = min_sample_size(query);
  switch (o.format) {
    case Format::Json: out << dump(to_json(result, o.trace)); break;
    case Format::Csv: write_trace_csv(out, result); break;
    case Format::Text:
      header(out, o, c);
      out << "delta       " << query.delta.to_string() << '\n';
      if (result.n_min) {
        out << "n_min       " << *result.n_min << '\n';
      } else {
        out << "n_min       not found up to " << o.n_max << '\n';
      }
      out << "coverage    " << format_double(result.coverage_at_n_min) << '\n'
          << "argmin      " << theta_text(result.argmin_theta) << '\n';
      if (o.trace) {
        out << '\n' << std::setw(8) << "n" << "  " << std::setw(24) << "min_coverage" << "  argmin_theta\n";
        for (const auto& t : result.trace) {
          out << std::setw(8) << t.n << "  " << std::setw(24) << format_double(t.min_coverage) << "  "
              << t.argmin_theta.to_string() << '\n';
        }
      }
      break;
  }
  return kExitOk;
}

int cmd_min_coverage(const Options& o, std::ostream& out) {
  const Config c = resolve(o);
  require_n(o.n);
  const CoverageReport report = min_coverage(*c.family, o.n, *c.criterion, *c.estimator, c.a, c.b);
  switch (o.format) {
    case Format::Json: out << dump(to_json(report)); break;
    case Format::Csv: write_evaluations_csv(out, report); break;
    case Format::Text:
      header(out, o, c);
      out << "n           " << report.n << '\n'
          << "candidates  " << report.candidate_set.size() << " (" << to_string(report.candidate_set.rule) << ")\n"
          << "min         " << format_double(report.min_coverage) << '\n'
          << "argmin      " << theta_text(report.argmin_theta) << '\n';
      break;
  }
  return kExitOk;
}

int cmd_coverage_curve(const Options& o, std::ostream& out) {
  const Config c = resolve(o);
  require_n(o.n);
  const Rational step = resolve_step(o, c, 1000);
  const auto curve = coverage_curve(*c.family, o.n, *c.criterion, *c.estimator, c.a, c.b, step);
  switch (o.format) {
    case Format::Json: {
      ordered_json points = ordered_json::array();
      for (const auto& p : curve) {
        ordered_json item;
        item["theta_exact"] = rational_json(p.theta);
        item["theta_float"] = ordered_json::parse(format_double(p.theta.to_double()));
        item["coverage"] = ordered_json::parse(format_double(p.coverage));
        item["is_candidate"] = p.provenance.has_value();
        item["provenance"] = p.provenance ? std::string(to_string(*p.provenance)) : std::string();
        points.push_back(std::move(item));
      }
      out << dump(points);
      break;
    }
    case Format::Csv:
    case Format::Text: write_curve_csv(out, curve); break;
  }
  return kExitOk;
}

int cmd_candidates(const Options& o, std::ostream& out) {
  const Config c = resolve(o);
  require_n(o.n);
  const CandidateSet set = candidates_for(o.n, *c.criterion, *c.estimator, c.a, c.b);
  switch (o.format) {
    case Format::Json: out << dump(to_json(set)); break;
    case Format::Csv: write_candidates_csv(out, set); break;
    case Format::Text:
      out << "rule " << to_string(set.rule) << ", " << set.size() << " points, bound "
          << set.cardinality_bound.to_string() << '\n';
      for (const auto& p : set.points) {
        out << std::left << std::setw(24) << p.theta.to_string() << std::setw(24)
            << format_double(p.theta.to_double()) << to_string(p.provenance) << '\n'
            << std::right;
      }
      break;
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Config c = resolve(o);
  require_n(o.n);
  const std::int64_t n_to = o.n_to ? o.n_to : o.n;
  if (n_to < o.n) throw ConfigError("--n-to must not be smaller than --n");
  if (!(o.tolerance >= 0)) throw ConfigError("--tolerance must be non-negative");
  const oracle::GridSpec grid{resolve_step(o, c, 10'000), !o.grid_only};

  struct Row {
    std::int64_t n;
    CoverageReport theorem;
    oracle::GridMinimum brute;
    double discrepancy;
  };
  std::vector<Row> rows;
  bool agree = true;
  for (std::int64_t n = o.n; n <= n_to; ++n) {
    CoverageReport theorem = min_coverage(*c.family, n, *c.criterion, *c.estimator, c.a, c.b);
    oracle::GridMinimum brute = oracle::grid_min_coverage(*c.family, n, *c.criterion, *c.estimator, c.a, c.b, grid);
    const double discrepancy = std::fabs(theorem.min_coverage - brute.min_coverage);
    agree = agree && discrepancy <= o.tolerance;
    rows.push_back({n, std::move(theorem), brute, discrepancy});
  }

  switch (o.format) {
    case Format::Json: {
      ordered_json j;
      j["tolerance"] = ordered_json::parse(format_double(o.tolerance));
      j["grid_step"] = rational_json(grid.step);
      j["grid_includes_candidates"] = grid.include_candidates;
      ordered_json items = ordered_json::array();
      for (const auto& r : rows) {
        ordered_json item;
        item["n"] = r.n;
        item["theorem_min"] = ordered_json::parse(format_double(r.theorem.min_coverage));
        item["theorem_argmin"] = rational_json(r.theorem.argmin_theta);
        item["oracle_min"] = ordered_json::parse(format_double(r.brute.min_coverage));
        item["oracle_argmin"] = rational_json(r.brute.argmin_theta);
        item["oracle_points"] = r.brute.points_scanned;
        item["discrepancy"] = ordered_json::parse(format_double(r.discrepancy));
        item["agree"] = r.discrepancy <= o.tolerance;
        items.push_back(std::move(item));
      }
      j["results"] = std::move(items);
      j["agree"] = agree;
      out << dump(j);
      break;
    }
    case Format::Csv:
      out << "n,theorem_min,theorem_argmin,oracle_min,oracle_argmin,discrepancy,agree\n";
      for (const auto& r : rows) {
        out << r.n << ',' << format_double(r.theorem.min_coverage) << ',' << r.theorem.argmin_theta.to_string()
            << ',' << format_double(r.brute.min_coverage) << ',' << r.brute.argmin_theta.to_string() << ','
            << format_double(r.discrepancy) << ',' << (r.discrepancy <= o.tolerance ? 1 : 0) << '\n';
      }
      break;
    case Format::Text:
      header(out, o, c);
      out << "grid step   " << grid.step.to_string() << (grid.include_candidates ? " plus candidates" : "") << '\n'
          << "tolerance   " << format_double(o.tolerance) << "\n\n";
      out << std::setw(6) << "n" << "  " << std::setw(24) << "theorem_min" << "  " << std::setw(24) << "oracle_min"
          << "  " << std::setw(24) << "discrepancy" << "  status\n";
      for (const auto& r : rows) {
        out << std::setw(6) << r.n << "  " << std::setw(24) << format_double(r.theorem.min_coverage) << "  "
            << std::setw(24) << format_double(r.brute.min_coverage) << "  " << std::setw(24)
            << format_double(r.discrepancy) << "  " << (r.discrepancy <= o.tolerance ? "ok" : "MISMATCH") << '\n';
      }
      break;
  }
  return agree ? kExitOk : kExitDiscrepancy;
}

void add_common(CLI::App* sub, Options& o, bool needs_n) {
  sub->add_option("--family", o.family, "Distribution family (" + [] {
    std::string names;
    for (const auto& name : family_names()) names += (names.empty() ? "" : ", ") + name;
    return names;
  }() + ")");
  sub->add_option("--abs-eps", o.abs_eps, "Absolute margin (decimal or p/q)");
  sub->add_option("--rel-eps", o.rel_eps, "Relative margin; with --abs-eps selects the mixed criterion");
  sub->add_option("--estimator", o.estimator, "unbiased | range-preserving")
      ->check(CLI::IsMember({"unbiased", "range-preserving"}));
  sub->add_option("--a", o.a, "Lower end of the parameter interval")->required();
  sub->add_option("--b", o.b, "Upper end of the parameter interval")->required();
  sub->add_option("--format", o.format, "text | json | csv")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}}));
  sub->add_option("--output,-o", o.output, "Write the result to this file instead of standard output");
  if (needs_n) sub->add_option("--n", o.n, "Sample size")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact minimum sample sizes by finite candidate-set reduction", "covmin"};
  app.require_subcommand(1);
  Options o;

  auto* sample = app.add_subcommand("sample-size", "Smallest n whose worst-case coverage exceeds 1 - delta");
  add_common(sample, o, false);
  sample->add_option("--delta", o.delta, "Confidence parameter in (0, 1)")->required();
  sample->add_option("--n-start", o.n_start, "First sample size examined");
  sample->add_option("--n-max", o.n_max, "Last sample size examined");
  sample->add_flag("--trace", o.trace, "Include the per-n trace");
  sample->add_flag("--guard-band", o.guard_band, "Require coverage above 1 - delta + 1e-12");

  auto* minimum = app.add_subcommand("min-coverage", "Worst-case coverage over [a, b] for one n");
  add_common(minimum, o, true);

  auto* curve = app.add_subcommand("coverage-curve", "Coverage on a grid plus the candidate points");
  add_common(curve, o, true);
  curve->add_option("--step", o.step, "Grid step (default (b-a)/1000)");

  auto* cands = app.add_subcommand("candidates", "List the candidate set");
  add_common(cands, o, true);

  auto* verify = app.add_subcommand("verify", "Compare the reduction against the brute-force oracle");
  add_common(verify, o, true);
  verify->add_option("--n-to", o.n_to, "Check every n from --n to --n-to");
  verify->add_option("--step", o.step, "Oracle grid step (default (b-a)/10000)");
  verify->add_option("--tolerance", o.tolerance, "Largest accepted discrepancy");
  verify->add_flag("--grid-only", o.grid_only, "Do not add the candidate points to the oracle grid");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::ostringstream buffer;
  int status = kExitOk;
  try {
    if (sample->parsed()) status = cmd_sample_size(o, buffer);
    else if (minimum->parsed()) status = cmd_min_coverage(o, buffer);
    else if (curve->parsed()) status = cmd_coverage_curve(o, buffer);
    else if (cands->parsed()) status = cmd_candidates(o, buffer);
    else status = cmd_verify(o, buffer);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (o.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << o.output << " for writing\n";
      return kExitConfig;
    }
    file << buffer.str();
  }
  if (status == kExitDiscrepancy) err << "verify: discrepancy beyond tolerance\n";
  return status;
}

}  // namespace covmin::cli
