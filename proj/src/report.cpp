#include "covmin/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace covmin {

using nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ordered_json rational_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw std::invalid_argument("expected a rational as \"num/den\" string, got " + j.dump());
}

namespace {

// Floats go into the JSON tree as already formatted numbers so the dump
// does not depend on the library's float printer.
ordered_json number(double x) {
  if (!std::isfinite(x)) return format_double(x);
  return ordered_json::parse(format_double(x));
}

ordered_json theta_json(const Rational& theta) {
  ordered_json j;
  j["exact"] = rational_json(theta);
  j["float"] = number(theta.to_double());
  return j;
}

}  // namespace

ordered_json to_json(const CandidateSet& set) {
  ordered_json j;
  j["rule"] = std::string(to_string(set.rule));
  j["a"] = rational_json(set.a);
  j["b"] = rational_json(set.b);
  j["size"] = set.size();
  j["cardinality_bound"] = rational_json(set.cardinality_bound);
  ordered_json points = ordered_json::array();
  for (const auto& p : set.points) {
    ordered_json point = theta_json(p.theta);
    point["provenance"] = std::string(to_string(p.provenance));
    points.push_back(std::move(point));
  }
  j["points"] = std::move(points);
  return j;
}

ordered_json to_json(const CoverageReport& report) {
  ordered_json j;
  j["n"] = report.n;
  j["min_coverage"] = number(report.min_coverage);
  j["argmin_theta"] = theta_json(report.argmin_theta);
  ordered_json evals = ordered_json::array();
  for (const auto& e : report.evaluations) {
    ordered_json item = theta_json(e.theta);
    item["coverage"] = number(e.coverage);
    evals.push_back(std::move(item));
  }
  j["evaluations"] = std::move(evals);
  j["candidate_set"] = to_json(report.candidate_set);
  return j;
}

ordered_json to_json(const SampleSizeResult& result, bool with_trace) {
  ordered_json j;
  j["found"] = result.n_min.has_value();
  j["n_min"] = result.n_min ? ordered_json(*result.n_min) : ordered_json(nullptr);
  j["coverage_at_n_min"] = number(result.coverage_at_n_min);
  j["argmin_theta"] = theta_json(result.argmin_theta);
  j["threshold"] = number(result.threshold);
  j["n_examined"] = result.trace.size();
  if (with_trace) {
    ordered_json trace = ordered_json::array();
    for (const auto& t : result.trace) {
      ordered_json item;
      item["n"] = t.n;
      item["min_coverage"] = number(t.min_coverage);
      item["argmin_theta"] = rational_json(t.argmin_theta);
      trace.push_back(std::move(item));
    }
    j["trace"] = std::move(trace);
  }
  return j;
}

void write_trace_csv(std::ostream& out, const SampleSizeResult& result) {
  out << "n,min_coverage,argmin_theta\n";
  for (const auto& t : result.trace) {
    out << t.n << ',' << format_double(t.min_coverage) << ',' << t.argmin_theta.to_string() << '\n';
  }
}

void write_evaluations_csv(std::ostream& out, const CoverageReport& report) {
  out << "theta_float,theta_exact,coverage\n";
  for (const auto& e : report.evaluations) {
    out << format_double(e.theta.to_double()) << ',' << e.theta.to_string() << ',' << format_double(e.coverage)
        << '\n';
  }
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
  out << "theta_exact,theta_float,coverage,is_candidate,provenance\n";
  for (const auto& p : curve) {
    out << p.theta.to_string() << ',' << format_double(p.theta.to_double()) << ',' << format_double(p.coverage)
        << ',' << (p.provenance ? 1 : 0) << ',' << (p.provenance ? to_string(*p.provenance) : "") << '\n';
  }
}

void write_candidates_csv(std::ostream& out, const CandidateSet& set) {
  out << "theta_exact,theta_float,provenance\n";
  for (const auto& p : set.points) {
    out << p.theta.to_string() << ',' << format_double(p.theta.to_double()) << ',' << to_string(p.provenance)
        << '\n';
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace covmin
