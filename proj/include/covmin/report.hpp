#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "covmin/candidates.hpp"
#include "covmin/minimizer.hpp"
#include "covmin/rational.hpp"
#include "covmin/search.hpp"

namespace covmin {

// Serialization shared by the CLI and the Python bindings. Exact values are
// written as "num/den" strings; every float is printed with %.17g so that
// output is byte-stable and round-trips.

std::string format_double(double x);

nlohmann::ordered_json rational_json(const Rational& r);
/// Accepts "num/den" strings and plain integers.
Rational rational_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const CandidateSet& set);
nlohmann::ordered_json to_json(const CoverageReport& report);
nlohmann::ordered_json to_json(const SampleSizeResult& result, bool with_trace);

/// Columns: n,min_coverage,argmin_theta
void write_trace_csv(std::ostream& out, const SampleSizeResult& result);
/// Columns: theta_float,theta_exact,coverage
void write_evaluations_csv(std::ostream& out, const CoverageReport& report);
/// Columns: theta_exact,theta_float,coverage,is_candidate,provenance
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);
/// Columns: theta_exact,theta_float,provenance
void write_candidates_csv(std::ostream& out, const CandidateSet& set);

/// JSON text with two-space indent and a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace covmin
