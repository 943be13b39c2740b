#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "covmin/candidates.hpp"
#include "covmin/coverage.hpp"
#include "covmin/errors.hpp"
#include "covmin/family.hpp"
#include "covmin/minimizer.hpp"
#include "covmin/oracle.hpp"
#include "covmin/parallel.hpp"
#include "covmin/report.hpp"
#include "covmin/search.hpp"

namespace py = pybind11;
using namespace covmin;

namespace {

// Exact inputs cross the boundary as strings ("0.05", "1/20", "3").
Rational R(const std::string& text) { return Rational::parse(text); }

// str, int or fractions.Fraction; floats are refused.
Rational R(const py::handle& value) {
  if (py::isinstance<py::float_>(value) || py::isinstance<py::bool_>(value)) {
    throw py::type_error("exact value expected (str, int or Fraction), got " + std::string(py::repr(value)));
  }
  return Rational::parse(std::string(py::str(value)));
}

FamilyPtr family(const std::string& id) { return find_family(id); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact minimum sample sizes by finite candidate-set reduction";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);

  py::class_<ErrorCriterion>(m, "Criterion")
      .def_static("absolute", [](const py::object& eps) { return ErrorCriterion::absolute(R(eps)); }, py::arg("eps"))
      .def_static("relative", [](const py::object& eps) { return ErrorCriterion::relative(R(eps)); }, py::arg("eps"))
      .def_static(
          "mixed", [](const py::object& a, const py::object& r) { return ErrorCriterion::mixed(R(a), R(r)); },
          py::arg("eps_a"), py::arg("eps_r"))
      .def("__repr__", &ErrorCriterion::describe);

  py::class_<EstimatorKind>(m, "Estimator")
      .def_static("unbiased", &EstimatorKind::unbiased)
      .def_static(
          "range_preserving",
          [](const py::object& a, const py::object& b) { return EstimatorKind::range_preserving(R(a), R(b)); },
          py::arg("a"), py::arg("b"))
      .def("__repr__", &EstimatorKind::describe);

  m.def("family_names", &family_names);
  m.def("thread_count", &thread_count);
  m.def("set_thread_count", &set_thread_count, py::arg("count"));

  m.def(
      "pmf", [](const std::string& fam, std::int64_t n, const std::string& theta, std::int64_t k) {
        return pmf(*family(fam), n, R(theta), k);
      },
      py::arg("family"), py::arg("n"), py::arg("theta"), py::arg("k"));
  m.def(
      "prob_range",
      [](const std::string& fam, std::int64_t n, std::int64_t k, std::int64_t l, const std::string& theta) {
        return prob_range(*family(fam), n, k, l, R(theta));
      },
      py::arg("family"), py::arg("n"), py::arg("k"), py::arg("l"), py::arg("theta"));
  m.def(
      "bounds_abs", [](std::int64_t n, const std::string& eps, const std::string& theta) {
        const Bounds b = bounds_abs(n, R(eps), R(theta));
        return py::make_tuple(b.g, b.h);
      },
      py::arg("n"), py::arg("eps"), py::arg("theta"));
  m.def(
      "bounds_rel", [](std::int64_t n, const std::string& eps, const std::string& theta) {
        const Bounds b = bounds_rel(n, R(eps), R(theta));
        return py::make_tuple(b.g, b.h);
      },
      py::arg("n"), py::arg("eps"), py::arg("theta"));

  m.def(
      "coverage",
      [](const std::string& fam, std::int64_t n, const ErrorCriterion& c, const EstimatorKind& e,
         const std::string& theta) { return coverage(*family(fam), n, c, e, R(theta)); },
      py::arg("family"), py::arg("n"), py::arg("criterion"), py::arg("estimator"), py::arg("theta"));
  m.def(
      "indicator_coverage",
      [](const std::string& fam, std::int64_t n, const ErrorCriterion& c, const EstimatorKind& e,
         const std::string& theta) { return oracle::indicator_coverage(*family(fam), n, c, e, R(theta)); },
      py::arg("family"), py::arg("n"), py::arg("criterion"), py::arg("estimator"), py::arg("theta"));

  // Structured results come back as JSON text; the Python layer decodes them.
  m.def(
      "candidates_json",
      [](std::int64_t n, const ErrorCriterion& c, const EstimatorKind& e, const std::string& a, const std::string& b) {
        return dump(to_json(candidates_for(n, c, e, R(a), R(b))));
      },
      py::arg("n"), py::arg("criterion"), py::arg("estimator"), py::arg("a"), py::arg("b"));
  m.def(
      "min_coverage_json",
      [](const std::string& fam, std::int64_t n, const ErrorCriterion& c, const EstimatorKind& e, const std::string& a,
         const std::string& b) {
        CoverageReport report;
        {
          py::gil_scoped_release release;
          report = min_coverage(*family(fam), n, c, e, R(a), R(b));
        }
        return dump(to_json(report));
      },
      py::arg("family"), py::arg("n"), py::arg("criterion"), py::arg("estimator"), py::arg("a"), py::arg("b"));
  m.def(
      "min_sample_size_json",
      [](const std::string& fam, const ErrorCriterion& c, const EstimatorKind& e, const std::string& a,
         const std::string& b, const std::string& delta, std::int64_t n_start, std::int64_t n_max, bool guard_band,
         bool trace) {
        const SampleSizeQuery query{.family = fam,
                                    .criterion = c,
                                    .estimator = e,
                                    .a = R(a),
                                    .b = R(b),
                                    .delta = R(delta),
                                    .n_start = n_start,
                                    .n_max = n_max,
                                    .guard_band = guard_band,
                                    .progress = {}};
        SampleSizeResult result;
        {
          py::gil_scoped_release release;
          result = min_sample_size(query);
        }
        return dump(to_json(result, trace));
      },
      py::arg("family"), py::arg("criterion"), py::arg("estimator"), py::arg("a"), py::arg("b"), py::arg("delta"),
      py::arg("n_start") = 2, py::arg("n_max") = 1'000'000, py::arg("guard_band") = false, py::arg("trace") = false);
  m.def(
      "grid_min_coverage",
      [](const std::string& fam, std::int64_t n, const ErrorCriterion& c, const EstimatorKind& e, const std::string& a,
         const std::string& b, const std::string& step, bool include_candidates) {
        oracle::GridMinimum g;
        {
          py::gil_scoped_release release;
          g = oracle::grid_min_coverage(*family(fam), n, c, e, R(a), R(b), oracle::GridSpec{R(step), include_candidates});
        }
        return py::make_tuple(g.min_coverage, g.argmin_theta.to_string(), g.points_scanned);
      },
      py::arg("family"), py::arg("n"), py::arg("criterion"), py::arg("estimator"), py::arg("a"), py::arg("b"),
      py::arg("step"), py::arg("include_candidates") = false);
}
