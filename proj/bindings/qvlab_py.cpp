#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <optional>

#include "qvlab/calculus.hpp"
#include "qvlab/growth.hpp"
#include "qvlab/harmonic.hpp"
#include "qvlab/multipoint.hpp"
#include "qvlab/registry.hpp"
#include "qvlab/suites.hpp"

namespace py = pybind11;
using namespace qvlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

py::dict report_dict(const VerificationReport& rep) {
  py::dict d;
  d["claim_id"] = rep.claim_id;
  d["passed"] = rep.passed;
  d["tolerance"] = rep.tolerance;
  d["worst_margin"] = rep.worst_margin;
  d["witness"] = rep.witness;
  d["grid"] = rep.grid;
  d["expectation"] =
      rep.expectation == Expectation::must_hold ? "must_hold" : "must_fail";
  d["degraded"] = rep.degraded;
  return d;
}

CheckSpec make_check_spec(const std::string& claim_id, double tol, double step,
                          bool must_fail, double domain_lo, double domain_hi) {
  CheckSpec cs;
  cs.claim_id = claim_id;
  cs.tol = tol;
  cs.expectation = must_fail ? Expectation::must_fail : Expectation::must_hold;
  cs.dspec.step = step;
  cs.dspec.domain_lo = domain_lo;
  cs.dspec.domain_hi = domain_hi;
  return cs;
}

py::dict suite_dict(const SuiteResult& s) {
  py::dict d;
  d["name"] = s.name;
  d["passed"] = s.passed;
  d["passed_count"] = s.passed_count;
  d["summary"] = suite_summary(s);
  py::list reports;
  for (const VerificationReport& rep : s.reports) reports.append(report_dict(rep));
  d["reports"] = reports;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qvlab, m) {
  m.doc() = "quadrature laboratory for multivalued growth functionals";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "QvlabError");

  py::class_<QPoint>(m, "QPoint",
                     "Unordered Q-multiset of points, the metric-space value")
      .def(py::init<std::vector<Vec>>(), py::arg("points"))
      .def_property_readonly("q", &QPoint::q)
      .def_property_readonly("n", &QPoint::n)
      .def_property_readonly(
          "points", [](const QPoint& t) { return t.points(); })
      .def_static("zero", &QPoint::zero, py::arg("q"), py::arg("n"))
      .def("__repr__", &QPoint::to_text);

  m.def("metric_g", &metric_g, py::arg("t1"), py::arg("t2"),
        "Optimal-matching metric between two multisets");
  m.def("norm", &norm, py::arg("t"), "Distance to Q copies of the origin");
  m.def("center_of_mass", &center_of_mass, py::arg("t"));

  py::class_<QFunction>(m, "QFunction",
                        "Evaluable Q-valued map on the unit ball")
      .def_property_readonly("id", &QFunction::id)
      .def_property_readonly("q", &QFunction::q)
      .def_property_readonly("m", &QFunction::m)
      .def_property_readonly("n", &QFunction::n)
      .def("value", &QFunction::value, py::arg("x"))
      .def("abs_sq_at", &QFunction::abs_sq_at, py::arg("x"))
      .def("critical_radii",
           [](const QFunction& f) { return f.singular().critical_radii; })
      .def("__repr__", [](const QFunction& f) {
        return "<QFunction '" + f.id() + "'>";
      });

  m.def("make_function", &make_function, py::arg("id"),
        "Registry ids: cube-root | dellis | roots:q,a,b | "
        "homog:alpha,profile | harm:m=2;terms | harm:m=3;terms");

  // growth functionals at the default quadrature budget
  m.def("h_sphere", [](const QFunction& f, double r) { return h_sphere(f, r); },
        py::arg("f"), py::arg("r"));
  m.def("h_bar", [](const QFunction& f, double r) { return h_bar(f, r); },
        py::arg("f"), py::arg("r"));
  m.def("dirichlet",
        [](const QFunction& f, double r) { return dirichlet(f, r); },
        py::arg("f"), py::arg("r"));
  m.def("frequency",
        [](const QFunction& f, double r) { return frequency(f, r); },
        py::arg("f"), py::arg("r"));
  m.def("h_n",
        [](const QFunction& f, double n, double r) { return h_n(f, n, r); },
        py::arg("f"), py::arg("n"), py::arg("r"));
  m.def("log_growth",
        [](const QFunction& f, double t) { return log_growth(f, t); },
        py::arg("f"), py::arg("t"));
  m.def("volume_abs_sq",
        [](const QFunction& f, double r) { return volume_abs_sq(f, r); },
        py::arg("f"), py::arg("r"));
  m.def("a_integral", [](double rho, int order) { return a_integral(rho, order); },
        py::arg("rho"), py::arg("order"));
  m.def("lemma52_energy", &lemma52_energy, py::arg("r"), py::arg("nodes"));

  m.def(
      "growth_curve",
      [](const std::string& id, const std::string& functional,
         const std::vector<double>& grid) {
        const GrowthCurve c = growth_curve(make_function(id), functional, grid);
        py::dict d;
        d["functional"] = c.functional;
        d["function_id"] = c.function_id;
        d["grid"] = c.grid;
        d["values"] = c.values;
        d["nodes"] = c.nodes;
        return d;
      },
      py::arg("id"), py::arg("functional"), py::arg("grid"));
  m.def(
      "growth_csv",
      [](const std::string& id, const std::string& functional,
         const std::vector<double>& grid) {
        return to_csv(growth_curve(make_function(id), functional, grid));
      },
      py::arg("id"), py::arg("functional"), py::arg("grid"),
      "Deterministic CSV, the same bytes the CLI emits");

  m.def(
      "derivative",
      [](const Curve& g, double x, int order, double step, int max_levels,
         double domain_lo, double domain_hi) {
        DerivativeSpec ds;
        ds.step = step;
        ds.max_levels = max_levels;
        ds.domain_lo = domain_lo;
        ds.domain_hi = domain_hi;
        const DerivativeEstimate est = derivative(g, x, order, ds);
        py::dict d;
        d["order"] = est.order;
        d["value"] = est.value;
        d["step"] = est.step;
        d["richardson_levels"] = est.richardson_levels;
        d["error_estimate"] = est.error_estimate;
        d["reliable"] = est.reliable;
        return d;
      },
      py::arg("g"), py::arg("x"), py::arg("order") = 1, py::arg("step") = 0.0,
      py::arg("max_levels") = 10, py::arg("domain_lo") = -kInf,
      py::arg("domain_hi") = kInf,
      "Richardson-extrapolated central difference with an error estimate");

  m.def(
      "check_monotone",
      [](const Curve& g, const std::vector<double>& grid, double tol,
         const std::string& claim_id, double step, bool must_fail,
         double domain_lo, double domain_hi) {
        return report_dict(check_monotone(
            g, grid,
            make_check_spec(claim_id, tol, step, must_fail, domain_lo,
                            domain_hi)));
      },
      py::arg("g"), py::arg("grid"), py::arg("tol") = 1e-7,
      py::arg("claim_id") = "unnamed", py::arg("step") = 0.0,
      py::arg("must_fail") = false, py::arg("domain_lo") = -kInf,
      py::arg("domain_hi") = kInf);
  m.def(
      "check_convex",
      [](const Curve& g, const std::vector<double>& grid, double tol,
         const std::string& claim_id, double step, bool must_fail,
         double domain_lo, double domain_hi) {
        return report_dict(check_convex(
            g, grid,
            make_check_spec(claim_id, tol, step, must_fail, domain_lo,
                            domain_hi)));
      },
      py::arg("g"), py::arg("grid"), py::arg("tol") = 1e-7,
      py::arg("claim_id") = "unnamed", py::arg("step") = 0.0,
      py::arg("must_fail") = false, py::arg("domain_lo") = -kInf,
      py::arg("domain_hi") = kInf);
  m.def(
      "check_abs_monotonic",
      [](const Curve& g, int max_order, const std::vector<double>& grid,
         double tol, const std::string& claim_id, double step, bool must_fail,
         double domain_lo, double domain_hi) {
        return report_dict(check_abs_monotonic(
            g, max_order, grid,
            make_check_spec(claim_id, tol, step, must_fail, domain_lo,
                            domain_hi)));
      },
      py::arg("g"), py::arg("max_order"), py::arg("grid"),
      py::arg("tol") = 1e-7, py::arg("claim_id") = "unnamed",
      py::arg("step") = 0.0, py::arg("must_fail") = false,
      py::arg("domain_lo") = -kInf, py::arg("domain_hi") = kInf);

  m.def("suite_names", &suite_names, "Canonical verification-suite order");
  m.def(
      "run_suite",
      [](const std::string& name, std::optional<double> tol) {
        SuiteOptions so;
        so.tol = tol;
        return suite_dict(run_suite(name, so));
      },
      py::arg("name"), py::arg("tol") = py::none());
  m.def(
      "suite_json",
      [](const std::string& name, std::optional<double> tol) {
        SuiteOptions so;
        so.tol = tol;
        return suite_to_json(run_suite(name, so)).dump(2);
      },
      py::arg("name"), py::arg("tol") = py::none(),
      "The same JSON array the CLI emits for one suite");

  m.def(
      "h_bar_closed_form",
      [](int dim, const std::string& terms) {
        return h_bar_closed_form(parse_harmonic_combo(dim, terms));
      },
      py::arg("m"), py::arg("terms"),
      "Even-polynomial coefficients of the mean growth of a harmonic combo");
}
