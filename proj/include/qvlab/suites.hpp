#ifndef QVLAB_SUITES_HPP
#define QVLAB_SUITES_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qvlab/calculus.hpp"
#include "qvlab/growth.hpp"

namespace qvlab {

struct SuiteOptions {
  std::optional<double> tol;          // replaces every claim's default tol
  std::optional<QuadratureSpec> quad; // replaces the base quadrature spec
};

struct SuiteResult {
  std::string name;
  std::vector<VerificationReport> reports;
  int passed_count = 0;
  bool passed = false;  // every claim matched its expectation
};

/// The registered verification suites, in canonical order.
std::vector<std::string> suite_names();

/// Runs one suite. A claim that throws is recorded as a failed report
/// (worst_margin -inf, empty grid) and the remaining claims still run.
/// Unknown names raise errc::unknown_suite.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt = {});

/// JSON array of the per-claim reports, insertion-ordered and deterministic.
nlohmann::ordered_json suite_to_json(const SuiteResult& result);

/// "PASSED k/N".
std::string suite_summary(const SuiteResult& result);

}  // namespace qvlab

#endif
