#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qvlab/error.hpp"

namespace qvlab {

// Scalar curve r -> g(r); the subject of every derivative-based verdict.
using Curve = std::function<double(double)>;

struct DerivativeSpec {
  // Base stencil step. 0 selects max(|x|*1e-3, 1e-4) for orders <= 2 and an
  // order-scaled wider step for orders >= 3, because evaluation noise in a
  // central difference is amplified like h^-order.
  double step = 0.0;
  int max_levels = 10;  // Richardson tableau depth over halved steps
  double domain_lo = -std::numeric_limits<double>::infinity();
  double domain_hi = std::numeric_limits<double>::infinity();
};

struct DerivativeEstimate {
  int order = 0;
  double value = 0.0;
  double step = 0.0;  // base step actually used
  int richardson_levels = 0;
  double error_estimate = 0.0;
  bool reliable = true;
};

// Central differences with Richardson extrapolation; the returned value is
// the tableau entry with the smallest two-sided error estimate, and the
// tableau stops once its diagonal deteriorates (noise regime reached).
DerivativeEstimate derivative(const Curve& g, double x, int order,
                              const DerivativeSpec& spec = {});

enum class Expectation { must_hold, must_fail };

struct VerificationReport {
  std::string claim_id;
  std::vector<double> grid;
  double tolerance = 0.0;  // effective: 10x the requested tol for must_fail
  bool passed = false;
  double worst_margin = 0.0;
  double witness = 0.0;  // grid point (or midpoint) achieving worst_margin
  Expectation expectation = Expectation::must_hold;
  bool degraded = false;  // an unreliable derivative was dropped; sample
                          // backstop carried the verdict at that point
};

struct CheckSpec {
  std::string claim_id = "unnamed";
  double tol = 1e-7;
  Expectation expectation = Expectation::must_hold;
  DerivativeSpec dspec{};
};

// Margins are signed slacks: a must_hold claim passes when the worst margin
// stays above -tolerance; a must_fail claim passes when the worst margin
// undershoots -tolerance (tolerance already widened 10x), so counterexample
// detection is itself robust to noise.
VerificationReport check_monotone(const Curve& g, const std::vector<double>& grid,
                                  const CheckSpec& spec = {});
VerificationReport check_convex(const Curve& g, const std::vector<double>& grid,
                                const CheckSpec& spec = {});
VerificationReport check_abs_monotonic(const Curve& g, int max_order,
                                       const std::vector<double>& grid,
                                       const CheckSpec& spec = {});
VerificationReport check_homogeneity_bound(double alpha, int q, int m,
                                           std::optional<double> alpha_m = std::nullopt,
                                           const CheckSpec& spec = {});

// Least-squares slope of log g(r) against log r; reads off the homogeneity
// exponent 2*alpha from power-law growth curves.
double fit_loglog_slope(const Curve& g, const std::vector<double>& grid);

nlohmann::ordered_json report_to_json(const VerificationReport& rep);

}  // namespace qvlab
