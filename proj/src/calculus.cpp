#include "qvlab/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace qvlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int stencil_halfwidth(int order) { return order <= 2 ? 1 : (order <= 4 ? 2 : 3); }

double auto_step(double x, int order) {
  const double base = std::max(std::abs(x) * 1e-3, 1e-4);
  if (order <= 1) return base;
  // Orders >= 2 amplify evaluation noise like h^-order; the base step must
  // widen with the order or rounding alone destroys the estimate.
  static constexpr double kWide[] = {0.005, 0.02, 0.05, 0.10, 0.25};
  return std::max(base, kWide[order - 2] * std::max(1.0, std::abs(x)));
}

double central_diff(const Curve& g, double x, int order, double h) {
  switch (order) {
    case 1:
      return (g(x + h) - g(x - h)) / (2.0 * h);
    case 2:
      return (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
    case 3:
      return (g(x + 2 * h) - 2.0 * g(x + h) + 2.0 * g(x - h) - g(x - 2 * h)) /
             (2.0 * h * h * h);
    case 4:
      return (g(x + 2 * h) - 4.0 * g(x + h) + 6.0 * g(x) - 4.0 * g(x - h) +
              g(x - 2 * h)) /
             (h * h * h * h);
    case 5:
      return (g(x + 3 * h) - 4.0 * g(x + 2 * h) + 5.0 * g(x + h) - 5.0 * g(x - h) +
              4.0 * g(x - 2 * h) - g(x - 3 * h)) /
             (2.0 * std::pow(h, 5));
    default:
      return (g(x + 3 * h) - 6.0 * g(x + 2 * h) + 15.0 * g(x + h) - 20.0 * g(x) +
              15.0 * g(x - h) - 6.0 * g(x - 2 * h) + g(x - 3 * h)) /
             std::pow(h, 6);
  }
}

void validate_grid(const std::vector<double>& grid, std::size_t min_size) {
  if (grid.size() < min_size)
    fail(errc::invalid_parameter, "grid has too few points for this check");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]))
      fail(errc::invalid_parameter, "grid contains a non-finite point");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      fail(errc::invalid_parameter, "grid must be strictly increasing");
  }
}

void validate_check_spec(const CheckSpec& spec) {
  if (!(spec.tol > 0.0) || !std::isfinite(spec.tol))
    fail(errc::bad_config, "check tolerance must be finite and positive");
}

double eval_checked(const Curve& g, double x) {
  const double v = g(x);
  if (!std::isfinite(v))
    fail(errc::nonfinite, "curve returned a non-finite value at " + std::to_string(x));
  return v;
}

void finalize(VerificationReport& rep, const CheckSpec& spec) {
  rep.tolerance = spec.expectation == Expectation::must_fail ? 10.0 * spec.tol : spec.tol;
  rep.passed = spec.expectation == Expectation::must_fail
                   ? (rep.worst_margin < -rep.tolerance)
                   : (rep.worst_margin >= -rep.tolerance);
}

}  // namespace

DerivativeEstimate derivative(const Curve& g, double x, int order,
                              const DerivativeSpec& spec) {
  if (!g) fail(errc::invalid_parameter, "derivative: curve callable is empty");
  if (order < 0 || order > 6)
    fail(errc::invalid_parameter, "derivative: order must be in 0..6");
  if (!std::isfinite(x)) fail(errc::domain, "derivative: point is not finite");
  if (spec.max_levels < 3 || spec.max_levels > 16)
    fail(errc::bad_config, "derivative: max_levels must be in 3..16");
  if (!(spec.step >= 0.0) || !std::isfinite(spec.step))
    fail(errc::bad_config, "derivative: step must be finite and nonnegative");

  const double h0 = spec.step > 0.0 ? spec.step : auto_step(x, order);
  if (order == 0) {
    return {0, eval_checked(g, x), h0, 0, 0.0, true};
  }
  const int w = stencil_halfwidth(order);
  if (x - w * h0 < spec.domain_lo || x + w * h0 > spec.domain_hi)
    fail(errc::domain, "derivative: difference stencil leaves the domain");

  DerivativeEstimate out;
  out.order = order;
  out.step = h0;
  out.error_estimate = kInf;

  // t[i][j]: base step h0/2^i after j Richardson levels (error ratio 4/level).
  std::vector<std::vector<double>> t(static_cast<std::size_t>(spec.max_levels));
  t[0] = {central_diff(g, x, order, h0)};
  if (!std::isfinite(t[0][0]))
    fail(errc::nonfinite, "derivative: stencil produced a non-finite value");
  out.value = t[0][0];

  double best_err = kInf;
  bool have = false;
  double h = h0;
  for (int i = 1; i < spec.max_levels; ++i) {
    h *= 0.5;
    t[i].assign(static_cast<std::size_t>(i) + 1, 0.0);
    t[i][0] = central_diff(g, x, order, h);
    if (!std::isfinite(t[i][0]))
      fail(errc::nonfinite, "derivative: stencil produced a non-finite value");
    double fac = 4.0;
    for (int j = 1; j <= i; ++j) {
      t[i][j] = (fac * t[i][j - 1] - t[i - 1][j - 1]) / (fac - 1.0);
      fac *= 4.0;
      const double errt = std::max(std::abs(t[i][j] - t[i][j - 1]),
                                   std::abs(t[i][j] - t[i - 1][j - 1]));
      if (!have || errt <= best_err) {
        best_err = errt;
        out.value = t[i][j];
        out.richardson_levels = j;
        have = true;
      }
    }
    // Diagonal deterioration: halving stopped helping, noise regime reached.
    if (i >= 2 && have && std::abs(t[i][i] - t[i - 1][i - 1]) >= 4.0 * best_err) break;
  }
  out.error_estimate = have ? best_err : kInf;
  out.reliable = have && best_err <= 1e-3 * std::max(1.0, std::abs(out.value));
  return out;
}

VerificationReport check_monotone(const Curve& g, const std::vector<double>& grid,
                                  const CheckSpec& spec) {
  if (!g) fail(errc::invalid_parameter, "check_monotone: curve callable is empty");
  validate_check_spec(spec);
  validate_grid(grid, 2);

  VerificationReport rep;
  rep.claim_id = spec.claim_id;
  rep.grid = grid;
  rep.expectation = spec.expectation;
  double worst = kInf;
  double witness = grid.front();

  for (double r : grid) {
    const DerivativeEstimate d = derivative(g, r, 1, spec.dspec);
    if (!d.reliable) {
      rep.degraded = true;
      continue;
    }
    if (d.value < worst) {
      worst = d.value;
      witness = r;
    }
  }

  // Derivative-free backstop: raw sample monotonicity.
  std::vector<double> gv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) gv[i] = eval_checked(g, grid[i]);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double m = gv[i + 1] - gv[i];
    if (m < worst) {
      worst = m;
      witness = grid[i + 1];
    }
  }

  rep.worst_margin = worst;
  rep.witness = witness;
  finalize(rep, spec);
  return rep;
}

VerificationReport check_convex(const Curve& g, const std::vector<double>& grid,
                                const CheckSpec& spec) {
  if (!g) fail(errc::invalid_parameter, "check_convex: curve callable is empty");
  validate_check_spec(spec);
  validate_grid(grid, 3);

  VerificationReport rep;
  rep.claim_id = spec.claim_id;
  rep.grid = grid;
  rep.expectation = spec.expectation;
  double worst = kInf;
  double witness = grid.front();

  for (double r : grid) {
    const DerivativeEstimate d = derivative(g, r, 2, spec.dspec);
    if (!d.reliable) {
      rep.degraded = true;
      continue;
    }
    if (d.value < worst) {
      worst = d.value;
      witness = r;
    }
  }

  // Midpoint convexity over every grid pair; this is the sample test the
  // verdict rests on when second derivatives are noisy.
  std::vector<double> gv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) gv[i] = eval_checked(g, grid[i]);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double mid = 0.5 * (grid[i] + grid[j]);
      const double m = 0.5 * (gv[i] + gv[j]) - eval_checked(g, mid);
      if (m < worst) {
        worst = m;
        witness = mid;
      }
    }
  }

  rep.worst_margin = worst;
  rep.witness = witness;
  finalize(rep, spec);
  return rep;
}

VerificationReport check_abs_monotonic(const Curve& g, int max_order,
                                       const std::vector<double>& grid,
                                       const CheckSpec& spec) {
  if (!g) fail(errc::invalid_parameter, "check_abs_monotonic: curve callable is empty");
  if (max_order < 0 || max_order > 6)
    fail(errc::invalid_parameter, "check_abs_monotonic: max_order must be in 0..6");
  validate_check_spec(spec);
  validate_grid(grid, 1);

  VerificationReport rep;
  rep.claim_id = spec.claim_id;
  rep.grid = grid;
  rep.expectation = spec.expectation;
  double worst = kInf;
  double witness = grid.front();

  for (int order = 0; order <= max_order; ++order) {
    for (double r : grid) {
      const DerivativeEstimate d = derivative(g, r, order, spec.dspec);
      if (!d.reliable) {
        rep.degraded = true;
        continue;
      }
      if (d.value < worst) {
        worst = d.value;
        witness = r;
      }
    }
  }

  rep.worst_margin = worst;
  rep.witness = witness;
  finalize(rep, spec);
  return rep;
}

VerificationReport check_homogeneity_bound(double alpha, int q, int m,
                                           std::optional<double> alpha_m,
                                           const CheckSpec& spec) {
  validate_check_spec(spec);
  if (!std::isfinite(alpha)) fail(errc::domain, "homogeneity exponent is not finite");
  double beta = 0.0;
  if (m == 2) {
    if (q < 1) fail(errc::invalid_parameter, "homogeneity bound needs q >= 1");
    beta = 1.0 / static_cast<double>(q);
  } else if (m > 2) {
    if (!alpha_m.has_value())
      fail(errc::unconfigured_constant,
           "the dimensional constant alpha_m must be configured for m > 2");
    if (!(*alpha_m > 0.0) || !std::isfinite(*alpha_m))
      fail(errc::invalid_parameter, "alpha_m must be finite and positive");
    beta = 1.0 / *alpha_m;
  } else {
    fail(errc::invalid_parameter, "homogeneity bound needs domain dimension m >= 2");
  }

  VerificationReport rep;
  rep.claim_id = spec.claim_id;
  rep.grid = {alpha};
  rep.expectation = spec.expectation;
  rep.worst_margin = alpha - beta;
  rep.witness = alpha;
  finalize(rep, spec);
  return rep;
}

double fit_loglog_slope(const Curve& g, const std::vector<double>& grid) {
  if (!g) fail(errc::invalid_parameter, "fit_loglog_slope: curve callable is empty");
  validate_grid(grid, 2);
  if (!(grid.front() > 0.0))
    fail(errc::domain, "log-log fit needs positive abscissae");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(grid.size());
  for (double r : grid) {
    const double v = eval_checked(g, r);
    if (!(v > 0.0)) fail(errc::log_domain, "log-log fit needs positive curve values");
    const double x = std::log(r), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0))
    fail(errc::invalid_parameter, "log-log fit abscissae are degenerate");
  const double slope = (n * sxy - sx * sy) / denom;
  if (!std::isfinite(slope)) fail(errc::nonfinite, "log-log fit slope is not finite");
  return slope;
}

nlohmann::ordered_json report_to_json(const VerificationReport& rep) {
  nlohmann::ordered_json j;
  j["claim_id"] = rep.claim_id;
  j["passed"] = rep.passed;
  j["tolerance"] = rep.tolerance;
  j["worst_margin"] = rep.worst_margin;
  j["witness"] = rep.witness;
  j["grid_size"] = rep.grid.size();
  j["expectation"] = rep.expectation == Expectation::must_fail ? "must_fail" : "must_hold";
  return j;
}

}  // namespace qvlab
