#include "qvlab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "qvlab/error.hpp"

namespace qvlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCriticalGuard = 1e-9;

double checked(double v) {
  if (!std::isfinite(v)) fail(errc::nonfinite, "integrand sample is not finite");
  return v;
}

void require_radius(double r) {
  if (!(r > 0.0 && r < 1.0))
    fail(errc::domain, "radius must lie in the open interval (0, 1)");
}

void guard_critical(const QFunction& f, double r) {
  for (double rc : f.singular().critical_radii)
    if (std::abs(r - rc) <= kCriticalGuard)
      fail(errc::critical_radius,
           "sphere integrand is only C^0 on a circle through a branch point");
}

double surface_constant(int m) {
  if (m == 2) return 2.0 * kPi;
  if (m == 3) return 4.0 * kPi;
  fail(errc::invalid_parameter, "only m = 2 and m = 3 spheres are supported");
}

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], by Newton
// iteration on the Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / pp;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

}  // namespace

void validate_quadrature(const QuadratureSpec& quad) {
  if (quad.circle_nodes < 16 || quad.circle_nodes % 2 != 0)
    fail(errc::bad_config, "circle_nodes must be even and at least 16");
  if (quad.max_circle_nodes < 2 * quad.circle_nodes)
    fail(errc::bad_config, "max_circle_nodes must allow at least one doubling");
  if (quad.sphere_polar < 4 || quad.sphere_azimuth < 8)
    fail(errc::bad_config, "sphere product rule is too coarse");
  if (quad.radial_depth < 2 || quad.radial_gl < 2)
    fail(errc::bad_config, "radial rule is too coarse");
  if (!(quad.abs_tol > 0.0) || !(quad.rel_tol > 0.0))
    fail(errc::bad_config, "tolerances must be positive");
}

void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) fail(errc::invalid_parameter, "Gauss-Legendre rule needs n >= 1");
  gauss_legendre(n, nodes, weights);
}

Integral integrate_circle(const std::function<double(double)>& g,
                          const QuadratureSpec& quad) {
  validate_quadrature(quad);
  long long n = quad.circle_nodes;
  double sum = 0.0;
  for (long long j = 0; j < n; ++j) sum += checked(g(2.0 * kPi * j / double(n)));
  double value = sum * (2.0 * kPi / double(n));
  while (true) {
    double odd = 0.0;
    for (long long j = 0; j < n; ++j)
      odd += checked(g(kPi * (2.0 * j + 1.0) / double(n)));
    const double refined = 0.5 * value + odd * (kPi / double(n));
    n *= 2;
    const double delta = std::abs(refined - value);
    value = refined;
    const double tol = std::max(quad.abs_tol, quad.rel_tol * std::abs(value));
    if (delta <= tol) return {value, n};
    if (n >= quad.max_circle_nodes) {
      if (delta <= 1000.0 * tol) return {value, n};  // soft accept at the cap
      fail(errc::quadrature_budget,
           "circle integral did not settle within the node cap");
    }
  }
}

Integral integrate_sphere(const std::function<double(const Vec&)>& g,
                          const QuadratureSpec& quad) {
  validate_quadrature(quad);
  std::vector<double> mu, wmu;
  gauss_legendre(quad.sphere_polar, mu, wmu);
  const int azimuth = quad.sphere_azimuth;
  double total = 0.0;
  for (int i = 0; i < quad.sphere_polar; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - mu[i] * mu[i]));
    double ring = 0.0;
    for (int j = 0; j < azimuth; ++j) {
      const double psi = 2.0 * kPi * j / double(azimuth);
      ring += checked(g({s * std::cos(psi), s * std::sin(psi), mu[i]}));
    }
    total += wmu[i] * ring * (2.0 * kPi / double(azimuth));
  }
  return {total, static_cast<long long>(quad.sphere_polar) * azimuth};
}

Integral integrate_graded(const std::function<double(double)>& g, double a,
                          double b, int depth_a, int depth_b, int gl_points) {
  if (!(b > a)) fail(errc::invalid_parameter, "graded integral needs b > a");
  if (depth_a < 1 || depth_b < 1 || gl_points < 2)
    fail(errc::invalid_parameter, "graded rule is too coarse");
  std::vector<double> xs, ws;
  gauss_legendre(gl_points, xs, ws);
  const double length = b - a;
  std::vector<double> brk;
  brk.reserve(depth_a + depth_b + 1);
  brk.push_back(a);
  for (int k = depth_a; k >= 1; --k) brk.push_back(a + std::ldexp(length, -k));
  for (int k = 2; k <= depth_b; ++k) brk.push_back(b - std::ldexp(length, -k));
  brk.push_back(b);
  double total = 0.0;
  long long evals = 0;
  for (std::size_t p = 1; p < brk.size(); ++p) {
    const double mid = 0.5 * (brk[p - 1] + brk[p]);
    const double half = 0.5 * (brk[p] - brk[p - 1]);
    double panel = 0.0;
    for (int i = 0; i < gl_points; ++i) panel += ws[i] * checked(g(mid + half * xs[i]));
    total += panel * half;
    evals += gl_points;
  }
  return {total, evals};
}

namespace {

// Surface integral over the boundary of B_r of a pointwise quantity, m = 2 or
// m = 3, Jacobian r^{m-1} included.
Integral sphere_integral(const QFunction& f, double r,
                         const std::function<double(const Vec&)>& quantity,
                         const QuadratureSpec& quad) {
  if (f.m() == 2) {
    auto res = integrate_circle(
        [&](double th) {
          return quantity({r * std::cos(th), r * std::sin(th)});
        },
        quad);
    res.value *= r;
    return res;
  }
  if (f.m() == 3) {
    auto res = integrate_sphere(
        [&](const Vec& u) {
          return quantity({r * u[0], r * u[1], r * u[2]});
        },
        quad);
    res.value *= r * r;
    return res;
  }
  fail(errc::invalid_parameter, "sphere quadrature supports m = 2 and m = 3 only");
}

Integral h_sphere_counted(const QFunction& f, double r, const QuadratureSpec& quad) {
  require_radius(r);
  guard_critical(f, r);
  return sphere_integral(f, r, [&](const Vec& x) { return f.abs_sq_at(x); }, quad);
}

Integral h_bar_counted(const QFunction& f, double r, const QuadratureSpec& quad) {
  Integral h = h_sphere_counted(f, r, quad);
  h.value /= surface_constant(f.m()) * std::pow(r, f.m() - 1);
  return h;
}

// integral over B_r(0) of |z - z*|^beta for a branch point z* with |z*| = d,
// in polar coordinates t = |z - z*|: the full-angle head (t below |r - d|,
// present when the branch point is interior) integrates exactly; the partial
// ring [|r-d|, r+d] carries the circle-circle intersection angle
// 2 acos((t^2 + d^2 - r^2) / (2 t d)) and is integrated on a graded mesh, its
// endpoints being square-root kinks.
Integral ball_power_integral(double d, double r, double beta,
                             const QuadratureSpec& quad) {
  if (d < 1e-14 * std::max(1.0, r))  // concentric: angle is 2*pi throughout
    return {2.0 * kPi * std::pow(r, beta + 2.0) / (beta + 2.0), 1};
  const double t0 = std::abs(r - d), t1 = r + d;
  double head = 0.0;
  if (d < r) head = 2.0 * kPi * std::pow(t0, beta + 2.0) / (beta + 2.0);
  auto ring = [&](double t) {
    const double c = std::clamp((t * t + d * d - r * r) / (2.0 * t * d), -1.0, 1.0);
    return std::pow(t, beta + 1.0) * 2.0 * std::acos(c);
  };
  Integral mid = integrate_graded(ring, t0, t1, quad.radial_depth,
                                  quad.radial_depth, quad.radial_gl);
  mid.value += head;
  return mid;
}

// Radial accumulation of sphere integrals: integral over [0, r] of
// s -> sphere_integral(quantity, s). Shallow grading; intended for smooth
// (harmonic or profile-based) integrands where the sphere integral is cheap.
Integral radial_accumulation(const QFunction& f, double r,
                             const std::function<double(const Vec&)>& quantity,
                             const QuadratureSpec& quad) {
  long long inner = 0;
  auto shell = [&](double s) {
    const Integral ring = sphere_integral(f, s, quantity, quad);
    inner += ring.nodes;
    return ring.value;
  };
  const int depth0 = std::min(quad.radial_depth, 30);  // toward the origin
  Integral res = integrate_graded(shell, 0.0, r, depth0, 4, quad.radial_gl);
  res.nodes = inner;
  return res;
}

Integral volume_counted(const QFunction& f, double r, const QuadratureSpec& quad) {
  require_radius(r);
  validate_quadrature(quad);
  if (f.kind() == QFunction::Kind::branched_roots) {
    // |f|^2 = q |a|^{2/q} |z - z*|^{2/q} exactly, for every branch count.
    const int q = f.root_q();
    const double pref = double(q) * std::pow(std::abs(f.root_a()), 2.0 / q);
    const double d = std::abs(-f.root_b() / f.root_a());
    Integral res = ball_power_integral(d, r, 2.0 / q, quad);
    res.value *= pref;
    return res;
  }
  return radial_accumulation(f, r, [&](const Vec& x) { return f.abs_sq_at(x); },
                             quad);
}

Integral dirichlet_counted(const QFunction& f, double r, const QuadratureSpec& quad) {
  require_radius(r);
  validate_quadrature(quad);
  switch (f.kind()) {
    case QFunction::Kind::branched_roots: {
      // |Df|^2 = (2/q) |a|^{2/q} |z - z*|^{2/q - 2} exactly.
      const int q = f.root_q();
      const double pref = (2.0 / q) * std::pow(std::abs(f.root_a()), 2.0 / q);
      const double d = std::abs(-f.root_b() / f.root_a());
      Integral res = ball_power_integral(d, r, 2.0 / q - 2.0, quad);
      res.value *= pref;
      return res;
    }
    case QFunction::Kind::homogeneous:
      fail(errc::no_gradient, "homogeneous profiles carry no gradient data");
    case QFunction::Kind::scalar:
      return radial_accumulation(
          f, r, [&](const Vec& x) { return f.grad_sq_at(x); }, quad);
  }
  fail(errc::invalid_parameter, "corrupt QFunction kind");
}

Integral frequency_counted(const QFunction& f, double r, const QuadratureSpec& quad) {
  const Integral h = h_sphere_counted(f, r, quad);
  if (h.value <= quad.abs_tol)
    fail(errc::frequency_undefined, "I(r) = r D(r)/H(r) needs H(r) > 0");
  const Integral d = dirichlet_counted(f, r, quad);
  return {r * d.value / h.value, h.nodes + d.nodes};
}

Integral h_n_counted(const QFunction& f, double order, double r,
                     const QuadratureSpec& quad) {
  if (!(order > 0.0) || !std::isfinite(order))
    fail(errc::invalid_parameter, "h_N needs N > 0");
  require_radius(r);
  return h_bar_counted(f, std::pow(r, order), quad);
}

Integral log_growth_counted(const QFunction& f, double t, const QuadratureSpec& quad) {
  if (!(t < 0.0)) fail(errc::domain, "a(t) = log Hbar(e^t) needs t < 0");
  Integral h = h_bar_counted(f, std::exp(t), quad);
  if (h.value <= quad.abs_tol)
    fail(errc::log_domain, "log of a vanishing growth function");
  h.value = std::log(h.value);
  return h;
}

Integral boundary_counted(const QFunction& f, double r,
                          double (QFunction::*member)(const Vec&) const,
                          const QuadratureSpec& quad) {
  require_radius(r);
  guard_critical(f, r);
  return sphere_integral(f, r, [&](const Vec& x) { return (f.*member)(x); }, quad);
}

Integral a_integral_counted(double rho, int order, const QuadratureSpec& quad) {
  if (!(rho >= 0.0 && rho < 1.0))
    fail(errc::domain, "A(rho) is sampled on [0, 1)");
  if (order < 0 || order > 3)
    fail(errc::invalid_parameter, "A derivatives are available for orders 0..3");
  if (order >= 1 && std::abs(rho - 0.5) <= kCriticalGuard)
    fail(errc::critical_radius,
         "A' integrands lose integrability at the rho = 1/2 kink");
  auto radicand = [rho](double th) {
    return 1.0 + 4.0 * rho * rho - 4.0 * rho * std::cos(th);
  };
  switch (order) {
    case 0:
      return integrate_circle([&](double th) { return std::sqrt(radicand(th)); },
                              quad);
    case 1:
      return integrate_circle(
          [&](double th) {
            return (4.0 * rho - 2.0 * std::cos(th)) / std::sqrt(radicand(th));
          },
          quad);
    case 2:
      return integrate_circle(
          [&](double th) {
            const double s = std::sin(th);
            return 4.0 * s * s * std::pow(radicand(th), -1.5);
          },
          quad);
    default:
      return integrate_circle(
          [&](double th) {
            const double s = std::sin(th);
            return -6.0 * s * s * std::pow(radicand(th), -2.5) *
                   (8.0 * rho - 4.0 * std::cos(th));
          },
          quad);
  }
}

}  // namespace

double h_sphere(const QFunction& f, double r, const QuadratureSpec& quad) {
  return h_sphere_counted(f, r, quad).value;
}

double h_bar(const QFunction& f, double r, const QuadratureSpec& quad) {
  return h_bar_counted(f, r, quad).value;
}

double dirichlet(const QFunction& f, double r, const QuadratureSpec& quad) {
  return dirichlet_counted(f, r, quad).value;
}

double frequency(const QFunction& f, double r, const QuadratureSpec& quad) {
  return frequency_counted(f, r, quad).value;
}

double h_n(const QFunction& f, double N, double r, const QuadratureSpec& quad) {
  return h_n_counted(f, N, r, quad).value;
}

double log_growth(const QFunction& f, double t, const QuadratureSpec& quad) {
  return log_growth_counted(f, t, quad).value;
}

double volume_abs_sq(const QFunction& f, double r, const QuadratureSpec& quad) {
  return volume_counted(f, r, quad).value;
}

double boundary_dirichlet(const QFunction& f, double r, const QuadratureSpec& quad) {
  return boundary_counted(f, r, &QFunction::grad_sq_at, quad).value;
}

double boundary_radial_sq(const QFunction& f, double r, const QuadratureSpec& quad) {
  return boundary_counted(f, r, &QFunction::radial_deriv_sq_at, quad).value;
}

double boundary_tangential_sq(const QFunction& f, double r,
                              const QuadratureSpec& quad) {
  return boundary_counted(f, r, &QFunction::tangential_deriv_sq_at, quad).value;
}

double boundary_radial_flux(const QFunction& f, double r,
                            const QuadratureSpec& quad) {
  return boundary_counted(f, r, &QFunction::radial_flux_at, quad).value;
}

double a_integral(double rho, int order, const QuadratureSpec& quad) {
  return a_integral_counted(rho, order, quad).value;
}

double lemma52_energy(double r, int nodes) {
  if (!(r > 0.0 && r < 1.0)) fail(errc::domain, "radius must lie in (0, 1)");
  if (nodes < 4) fail(errc::invalid_parameter, "need at least 4 trapezoid nodes");
  double sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double th = 2.0 * kPi * j / double(nodes);
    const double den = std::hypot(2.0 * r * std::cos(th) - 1.0,
                                  2.0 * r * std::sin(th));
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    sum += r * r / den;
  }
  return sum * (2.0 * kPi / double(nodes));
}

Integral eval_functional(const QFunction& f, const std::string& functional,
                         double x, const QuadratureSpec& quad) {
  if (functional == "H") return h_sphere_counted(f, x, quad);
  if (functional == "Hbar") return h_bar_counted(f, x, quad);
  if (functional == "D") return dirichlet_counted(f, x, quad);
  if (functional == "I") return frequency_counted(f, x, quad);
  if (functional == "a") return log_growth_counted(f, x, quad);
  if (functional.rfind("hN:", 0) == 0) {
    const std::string num = functional.substr(3);
    std::size_t used = 0;
    double order = 0.0;
    try {
      order = std::stod(num, &used);
    } catch (const std::exception&) {
      fail(errc::bad_config, "hN:<N> needs a numeric order");
    }
    if (used != num.size() || !(order > 0.0) || !std::isfinite(order))
      fail(errc::bad_config, "hN:<N> needs a positive numeric order");
    return h_n_counted(f, order, x, quad);
  }
  if (functional == "A") return a_integral_counted(x, 0, quad);
  if (functional == "A1") return a_integral_counted(x, 1, quad);
  if (functional == "A2") return a_integral_counted(x, 2, quad);
  if (functional == "A3") return a_integral_counted(x, 3, quad);
  fail(errc::unknown_functional, "unknown functional '" + functional + "'");
}

GrowthCurve growth_curve(const QFunction& f, const std::string& functional,
                         const std::vector<double>& grid,
                         const QuadratureSpec& quad) {
  if (grid.empty()) fail(errc::invalid_parameter, "empty sample grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      fail(errc::invalid_parameter, "sample grid must be strictly increasing");
  GrowthCurve curve;
  curve.functional = functional;
  curve.function_id = f.id();
  curve.grid = grid;
  curve.values.reserve(grid.size());
  curve.nodes.reserve(grid.size());
  for (double x : grid) {
    const Integral v = eval_functional(f, functional, x, quad);
    curve.values.push_back(v.value);
    curve.nodes.push_back(v.nodes);
  }
  return curve;
}

namespace {

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (char c : raw) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string to_csv(const GrowthCurve& curve) {
  std::string out = "r,value,functional,function_id,nodes\n";
  char buf[64];
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", curve.grid[i]);
    out += buf;
    out += ',';
    std::snprintf(buf, sizeof buf, "%.17g", curve.values[i]);
    out += buf;
    out += ',';
    out += csv_field(curve.functional);
    out += ',';
    out += csv_field(curve.function_id);
    out += ',';
    std::snprintf(buf, sizeof buf, "%lld", curve.nodes[i]);
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace qvlab
