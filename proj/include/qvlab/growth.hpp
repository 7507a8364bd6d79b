#ifndef QVLAB_GROWTH_HPP
#define QVLAB_GROWTH_HPP

#include <functional>
#include <string>
#include <vector>

#include "qvlab/qfun.hpp"

namespace qvlab {

/// Knobs for the three quadrature engines. Circle integrals use the periodic
/// trapezoid rule with node doubling (spectral on smooth integrands); sphere
/// integrals a Gauss-Legendre x trapezoid product rule; radial integrals
/// composite Gauss-Legendre on meshes graded (ratio 2) toward singular
/// endpoints.
struct QuadratureSpec {
  int circle_nodes = 512;          // initial trapezoid node count, even
  int max_circle_nodes = 1 << 20;  // doubling cap
  int sphere_polar = 24;           // Gauss-Legendre points in cos(polar)
  int sphere_azimuth = 48;         // trapezoid nodes in azimuth
  int radial_depth = 44;           // graded panels per endpoint
  int radial_gl = 24;              // Gauss-Legendre points per radial panel
  double abs_tol = 1e-12;
  double rel_tol = 1e-11;
};

void validate_quadrature(const QuadratureSpec& quad);

/// A quadrature result together with the number of integrand evaluations
/// behind it (reported in curve output).
struct Integral {
  double value = 0.0;
  long long nodes = 0;
};

/// Integral of g over [0, 2*pi), adaptive node doubling. Fails with
/// quadrature_budget if the doubling estimate has not settled at the node cap
/// (a soft window of 1000x the tolerance absorbs C^0 kinks sitting on nodes),
/// and with nonfinite if any sample is NaN/inf.
Integral integrate_circle(const std::function<double(double)>& g,
                          const QuadratureSpec& quad);

/// Integral of g over the unit sphere S^2 (fixed product rule); g receives
/// unit vectors in R^3.
Integral integrate_sphere(const std::function<double(const Vec&)>& g,
                          const QuadratureSpec& quad);

/// Composite Gauss-Legendre over [a, b] with panels halving geometrically
/// toward each endpoint (depth_a panels into a, depth_b into b). Endpoints are
/// never sampled, so integrable endpoint singularities are admissible.
// Gauss-Legendre nodes and weights on [-1, 1], n >= 1.
void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights);

Integral integrate_graded(const std::function<double(double)>& g, double a,
                          double b, int depth_a, int depth_b, int gl_points);

/// H(r) = integral of |f|^2 over the sphere of radius r (surface measure).
/// Refuses circles within 1e-9 of a critical radius: the integrand is only
/// C^0 there.
double h_sphere(const QFunction& f, double r, const QuadratureSpec& quad = {});

/// Hbar(r) = H(r) / (C_m r^{m-1}), C_2 = 2*pi, C_3 = 4*pi.
double h_bar(const QFunction& f, double r, const QuadratureSpec& quad = {});

/// D(r) = integral of |Df|^2 over the ball B_r. Branched families reduce to a
/// radial power-law integral about the branch point (exact full-angle head
/// plus a graded middle); scalar families accumulate sphere integrals
/// radially. Homogeneous profiles carry no gradient and are refused.
double dirichlet(const QFunction& f, double r, const QuadratureSpec& quad = {});

/// I(r) = r D(r) / H(r); undefined (error) when H(r) <= abs_tol.
double frequency(const QFunction& f, double r, const QuadratureSpec& quad = {});

/// Hbar evaluated at r^N.
double h_n(const QFunction& f, double N, double r, const QuadratureSpec& quad = {});

/// a(t) = log Hbar(e^t) for t < 0; log_domain error if Hbar vanishes.
double log_growth(const QFunction& f, double t, const QuadratureSpec& quad = {});

/// Integral of |f|^2 over the solid ball B_r.
double volume_abs_sq(const QFunction& f, double r, const QuadratureSpec& quad = {});

/// Sphere integrals of the pointwise derivative quantities over the boundary
/// of B_r (surface measure included). Same critical-radius guard as h_sphere.
double boundary_dirichlet(const QFunction& f, double r, const QuadratureSpec& quad = {});
double boundary_radial_sq(const QFunction& f, double r, const QuadratureSpec& quad = {});
double boundary_tangential_sq(const QFunction& f, double r, const QuadratureSpec& quad = {});
double boundary_radial_flux(const QFunction& f, double r, const QuadratureSpec& quad = {});

/// A(rho) = integral over [0,2*pi) of sqrt(1 + 4 rho^2 - 4 rho cos(theta))
/// and its first three rho-derivatives, each by quadrature of the explicit
/// integrand (never finite differences). Orders >= 1 are refused within 1e-9
/// of the kink at rho = 1/2.
double a_integral(double rho, int order, const QuadratureSpec& quad = {});

/// Fixed-node trapezoid estimate (nodes equally spaced, theta = 0 included)
/// of the boundary energy integral of h(theta) = sqrt(2 r e^{i theta} - 1),
/// i.e. of |h'(theta)|^2 = r^2 / |2 r e^{i theta} - 1|. Returns +inf when a
/// node lands on the zero of the radicand (r = 1/2, theta = 0); no adaptivity,
/// so divergence shows up as growth in the node count.
double lemma52_energy(double r, int nodes);

/// Functional dispatch by name: H, Hbar, D, I, hN:<N>, a (argument t < 0),
/// and A, A1, A2, A3 for a_integral orders 0..3 (these ignore f).
Integral eval_functional(const QFunction& f, const std::string& functional,
                         double x, const QuadratureSpec& quad);

/// One scalar functional sampled over a grid, with per-point node counts.
struct GrowthCurve {
  std::string functional;
  std::string function_id;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<long long> nodes;
};

GrowthCurve growth_curve(const QFunction& f, const std::string& functional,
                         const std::vector<double>& grid,
                         const QuadratureSpec& quad = {});

/// CSV with header "r,value,functional,function_id,nodes", 17 significant
/// digits, RFC-style quoting for fields containing commas. Byte-deterministic.
std::string to_csv(const GrowthCurve& curve);

}  // namespace qvlab

#endif
