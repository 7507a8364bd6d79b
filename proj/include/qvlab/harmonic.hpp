#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qvlab/calculus.hpp"
#include "qvlab/growth.hpp"
#include "qvlab/qfun.hpp"

namespace qvlab {

// One basis term c * b_{degree,index}. Planar basis (m = 2): index 0 is
// Re z^degree, index 1 is Im z^degree (degree 0 has only index 0). Solid
// basis (m = 3): real solid harmonics of the given degree l, index = l + m
// for m in -l..l, unnormalized monomial forms.
struct HarmonicTerm {
  int degree = 0;
  int index = 0;
  double coef = 0.0;
};

struct HarmonicCombo {
  int m = 2;
  std::vector<HarmonicTerm> terms;
};

int max_degree(int m);               // 6 for m = 2, 4 for m = 3
int basis_size(int m, int degree);   // terms available at that degree

// Validates dimension, degree caps, basis indices, and that the combination
// is not identically zero.
HarmonicCombo make_combo(int m, std::vector<HarmonicTerm> terms);

double eval(const HarmonicCombo& u, const Vec& x);
Vec gradient(const HarmonicCombo& u, const Vec& x);
// Analytic Laplacian from the monomial representation; vanishes to rounding
// on every basis term.
double laplacian(const HarmonicCombo& u, const Vec& x);

// Q = 1 scalar wrapper with the analytic gradient attached.
QFunction to_qfunction(const HarmonicCombo& u);

// Even-polynomial coefficients of the averaged growth function:
// h_bar(r) = sum_k coeffs[k] r^{2k}. Basis orthogonality on the sphere makes
// every coefficient a nonnegative multiple of a squared coefficient, so
// absolute monotonicity is manifest; this is the oracle for the quadrature
// path. Cross moments are recomputed and must vanish, else
// errc::internal_inconsistency.
std::vector<double> h_bar_closed_form(const HarmonicCombo& u);
double eval_even_poly(const std::vector<double>& coeffs, double r);

struct WeightSpec {
  std::string name;
  std::function<double(double)> phi;        // smooth, nondecreasing on [0,1]
  std::function<double(double)> phi_prime;
};

// Validates that phi_prime >= 0 on a 1000-point sample of [0,1].
WeightSpec make_weight(std::string name, std::function<double(double)> phi,
                       std::function<double(double)> phi_prime);
WeightSpec weight_identity();    // phi(t) = t
WeightSpec weight_smoothstep();  // phi(t) = 3t^2 - 2t^3

// d(r) = integral over the unit ball of u^2(rx) phi'(|x|^2) dx.
double weighted_d(const HarmonicCombo& u, const WeightSpec& w, double r,
                  const QuadratureSpec& quad = {});

// Right-hand side of the derivative identity
//   d'(r) = r * integral over B_1 of |grad u|^2(rx) (phi(1) - phi(|x|^2)) dx,
// normalized with the standard identity Laplacian(u^2) = 2 |grad u|^2 (no
// extra 1/2 factor).
double weighted_d_prime_rhs(const HarmonicCombo& u, const WeightSpec& w, double r,
                            const QuadratureSpec& quad = {});

// One-dimensional converse example u(x) = x^2 with phi(t) = t: u is not
// harmonic, yet d(r) = integral_{-r..r} x^4 dx has the absolutely monotonic
// derivative d'(r) = 2 r^4. Kept as closed forms.
double converse_example_d(double r);
double converse_example_d_prime(double r);

struct Theorem11Spec {
  std::string claim_id = "thm1.1";
  double tol = 1e-4;
  double fd_step = 0.12;  // base step for the quadrature-path derivatives
  QuadratureSpec quad = [] {
    QuadratureSpec q;
    q.abs_tol = 1e-13;
    q.rel_tol = 1e-12;
    return q;
  }();
};

// Runs check_abs_monotonic on the quadrature growth curve and on the closed
// form; the verdicts must agree (errc::internal_inconsistency otherwise) and
// the quadrature-path report is returned.
VerificationReport verify_theorem_1_1(const HarmonicCombo& u, int max_order,
                                      const std::vector<double>& grid,
                                      const Theorem11Spec& spec = {});

}  // namespace qvlab
