#ifndef QVLAB_QFUN_HPP
#define QVLAB_QFUN_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "qvlab/multipoint.hpp"

namespace qvlab {

using Complex = std::complex<double>;

/// The q complex roots of w^q = a*z + b, principal root first.
/// Convention: write a*z + b = R e^{i omega} with omega in [0, 2*pi); the
/// principal root is R^{1/q} e^{i omega/q} and the remaining roots follow by
/// multiplication with the q-th roots of unity. In particular sqrt(-1) = i.
std::vector<Complex> branched_roots(int q, Complex a, Complex b, Complex z);

/// branched_roots packaged as a QPoint in R^2.
QPoint eval_branched_roots(int q, Complex a, Complex b, Complex z);

/// |T|^2 = sum_i |P_i|^2 (the square of norm, evaluated as such).
double abs_sq(const QPoint& t);

/// Sum over branches of |Dw_i|^2 = 2 |w_i'|^2 with w_i' = a / (q w_i^{q-1}).
/// Finite and positive away from the branch point z* = -b/a.
double grad_sq_branched(int q, Complex a, Complex b, Complex z);

/// Sum over branches of |d/dnu w_i|^2 for the unit radial direction nu=z/|z|.
/// Holomorphy makes every directional derivative have modulus |w_i'|, so this
/// is exactly grad_sq_branched / 2 (bitwise: both share one accumulation).
double radial_deriv_sq_branched(int q, Complex a, Complex b, Complex z);

/// Same quantity for the unit tangential direction i*z/|z|.
double tangential_deriv_sq_branched(int q, Complex a, Complex b, Complex z);

/// Sum over branches of the dot product (d/dnu w_i) . w_i in R^2 — the radial
/// flux density whose circle integral reproduces the Dirichlet energy of a
/// minimizer's ball restriction.
double radial_flux_branched(int q, Complex a, Complex b, Complex z);

/// Domain points where the defining equation degenerates, and the circle
/// radii |z*| < 1 on which sphere integrands lose smoothness.
struct SingularSet {
  std::vector<Vec> branch_points;
  std::vector<double> critical_radii;
};

SingularSet singular_set_branched(int q, Complex a, Complex b);

using Profile = std::function<QPoint(const Vec&)>;

/// f(y) = |y|^alpha * profile(y/|y|). The origin is outside the domain unless
/// the caller opts into the value Q[[0]] there.
QPoint eval_homogeneous(double alpha, const Profile& profile, const Vec& y,
                        bool zero_at_origin = false);

/// Roots of w^q = a z + b sampled along the circle |z| = r at nodes+1 angles
/// theta_j = 2*pi*j/nodes, j = 0..nodes, each sample's branches matched to the
/// previous one by min-cost assignment. Continuation, not principal values:
/// crossing the argument cut never reshuffles branches, and winding around an
/// enclosed branch point shows up as a cyclic shift between the last and first
/// samples.
std::vector<std::vector<Complex>> track_roots_circle(int q, Complex a, Complex b,
                                                     double r, int nodes);

/// An evaluable Q-valued map on the unit ball of R^m. Three families:
///   branched_roots — the planar maps z -> sum of roots of w^q = az+b;
///   homogeneous    — |y|^alpha times a unit-sphere profile (no gradient data);
///   scalar         — a single-valued function with an optional analytic
///                    gradient (the harmonic baseline plugs in here, Q = 1).
class QFunction {
 public:
  enum class Kind { branched_roots, homogeneous, scalar };

  static QFunction branched(int q, Complex a, Complex b);
  static QFunction homogeneous(double alpha, int m, Profile profile,
                               bool zero_at_origin = false);
  static QFunction scalar(int m, std::function<double(const Vec&)> value,
                          std::function<Vec(const Vec&)> gradient);

  Kind kind() const { return kind_; }
  int m() const { return m_; }
  int q() const { return q_; }
  int n() const { return n_; }

  QPoint value(const Vec& x) const;
  double abs_sq_at(const Vec& x) const;

  bool has_gradient() const;
  double grad_sq_at(const Vec& x) const;
  double radial_deriv_sq_at(const Vec& x) const;
  double tangential_deriv_sq_at(const Vec& x) const;
  double radial_flux_at(const Vec& x) const;

  SingularSet singular() const;

  // Parameter accessors used by the quadrature engine's closed-form paths.
  int root_q() const { return root_q_; }
  Complex root_a() const { return a_; }
  Complex root_b() const { return b_; }
  double alpha() const { return alpha_; }

  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

 private:
  QFunction() = default;

  Kind kind_ = Kind::scalar;
  int m_ = 2, q_ = 1, n_ = 1;
  // branched_roots
  int root_q_ = 0;
  Complex a_{0.0, 0.0}, b_{0.0, 0.0};
  // homogeneous
  double alpha_ = 0.0;
  Profile profile_;
  bool zero_at_origin_ = false;
  // scalar
  std::function<double(const Vec&)> sval_;
  std::function<Vec(const Vec&)> sgrad_;

  std::string id_;
};

}  // namespace qvlab

#endif
