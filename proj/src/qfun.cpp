#include "qvlab/qfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "qvlab/error.hpp"

namespace qvlab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_branched_params(int q, Complex a) {
  if (q < 1) fail(errc::invalid_parameter, "branched roots need q >= 1");
  if (a == Complex{0.0, 0.0})
    fail(errc::invalid_parameter, "branched roots need a != 0 (w^q = az+b)");
}

// Sum over branches of |w_i'|^2 with w_i' = a / (q w_i^{q-1}). Every branch
// has modulus |zeta|^{1/q}, so the sum collapses to |a|^2 / (q |zeta|^{2(q-1)/q}).
double branch_deriv_sq_sum(int q, Complex a, Complex b, Complex z) {
  require_branched_params(q, a);
  if (q == 1) return std::norm(a);
  const double zeta_sq = std::norm(a * z + b);
  if (zeta_sq == 0.0)
    fail(errc::singular_point, "branch derivative blows up at z* = -b/a");
  return std::norm(a) / (double(q) * std::pow(zeta_sq, double(q - 1) / double(q)));
}

Complex radial_direction(Complex z) {
  const double az = std::abs(z);
  if (az == 0.0) fail(errc::domain, "radial direction undefined at the origin");
  return z / az;
}

Vec unit_axis(int m) {
  Vec e(m, 0.0);
  e[0] = 1.0;
  return e;
}

}  // namespace

std::vector<Complex> branched_roots(int q, Complex a, Complex b, Complex z) {
  require_branched_params(q, a);
  const Complex zeta = a * z + b;
  const double modulus = std::pow(std::abs(zeta), 1.0 / double(q));
  double omega = std::arg(zeta);
  if (omega < 0.0) omega += 2.0 * kPi;  // [0, 2*pi): the half-angle convention
  std::vector<Complex> roots(q);
  for (int k = 0; k < q; ++k)
    roots[k] = std::polar(modulus, (omega + 2.0 * kPi * double(k)) / double(q));
  return roots;
}

QPoint eval_branched_roots(int q, Complex a, Complex b, Complex z) {
  return QPoint::from_complex(branched_roots(q, a, b, z));
}

double abs_sq(const QPoint& t) {
  const double s = norm(t);
  return s * s;
}

double grad_sq_branched(int q, Complex a, Complex b, Complex z) {
  return 2.0 * branch_deriv_sq_sum(q, a, b, z);
}

double radial_deriv_sq_branched(int q, Complex a, Complex b, Complex z) {
  (void)radial_direction(z);
  return branch_deriv_sq_sum(q, a, b, z);
}

double tangential_deriv_sq_branched(int q, Complex a, Complex b, Complex z) {
  (void)radial_direction(z);
  return branch_deriv_sq_sum(q, a, b, z);
}

double radial_flux_branched(int q, Complex a, Complex b, Complex z) {
  const Complex nu = radial_direction(z);
  if (q > 1 && std::norm(a * z + b) == 0.0)
    fail(errc::singular_point, "radial flux undefined at z* = -b/a");
  double total = 0.0;
  for (const Complex& w : branched_roots(q, a, b, z)) {
    Complex w_pow{1.0, 0.0};
    for (int j = 0; j < q - 1; ++j) w_pow *= w;
    const Complex wp = a / (double(q) * w_pow);
    total += (std::conj(w) * wp * nu).real();
  }
  return total;
}

SingularSet singular_set_branched(int q, Complex a, Complex b) {
  require_branched_params(q, a);
  SingularSet s;
  if (q == 1) return s;  // w = az+b never degenerates
  const Complex zstar = -b / a;
  s.branch_points.push_back({zstar.real(), zstar.imag()});
  if (std::abs(zstar) < 1.0) s.critical_radii.push_back(std::abs(zstar));
  return s;
}

QPoint eval_homogeneous(double alpha, const Profile& profile, const Vec& y,
                        bool zero_at_origin) {
  if (alpha <= 0.0)
    fail(errc::invalid_parameter, "homogeneity exponent must be positive");
  if (!profile) fail(errc::invalid_parameter, "homogeneous map needs a profile");
  double s = 0.0;
  for (double c : y) s += c * c;
  const double ny = std::sqrt(s);
  if (ny == 0.0) {
    if (!zero_at_origin)
      fail(errc::domain, "homogeneous map undefined at the origin");
    const QPoint probe = profile(unit_axis(static_cast<int>(y.size())));
    return QPoint::zero(probe.q(), probe.n());
  }
  Vec unit(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) unit[i] = y[i] / ny;
  std::vector<Vec> pts = profile(unit).points();
  const double scale = std::pow(ny, alpha);
  for (Vec& p : pts)
    for (double& c : p) c *= scale;
  return QPoint(std::move(pts));
}

std::vector<std::vector<Complex>> track_roots_circle(int q, Complex a, Complex b,
                                                     double r, int nodes) {
  require_branched_params(q, a);
  if (r <= 0.0) fail(errc::domain, "circle radius must be positive");
  if (nodes < 4) fail(errc::invalid_parameter, "need at least 4 circle nodes");
  std::vector<std::vector<Complex>> samples;
  samples.reserve(nodes + 1);
  samples.push_back(branched_roots(q, a, b, Complex{r, 0.0}));
  std::vector<std::vector<double>> cost(q, std::vector<double>(q));
  for (int j = 1; j <= nodes; ++j) {
    const auto raw = branched_roots(q, a, b, std::polar(r, 2.0 * kPi * j / nodes));
    const auto& prev = samples.back();
    for (int i = 0; i < q; ++i)
      for (int k = 0; k < q; ++k) cost[i][k] = std::norm(prev[i] - raw[k]);
    const std::vector<int> match = solve_assignment(cost);
    std::vector<Complex> ordered(q);
    for (int i = 0; i < q; ++i) ordered[i] = raw[match[i]];
    samples.push_back(std::move(ordered));
  }
  return samples;
}

QFunction QFunction::branched(int q, Complex a, Complex b) {
  require_branched_params(q, a);
  QFunction f;
  f.kind_ = Kind::branched_roots;
  f.m_ = 2;
  f.q_ = q;
  f.n_ = 2;
  f.root_q_ = q;
  f.a_ = a;
  f.b_ = b;
  return f;
}

QFunction QFunction::homogeneous(double alpha, int m, Profile profile,
                                 bool zero_at_origin) {
  if (m < 2) fail(errc::invalid_parameter, "homogeneous maps need m >= 2");
  if (alpha <= 0.0)
    fail(errc::invalid_parameter, "homogeneity exponent must be positive");
  if (!profile) fail(errc::invalid_parameter, "homogeneous map needs a profile");
  QFunction f;
  f.kind_ = Kind::homogeneous;
  f.m_ = m;
  f.alpha_ = alpha;
  f.zero_at_origin_ = zero_at_origin;
  const QPoint probe = profile(unit_axis(m));
  f.q_ = probe.q();
  f.n_ = probe.n();
  f.profile_ = std::move(profile);
  return f;
}

QFunction QFunction::scalar(int m, std::function<double(const Vec&)> value,
                            std::function<Vec(const Vec&)> gradient) {
  if (m < 1) fail(errc::invalid_parameter, "scalar functions need m >= 1");
  if (!value) fail(errc::invalid_parameter, "scalar function needs an evaluator");
  QFunction f;
  f.kind_ = Kind::scalar;
  f.m_ = m;
  f.q_ = 1;
  f.n_ = 1;
  f.sval_ = std::move(value);
  f.sgrad_ = std::move(gradient);
  return f;
}

namespace {

void require_dim(const Vec& x, int m) {
  if (static_cast<int>(x.size()) != m)
    fail(errc::dimension_mismatch, "evaluation point has wrong dimension");
}

Complex as_complex(const Vec& x) { return {x[0], x[1]}; }

}  // namespace

QPoint QFunction::value(const Vec& x) const {
  require_dim(x, m_);
  switch (kind_) {
    case Kind::branched_roots:
      return eval_branched_roots(root_q_, a_, b_, as_complex(x));
    case Kind::homogeneous:
      return eval_homogeneous(alpha_, profile_, x, zero_at_origin_);
    case Kind::scalar:
      return QPoint(std::vector<Vec>{{sval_(x)}});
  }
  fail(errc::invalid_parameter, "corrupt QFunction kind");
}

double QFunction::abs_sq_at(const Vec& x) const {
  require_dim(x, m_);
  switch (kind_) {
    case Kind::branched_roots:
      // All q branches share modulus |zeta|^{1/q}.
      return double(root_q_) *
             std::pow(std::norm(a_ * as_complex(x) + b_), 1.0 / double(root_q_));
    case Kind::homogeneous:
      return abs_sq(value(x));
    case Kind::scalar: {
      const double v = sval_(x);
      return v * v;
    }
  }
  fail(errc::invalid_parameter, "corrupt QFunction kind");
}

bool QFunction::has_gradient() const {
  if (kind_ == Kind::homogeneous) return false;
  if (kind_ == Kind::scalar) return static_cast<bool>(sgrad_);
  return true;
}

namespace {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec unit_of(const Vec& x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  const double r = std::sqrt(s);
  if (r == 0.0) fail(errc::domain, "radial direction undefined at the origin");
  Vec u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = x[i] / r;
  return u;
}

}  // namespace

double QFunction::grad_sq_at(const Vec& x) const {
  require_dim(x, m_);
  switch (kind_) {
    case Kind::branched_roots:
      return grad_sq_branched(root_q_, a_, b_, as_complex(x));
    case Kind::homogeneous:
      fail(errc::no_gradient, "homogeneous profiles carry no gradient data");
    case Kind::scalar: {
      if (!sgrad_) fail(errc::no_gradient, "scalar function has no gradient");
      const Vec g = sgrad_(x);
      return dot(g, g);
    }
  }
  fail(errc::invalid_parameter, "corrupt QFunction kind");
}

double QFunction::radial_deriv_sq_at(const Vec& x) const {
  require_dim(x, m_);
  if (kind_ == Kind::branched_roots)
    return radial_deriv_sq_branched(root_q_, a_, b_, as_complex(x));
  if (kind_ == Kind::scalar && sgrad_) {
    const double d = dot(sgrad_(x), unit_of(x));
    return d * d;
  }
  fail(errc::no_gradient, "radial derivative needs gradient data");
}

double QFunction::tangential_deriv_sq_at(const Vec& x) const {
  require_dim(x, m_);
  if (kind_ == Kind::branched_roots)
    return tangential_deriv_sq_branched(root_q_, a_, b_, as_complex(x));
  if (kind_ == Kind::scalar && sgrad_) {
    const Vec g = sgrad_(x);
    const double d = dot(g, unit_of(x));
    return std::max(0.0, dot(g, g) - d * d);
  }
  fail(errc::no_gradient, "tangential derivative needs gradient data");
}

double QFunction::radial_flux_at(const Vec& x) const {
  require_dim(x, m_);
  if (kind_ == Kind::branched_roots)
    return radial_flux_branched(root_q_, a_, b_, as_complex(x));
  if (kind_ == Kind::scalar && sgrad_)
    return sval_(x) * dot(sgrad_(x), unit_of(x));
  fail(errc::no_gradient, "radial flux needs gradient data");
}

SingularSet QFunction::singular() const {
  switch (kind_) {
    case Kind::branched_roots:
      return singular_set_branched(root_q_, a_, b_);
    case Kind::homogeneous: {
      SingularSet s;
      s.branch_points.push_back(Vec(m_, 0.0));  // only |y|^alpha kinks, at 0
      return s;
    }
    case Kind::scalar:
      return {};
  }
  fail(errc::invalid_parameter, "corrupt QFunction kind");
}

}  // namespace qvlab
