#include "qvlab/harmonic.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace qvlab {

namespace {

// c * x^a y^b z^e; every basis function is a short list of these.
struct Monomial {
  double c;
  int a, b, e;
};

double ipow(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

// Re/Im (x + iy)^k expanded by binomials: i^j cycles {1, i, -1, -i}.
std::vector<Monomial> planar_basis(int k, int idx) {
  std::vector<Monomial> out;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (idx == 0 && j % 2 == 0)
      out.push_back({(j % 4 == 0 ? 1.0 : -1.0) * binom, k - j, j, 0});
    if (idx == 1 && j % 2 == 1)
      out.push_back({(j % 4 == 1 ? 1.0 : -1.0) * binom, k - j, j, 0});
    binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
  }
  return out;
}

// Real solid harmonics, unnormalized monomial forms, index = l + m.
std::vector<Monomial> solid_basis(int l, int idx) {
  const int mi = idx - l;
  switch (l) {
    case 0:
      return {{1.0, 0, 0, 0}};
    case 1:
      if (mi == -1) return {{1.0, 0, 1, 0}};
      if (mi == 0) return {{1.0, 0, 0, 1}};
      return {{1.0, 1, 0, 0}};
    case 2:
      if (mi == -2) return {{1.0, 1, 1, 0}};
      if (mi == -1) return {{1.0, 0, 1, 1}};
      if (mi == 0) return {{2.0, 0, 0, 2}, {-1.0, 2, 0, 0}, {-1.0, 0, 2, 0}};
      if (mi == 1) return {{1.0, 1, 0, 1}};
      return {{1.0, 2, 0, 0}, {-1.0, 0, 2, 0}};
    case 3:
      if (mi == -3) return {{3.0, 2, 1, 0}, {-1.0, 0, 3, 0}};
      if (mi == -2) return {{1.0, 1, 1, 1}};
      if (mi == -1) return {{4.0, 0, 1, 2}, {-1.0, 2, 1, 0}, {-1.0, 0, 3, 0}};
      if (mi == 0) return {{2.0, 0, 0, 3}, {-3.0, 2, 0, 1}, {-3.0, 0, 2, 1}};
      if (mi == 1) return {{4.0, 1, 0, 2}, {-1.0, 3, 0, 0}, {-1.0, 1, 2, 0}};
      if (mi == 2) return {{1.0, 2, 0, 1}, {-1.0, 0, 2, 1}};
      return {{1.0, 3, 0, 0}, {-3.0, 1, 2, 0}};
    default:  // l == 4
      if (mi == -4) return {{1.0, 3, 1, 0}, {-1.0, 1, 3, 0}};
      if (mi == -3) return {{3.0, 2, 1, 1}, {-1.0, 0, 3, 1}};
      if (mi == -2) return {{6.0, 1, 1, 2}, {-1.0, 3, 1, 0}, {-1.0, 1, 3, 0}};
      if (mi == -1) return {{4.0, 0, 1, 3}, {-3.0, 2, 1, 1}, {-3.0, 0, 3, 1}};
      if (mi == 0)
        return {{3.0, 4, 0, 0},  {3.0, 0, 4, 0},   {8.0, 0, 0, 4},
                {6.0, 2, 2, 0},  {-24.0, 2, 0, 2}, {-24.0, 0, 2, 2}};
      if (mi == 1) return {{4.0, 1, 0, 3}, {-3.0, 3, 0, 1}, {-3.0, 1, 2, 1}};
      if (mi == 2)
        return {{-1.0, 4, 0, 0}, {1.0, 0, 4, 0}, {6.0, 2, 0, 2}, {-6.0, 0, 2, 2}};
      if (mi == 3) return {{1.0, 3, 0, 1}, {-3.0, 1, 2, 1}};
      return {{1.0, 4, 0, 0}, {-6.0, 2, 2, 0}, {1.0, 0, 4, 0}};
  }
}

std::vector<Monomial> basis_monomials(int m, int degree, int index) {
  return m == 2 ? planar_basis(degree, index) : solid_basis(degree, index);
}

void check_point(const HarmonicCombo& u, const Vec& x) {
  if (static_cast<int>(x.size()) != u.m)
    fail(errc::dimension_mismatch, "point dimension does not match the combo");
}

double dfact(int n) {  // double factorial with (-1)!! = 0!! = 1
  double out = 1.0;
  for (int k = n; k >= 2; k -= 2) out *= static_cast<double>(k);
  return out;
}

// Mean of x^a y^b over the unit circle.
double circle_moment(int a, int b) {
  if (a % 2 != 0 || b % 2 != 0) return 0.0;
  return dfact(a - 1) * dfact(b - 1) / dfact(a + b);
}

// Mean of x^a y^b z^e over the unit two-sphere.
double sphere_moment(int a, int b, int e) {
  if (a % 2 != 0 || b % 2 != 0 || e % 2 != 0) return 0.0;
  return dfact(a - 1) * dfact(b - 1) * dfact(e - 1) / dfact(a + b + e + 1);
}

double pair_mean(int m, const std::vector<Monomial>& p, const std::vector<Monomial>& q) {
  double s = 0.0;
  for (const Monomial& i : p)
    for (const Monomial& j : q)
      s += i.c * j.c *
           (m == 2 ? circle_moment(i.a + j.a, i.b + j.b)
                   : sphere_moment(i.a + j.a, i.b + j.b, i.e + j.e));
  return s;
}

void validate_weight_callables(const WeightSpec& w) {
  if (!w.phi || !w.phi_prime)
    fail(errc::invalid_parameter, "weight needs both phi and phi_prime");
}

}  // namespace

int max_degree(int m) {
  if (m == 2) return 6;
  if (m == 3) return 4;
  fail(errc::invalid_parameter, "harmonic combos live in m = 2 or m = 3");
}

int basis_size(int m, int degree) {
  if (degree < 0 || degree > max_degree(m))
    fail(errc::invalid_parameter, "basis degree out of range");
  if (m == 2) return degree == 0 ? 1 : 2;
  return 2 * degree + 1;
}

HarmonicCombo make_combo(int m, std::vector<HarmonicTerm> terms) {
  const int cap = max_degree(m);
  if (terms.empty()) fail(errc::invalid_parameter, "combo needs at least one term");
  bool nonzero = false;
  for (const HarmonicTerm& t : terms) {
    if (t.degree < 0 || t.degree > cap)
      fail(errc::invalid_parameter, "term degree out of range");
    if (t.index < 0 || t.index >= basis_size(m, t.degree))
      fail(errc::invalid_parameter, "term basis index out of range");
    if (!std::isfinite(t.coef))
      fail(errc::invalid_parameter, "term coefficient must be finite");
    if (t.coef != 0.0) nonzero = true;
  }
  if (!nonzero) fail(errc::invalid_parameter, "combo must not be identically zero");
  return {m, std::move(terms)};
}

double eval(const HarmonicCombo& u, const Vec& x) {
  check_point(u, x);
  const double z = u.m == 3 ? x[2] : 0.0;
  double out = 0.0;
  for (const HarmonicTerm& t : u.terms) {
    double s = 0.0;
    for (const Monomial& mo : basis_monomials(u.m, t.degree, t.index))
      s += mo.c * ipow(x[0], mo.a) * ipow(x[1], mo.b) * ipow(z, mo.e);
    out += t.coef * s;
  }
  return out;
}

Vec gradient(const HarmonicCombo& u, const Vec& x) {
  check_point(u, x);
  const double z = u.m == 3 ? x[2] : 0.0;
  Vec g(static_cast<std::size_t>(u.m), 0.0);
  for (const HarmonicTerm& t : u.terms) {
    for (const Monomial& mo : basis_monomials(u.m, t.degree, t.index)) {
      const double c = t.coef * mo.c;
      if (mo.a > 0)
        g[0] += c * mo.a * ipow(x[0], mo.a - 1) * ipow(x[1], mo.b) * ipow(z, mo.e);
      if (mo.b > 0)
        g[1] += c * mo.b * ipow(x[0], mo.a) * ipow(x[1], mo.b - 1) * ipow(z, mo.e);
      if (u.m == 3 && mo.e > 0)
        g[2] += c * mo.e * ipow(x[0], mo.a) * ipow(x[1], mo.b) * ipow(z, mo.e - 1);
    }
  }
  return g;
}

double laplacian(const HarmonicCombo& u, const Vec& x) {
  check_point(u, x);
  const double z = u.m == 3 ? x[2] : 0.0;
  double out = 0.0;
  for (const HarmonicTerm& t : u.terms) {
    for (const Monomial& mo : basis_monomials(u.m, t.degree, t.index)) {
      const double c = t.coef * mo.c;
      if (mo.a > 1)
        out += c * mo.a * (mo.a - 1) * ipow(x[0], mo.a - 2) * ipow(x[1], mo.b) *
               ipow(z, mo.e);
      if (mo.b > 1)
        out += c * mo.b * (mo.b - 1) * ipow(x[0], mo.a) * ipow(x[1], mo.b - 2) *
               ipow(z, mo.e);
      if (u.m == 3 && mo.e > 1)
        out += c * mo.e * (mo.e - 1) * ipow(x[0], mo.a) * ipow(x[1], mo.b) *
               ipow(z, mo.e - 2);
    }
  }
  return out;
}

QFunction to_qfunction(const HarmonicCombo& u) {
  const HarmonicCombo copy = make_combo(u.m, u.terms);
  return QFunction::scalar(
      u.m, [copy](const Vec& x) { return eval(copy, x); },
      [copy](const Vec& x) { return gradient(copy, x); });
}

std::vector<double> h_bar_closed_form(const HarmonicCombo& u) {
  const HarmonicCombo v = make_combo(u.m, u.terms);

  // Merge duplicate basis entries so that every remaining pair is distinct.
  std::map<std::pair<int, int>, double> merged;
  for (const HarmonicTerm& t : v.terms) merged[{t.degree, t.index}] += t.coef;

  struct Entry {
    int degree;
    double coef;
    std::vector<Monomial> mono;
    double self;
  };
  std::vector<Entry> entries;
  for (const auto& [key, coef] : merged) {
    Entry e;
    e.degree = key.first;
    e.coef = coef;
    e.mono = basis_monomials(v.m, key.first, key.second);
    e.self = pair_mean(v.m, e.mono, e.mono);
    entries.push_back(std::move(e));
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const double cross = pair_mean(v.m, entries[i].mono, entries[j].mono);
      const double scale = std::sqrt(entries[i].self * entries[j].self);
      if (std::abs(cross) > 1e-10 * std::max(1.0, scale))
        fail(errc::internal_inconsistency,
             "harmonic basis lost orthogonality in the moment computation");
    }
  }

  std::vector<double> coeffs(static_cast<std::size_t>(max_degree(v.m)) + 1, 0.0);
  for (const Entry& e : entries)
    coeffs[static_cast<std::size_t>(e.degree)] += e.coef * e.coef * e.self;
  return coeffs;
}

double eval_even_poly(const std::vector<double>& coeffs, double r) {
  const double r2 = r * r;
  double out = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) out = out * r2 + coeffs[k];
  return out;
}

WeightSpec make_weight(std::string name, std::function<double(double)> phi,
                       std::function<double(double)> phi_prime) {
  WeightSpec w{std::move(name), std::move(phi), std::move(phi_prime)};
  validate_weight_callables(w);
  for (int i = 0; i < 1000; ++i) {
    const double t = static_cast<double>(i) / 999.0;
    const double v = w.phi(t);
    const double d = w.phi_prime(t);
    if (!std::isfinite(v) || !std::isfinite(d))
      fail(errc::invalid_parameter, "weight is not finite on [0,1]");
    if (d < -1e-12)
      fail(errc::invalid_parameter, "weight must be nondecreasing on [0,1]");
  }
  return w;
}

WeightSpec weight_identity() {
  return make_weight(
      "identity", [](double t) { return t; }, [](double) { return 1.0; });
}

WeightSpec weight_smoothstep() {
  return make_weight(
      "smoothstep", [](double t) { return t * t * (3.0 - 2.0 * t); },
      [](double t) { return 6.0 * t * (1.0 - t); });
}

namespace {

// Unit-ball quadrature of s -> weight(s) * (angular integral at radius r*s).
double ball_integral(const HarmonicCombo& u, double r,
                     const std::function<double(double)>& radial_weight,
                     const std::function<double(const Vec&)>& density,
                     const QuadratureSpec& quad) {
  std::vector<double> xs, ws;
  gauss_legendre_rule(quad.radial_gl, xs, ws);
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double s = 0.5 * (xs[i] + 1.0);
    const double w = 0.5 * ws[i];
    double shell;
    if (u.m == 2) {
      shell = integrate_circle(
                  [&](double th) {
                    const Vec p{r * s * std::cos(th), r * s * std::sin(th)};
                    return density(p);
                  },
                  quad)
                  .value *
              s;
    } else {
      shell = integrate_sphere(
                  [&](const Vec& om) {
                    const Vec p{r * s * om[0], r * s * om[1], r * s * om[2]};
                    return density(p);
                  },
                  quad)
                  .value *
              s * s;
    }
    total += w * radial_weight(s) * shell;
  }
  if (!std::isfinite(total))
    fail(errc::nonfinite, "ball quadrature produced a non-finite value");
  return total;
}

}  // namespace

double weighted_d(const HarmonicCombo& u, const WeightSpec& w, double r,
                  const QuadratureSpec& quad) {
  validate_weight_callables(w);
  validate_quadrature(quad);
  if (!(r > 0.0 && r < 1.0))
    fail(errc::domain, "weighted d is defined for radii in (0,1)");
  const HarmonicCombo v = make_combo(u.m, u.terms);
  return ball_integral(
      v, r, [&](double s) { return w.phi_prime(s * s); },
      [&](const Vec& p) {
        const double val = eval(v, p);
        return val * val;
      },
      quad);
}

double weighted_d_prime_rhs(const HarmonicCombo& u, const WeightSpec& w, double r,
                            const QuadratureSpec& quad) {
  validate_weight_callables(w);
  validate_quadrature(quad);
  if (!(r > 0.0 && r < 1.0))
    fail(errc::domain, "weighted d is defined for radii in (0,1)");
  const HarmonicCombo v = make_combo(u.m, u.terms);
  const double phi1 = w.phi(1.0);
  return r * ball_integral(
                 v, r, [&](double s) { return phi1 - w.phi(s * s); },
                 [&](const Vec& p) {
                   const Vec g = gradient(v, p);
                   double gs = 0.0;
                   for (double c : g) gs += c * c;
                   return gs;
                 },
                 quad);
}

double converse_example_d(double r) {
  if (!(r >= 0.0) || !std::isfinite(r))
    fail(errc::domain, "the converse example needs a finite radius >= 0");
  return 0.4 * std::pow(r, 5);
}

double converse_example_d_prime(double r) {
  if (!(r >= 0.0) || !std::isfinite(r))
    fail(errc::domain, "the converse example needs a finite radius >= 0");
  return 2.0 * std::pow(r, 4);
}

VerificationReport verify_theorem_1_1(const HarmonicCombo& u, int max_order,
                                      const std::vector<double>& grid,
                                      const Theorem11Spec& spec) {
  const HarmonicCombo v = make_combo(u.m, u.terms);
  const std::vector<double> coeffs = h_bar_closed_form(v);
  const QFunction f = to_qfunction(v);

  CheckSpec cs;
  cs.claim_id = spec.claim_id;
  cs.tol = spec.tol;
  cs.dspec.step = spec.fd_step;
  cs.dspec.domain_lo = 1e-9;
  cs.dspec.domain_hi = 1.0 - 1e-9;

  const VerificationReport closed = check_abs_monotonic(
      [&](double r) { return eval_even_poly(coeffs, r); }, max_order, grid, cs);
  const VerificationReport quadr = check_abs_monotonic(
      [&](double r) { return h_bar(f, r, spec.quad); }, max_order, grid, cs);
  if (closed.passed != quadr.passed)
    fail(errc::internal_inconsistency,
         "closed-form and quadrature growth paths disagree on absolute monotonicity");
  return quadr;
}

}  // namespace qvlab
