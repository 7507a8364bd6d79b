#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qvlab/calculus.hpp"
#include "qvlab/error.hpp"
#include "qvlab/growth.hpp"
#include "qvlab/harmonic.hpp"

using namespace qvlab;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a qvlab::Error");
  return errc::nonfinite;
}

HarmonicCombo planar(std::vector<HarmonicTerm> terms) { return make_combo(2, std::move(terms)); }
HarmonicCombo solid(std::vector<HarmonicTerm> terms) { return make_combo(3, std::move(terms)); }

Vec fd_gradient(const HarmonicCombo& u, Vec x, double h) {
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double up = eval(u, x);
    x[i] = xi - h;
    const double dn = eval(u, x);
    x[i] = xi;
    g[i] = (up - dn) / (2.0 * h);
  }
  return g;
}

// Five/seven point stencil estimate of the Laplacian.
double fd_laplacian(const HarmonicCombo& u, Vec x, double h) {
  double acc = -2.0 * static_cast<double>(x.size()) * eval(u, x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    acc += eval(u, x);
    x[i] = xi - h;
    acc += eval(u, x);
    x[i] = xi;
  }
  return acc / (h * h);
}

}  // namespace

TEST_CASE("basis bookkeeping and combo validation") {
  CHECK(max_degree(2) == 6);
  CHECK(max_degree(3) == 4);
  CHECK(code_of([] { max_degree(4); }) == errc::invalid_parameter);

  CHECK(basis_size(2, 0) == 1);
  CHECK(basis_size(2, 5) == 2);
  CHECK(basis_size(3, 0) == 1);
  CHECK(basis_size(3, 4) == 9);
  CHECK(code_of([] { basis_size(2, 7); }) == errc::invalid_parameter);
  CHECK(code_of([] { basis_size(3, -1); }) == errc::invalid_parameter);

  CHECK(code_of([] { make_combo(2, {}); }) == errc::invalid_parameter);
  CHECK(code_of([] { make_combo(2, {{7, 0, 1.0}}); }) == errc::invalid_parameter);
  CHECK(code_of([] { make_combo(2, {{0, 1, 1.0}}); }) == errc::invalid_parameter);
  CHECK(code_of([] { make_combo(3, {{2, 5, 1.0}}); }) == errc::invalid_parameter);
  CHECK(code_of([] { make_combo(2, {{1, 0, std::nan("")}}); }) == errc::invalid_parameter);
  CHECK(code_of([] { make_combo(2, {{1, 0, 0.0}, {2, 1, 0.0}}); }) ==
        errc::invalid_parameter);
}

TEST_CASE("pointwise evaluation matches hand expansions") {
  // Planar: Re z, Im z^2 = 2xy, Re z^3 = x^3 - 3xy^2.
  CHECK(eval(planar({{1, 0, 1.0}}), {0.3, 0.4}) == 0.3);
  CHECK(eval(planar({{2, 1, 1.0}}), {0.7, -0.2}) ==
        doctest::Approx(2.0 * 0.7 * -0.2).epsilon(1e-15));
  const double x = -0.6, y = 0.35;
  CHECK(eval(planar({{3, 0, 1.0}}), {x, y}) ==
        doctest::Approx(x * x * x - 3.0 * x * y * y).epsilon(1e-14));
  CHECK(eval(planar({{0, 0, 2.5}, {1, 1, -1.0}}), {x, y}) ==
        doctest::Approx(2.5 - y).epsilon(1e-14));

  // Solid: z, then 2z^2 - x^2 - y^2 and xyz.
  const double zz = 0.8;
  CHECK(eval(solid({{1, 1, 1.0}}), {x, y, zz}) == zz);
  CHECK(eval(solid({{2, 2, 1.0}}), {x, y, zz}) ==
        doctest::Approx(2.0 * zz * zz - x * x - y * y).epsilon(1e-14));
  CHECK(eval(solid({{2, 0, 1.0}}), {x, y, zz}) ==
        doctest::Approx(x * y).epsilon(1e-15));
  CHECK(eval(solid({{3, 1, 1.0}}), {x, y, zz}) ==
        doctest::Approx(x * y * zz).epsilon(1e-15));

  CHECK(code_of([&] { eval(planar({{1, 0, 1.0}}), {x, y, zz}); }) ==
        errc::dimension_mismatch);
  CHECK(code_of([&] { eval(solid({{1, 1, 1.0}}), {x, y}); }) ==
        errc::dimension_mismatch);
}

TEST_CASE("gradients agree with central differences") {
  const HarmonicCombo u2 =
      planar({{0, 0, 0.5}, {3, 0, 1.0}, {3, 1, -0.7}, {6, 1, 0.3}});
  const std::vector<Vec> pts2 = {{0.3, 0.4}, {-0.5, 0.2}, {0.9, -0.1}};
  for (const Vec& p : pts2) {
    const Vec g = gradient(u2, p);
    const Vec fd = fd_gradient(u2, p, 1e-6);
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(std::abs(g[i] - fd[i]) <= 1e-7 * std::max(1.0, std::abs(g[i])));
  }

  const HarmonicCombo u3 = solid({{2, 3, 1.0}, {4, 0, 0.25}, {3, 2, -0.5}});
  const std::vector<Vec> pts3 = {{0.3, -0.4, 0.5}, {-0.2, 0.6, -0.3}};
  for (const Vec& p : pts3) {
    const Vec g = gradient(u3, p);
    const Vec fd = fd_gradient(u3, p, 1e-6);
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(std::abs(g[i] - fd[i]) <= 1e-7 * std::max(1.0, std::abs(g[i])));
  }
}

TEST_CASE("every basis term is annihilated by the analytic laplacian") {
  const std::vector<Vec> pts2 = {{0.3, 0.4},   {-0.5, 0.2}, {0.9, -0.1},
                                 {0.05, -0.9}, {0.6, 0.6},  {-0.25, -0.35}};
  for (int degree = 0; degree <= max_degree(2); ++degree)
    for (int index = 0; index < basis_size(2, degree); ++index)
      for (const Vec& p : pts2)
        CHECK(std::abs(laplacian(planar({{degree, index, 1.0}}), p)) <= 1e-12);

  const std::vector<Vec> pts3 = {{0.3, -0.4, 0.5}, {-0.2, 0.6, -0.3},
                                 {0.7, 0.1, 0.2},  {-0.45, -0.5, 0.55},
                                 {0.0, 0.8, -0.1}, {0.15, -0.25, -0.85}};
  for (int degree = 0; degree <= max_degree(3); ++degree)
    for (int index = 0; index < basis_size(3, degree); ++index)
      for (const Vec& p : pts3)
        CHECK(std::abs(laplacian(solid({{degree, index, 1.0}}), p)) <= 1e-12);

  // Stencil cross-check: the analytic Laplacian of a mixed combo matches the
  // (vanishing) finite-difference one.
  const HarmonicCombo u2 = planar({{2, 0, 1.0}, {5, 1, -0.4}});
  CHECK(std::abs(fd_laplacian(u2, {0.3, -0.6}, 1e-4)) <= 1e-4);
  const HarmonicCombo u3 = solid({{3, 4, 0.7}, {4, 6, 0.2}});
  CHECK(std::abs(fd_laplacian(u3, {0.2, 0.5, -0.4}, 1e-4)) <= 1e-4);
}

TEST_CASE("closed-form growth coefficients") {
  const std::vector<double> c0 = h_bar_closed_form(planar({{0, 0, 2.0}}));
  REQUIRE(c0.size() == 7);
  CHECK(c0[0] == 4.0);
  for (std::size_t k = 1; k < c0.size(); ++k) CHECK(c0[k] == 0.0);

  // u = Re z averages to r^2/2; u = z in three variables to r^2/3.
  const std::vector<double> cr = h_bar_closed_form(planar({{1, 0, 1.0}}));
  CHECK(cr[0] == 0.0);
  CHECK(cr[1] == 0.5);
  const std::vector<double> cz = h_bar_closed_form(solid({{1, 1, 1.0}}));
  REQUIRE(cz.size() == 5);
  CHECK(cz[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const std::vector<double> cc =
      h_bar_closed_form(planar({{0, 0, 1.0}, {1, 0, 1.0}, {2, 1, 0.5}}));
  CHECK(cc[0] == doctest::Approx(1.0));
  CHECK(cc[1] == doctest::Approx(0.5));
  CHECK(cc[2] == doctest::Approx(0.125));

  // Duplicate basis entries merge before squaring.
  const std::vector<double> merged =
      h_bar_closed_form(planar({{1, 0, 0.5}, {1, 0, 0.5}}));
  CHECK(merged[1] == doctest::Approx(0.5));

  // Nonnegativity is structural.
  const std::vector<double> big = h_bar_closed_form(solid(
      {{0, 0, 1.0}, {1, 1, -2.0}, {2, 3, 0.5}, {3, 0, -0.25}, {4, 8, 0.1}}));
  for (double c : big) CHECK(c >= 0.0);

  const std::vector<double> horner = {1.0, 2.0, 3.0};
  CHECK(eval_even_poly(horner, 0.5) ==
        doctest::Approx(1.0 + 2.0 * 0.25 + 3.0 * 0.0625).epsilon(1e-15));
}

TEST_CASE("quadrature growth matches the closed form") {
  const HarmonicCombo u2 = planar(
      {{0, 0, 1.0}, {1, 0, 1.0}, {2, 1, -0.5}, {3, 0, 0.25}, {6, 1, 0.1}});
  const std::vector<double> c2 = h_bar_closed_form(u2);
  const QFunction f2 = to_qfunction(u2);
  for (double r : linspace(0.05, 0.95, 19)) {
    const double quad = h_bar(f2, r);
    const double poly = eval_even_poly(c2, r);
    CHECK(std::abs(quad - poly) <= 1e-10 * std::max(1.0, std::abs(poly)));
  }

  const HarmonicCombo u3 = solid({{1, 1, 1.0}, {2, 3, 0.5}, {4, 2, 0.25}});
  const std::vector<double> c3 = h_bar_closed_form(u3);
  const QFunction f3 = to_qfunction(u3);
  for (double r : linspace(0.1, 0.9, 9)) {
    const double quad = h_bar(f3, r);
    const double poly = eval_even_poly(c3, r);
    CHECK(std::abs(quad - poly) <= 1e-10 * std::max(1.0, std::abs(poly)));
  }

  // Pure degree-k terms have frequency k.
  CHECK(frequency(to_qfunction(planar({{3, 0, 1.0}})), 0.5) ==
        doctest::Approx(3.0).epsilon(1e-9));
  CHECK(frequency(to_qfunction(solid({{2, 3, 1.0}})), 0.5) ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("weighted energy closed values") {
  const WeightSpec id = weight_identity();
  const WeightSpec ss = weight_smoothstep();
  const HarmonicCombo one2 = planar({{0, 0, 1.0}});
  const HarmonicCombo one3 = solid({{0, 0, 1.0}});

  // phi(t) = t turns d into the plain ball average of u^2.
  CHECK(weighted_d(one2, id, 0.5) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(weighted_d(one3, id, 0.5) ==
        doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
  // For the smoothstep the radial weight still integrates to the same mass.
  CHECK(weighted_d(one2, ss, 0.5) == doctest::Approx(kPi).epsilon(1e-12));

  const HarmonicCombo rez = planar({{1, 0, 1.0}});
  for (double r : {0.3, 0.7})
    CHECK(weighted_d(rez, id, r) ==
          doctest::Approx(kPi * r * r / 4.0).epsilon(1e-13));

  CHECK(code_of([&] { weighted_d(one2, id, 0.0); }) == errc::domain);
  CHECK(code_of([&] { weighted_d(one2, id, 1.0); }) == errc::domain);
  CHECK(code_of([&] { weighted_d(one2, WeightSpec{}, 0.5); }) ==
        errc::invalid_parameter);
}

TEST_CASE("derivative identity for the weighted energy") {
  const QuadratureSpec quad;
  const WeightSpec id = weight_identity();
  const WeightSpec ss = weight_smoothstep();

  // Closed-form anchor: u = Re z with phi(t) = t has d = pi r^2 / 4 and the
  // right-hand side must equal pi r / 2.
  CHECK(weighted_d_prime_rhs(planar({{1, 0, 1.0}}), id, 0.4, quad) ==
        doctest::Approx(kPi * 0.4 / 2.0).epsilon(1e-13));

  const HarmonicCombo u2 = planar({{1, 0, 1.0}, {2, 1, 0.5}});
  const HarmonicCombo u3 = solid({{1, 1, 1.0}, {2, 3, 0.5}});
  struct Probe {
    const HarmonicCombo* u;
    const WeightSpec* w;
    std::vector<double> radii;
  };
  const std::vector<Probe> probes = {{&u2, &id, {0.3, 0.6, 0.85}},
                                     {&u2, &ss, {0.3, 0.6, 0.85}},
                                     {&u3, &id, {0.5, 0.8}}};
  for (const Probe& pr : probes) {
    for (double r : pr.radii) {
      const DerivativeEstimate lhs = derivative(
          [&](double s) { return weighted_d(*pr.u, *pr.w, s, quad); }, r, 1);
      const double rhs = weighted_d_prime_rhs(*pr.u, *pr.w, r, quad);
      CHECK(lhs.reliable);
      CHECK(std::abs(lhs.value - rhs) <= 1e-7 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("converse example keeps the derivative without harmonicity") {
  CHECK(converse_example_d(0.5) == doctest::Approx(0.4 * std::pow(0.5, 5)));
  CHECK(converse_example_d_prime(0.37) == 2.0 * std::pow(0.37, 4));
  const DerivativeEstimate fd = derivative(converse_example_d, 0.5, 1);
  CHECK(std::abs(fd.value - converse_example_d_prime(0.5)) <= 1e-10);

  const VerificationReport rep = check_abs_monotonic(
      converse_example_d_prime, 4, linspace(0.2, 0.8, 5), CheckSpec{});
  CHECK(rep.passed);
  CHECK_FALSE(rep.degraded);

  CHECK(code_of([] { converse_example_d(-0.1); }) == errc::domain);
}

TEST_CASE("volume derivative reproduces the boundary growth") {
  QuadratureSpec qs;
  qs.circle_nodes = 256;
  qs.radial_depth = 8;
  qs.radial_gl = 16;

  const QFunction f2 = to_qfunction(planar({{0, 0, 1.0}, {2, 0, 0.5}}));
  for (double r : {0.35, 0.6, 0.85}) {
    DerivativeSpec ds;
    ds.max_levels = 6;
    const DerivativeEstimate lhs = derivative(
        [&](double s) { return volume_abs_sq(f2, s, qs); }, r, 1, ds);
    const double rhs = 2.0 * kPi * r * h_bar(f2, r, qs);
    CHECK(std::abs(lhs.value - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
  }

  const QFunction f3 = to_qfunction(solid({{1, 1, 1.0}, {2, 3, 0.5}}));
  for (double r : {0.4, 0.75}) {
    DerivativeSpec ds;
    ds.max_levels = 6;
    const DerivativeEstimate lhs = derivative(
        [&](double s) { return volume_abs_sq(f3, s, qs); }, r, 1, ds);
    const double rhs = 4.0 * kPi * r * r * h_bar(f3, r, qs);
    CHECK(std::abs(lhs.value - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("absolute monotonicity of the growth function") {
  const HarmonicCombo u2 = planar({{0, 0, 1.0}, {1, 0, 1.0}, {2, 1, 1.0}});
  const VerificationReport rep2 =
      verify_theorem_1_1(u2, 6, linspace(0.4, 0.6, 5));
  CHECK(rep2.passed);
  CHECK(rep2.claim_id == "thm1.1");
  CHECK(rep2.expectation == Expectation::must_hold);
  CHECK_FALSE(rep2.degraded);
  CHECK(rep2.worst_margin >= -1e-4);

  const HarmonicCombo u3 = solid({{1, 1, 1.0}, {2, 3, 0.5}, {2, 2, 0.2}});
  const VerificationReport rep3 =
      verify_theorem_1_1(u3, 4, linspace(0.25, 0.75, 5));
  CHECK(rep3.passed);
  CHECK_FALSE(rep3.degraded);
}

TEST_CASE("growth curves of harmonic inputs are log convex in log radius") {
  const std::vector<std::vector<double>> polys = {
      h_bar_closed_form(planar({{0, 0, 1.0}, {1, 0, 1.0}})),
      h_bar_closed_form(planar({{2, 1, 1.0}, {4, 0, 0.2}})),
      h_bar_closed_form(solid({{1, 1, 1.0}, {2, 3, 1.0}}))};
  for (const std::vector<double>& c : polys) {
    CheckSpec cs;
    cs.claim_id = "agmon-log-convexity";
    cs.tol = 1e-8;
    const VerificationReport rep = check_convex(
        [&](double t) { return std::log(eval_even_poly(c, std::exp(t))); },
        linspace(-3.0, -0.1, 15), cs);
    CHECK(rep.passed);
    CHECK_FALSE(rep.degraded);
  }
}

TEST_CASE("weight construction guards") {
  CHECK(code_of([] {
          make_weight(
              "down", [](double t) { return -t; }, [](double) { return -1.0; });
        }) == errc::invalid_parameter);
  CHECK(code_of([] {
          make_weight(
              "nan", [](double t) { return std::sqrt(t - 0.5); },
              [](double t) { return 0.5 / std::sqrt(t - 0.5); });
        }) == errc::invalid_parameter);
  CHECK(code_of([] { make_weight("empty", nullptr, nullptr); }) ==
        errc::invalid_parameter);

  const WeightSpec ss = weight_smoothstep();
  CHECK(ss.phi(1.0) == 1.0);
  CHECK(ss.phi_prime(1.0) == 0.0);
  CHECK(weight_identity().phi(0.3) == 0.3);
}
