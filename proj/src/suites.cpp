#include "qvlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "qvlab/harmonic.hpp"
#include "qvlab/registry.hpp"

namespace qvlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

std::vector<double> concat(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

QuadratureSpec tighten(QuadratureSpec q) {
  q.abs_tol = std::min(q.abs_tol, 1e-13);
  q.rel_tol = std::min(q.rel_tol, 1e-12);
  return q;
}

struct Claim {
  std::string id;
  double tol;
  std::function<VerificationReport()> run;
};

struct Builder {
  QuadratureSpec quad;
  std::optional<double> tol_override;
  std::vector<Claim> claims;

  double tol(double def) const { return tol_override.value_or(def); }
  void add(std::string id, double t, std::function<VerificationReport()> fn) {
    claims.push_back({std::move(id), t, std::move(fn)});
  }
};

// A must-hold claim from pointwise margins; passes iff min margin >= -tol.
VerificationReport margin_claim(const std::string& id, std::vector<double> grid,
                                double tol,
                                const std::function<double(double)>& margin_at) {
  if (grid.empty()) fail(errc::invalid_parameter, "margin claim needs a grid");
  VerificationReport rep;
  rep.claim_id = id;
  rep.tolerance = tol;
  rep.expectation = Expectation::must_hold;
  rep.worst_margin = kInf;
  rep.witness = grid.front();
  for (double x : grid) {
    const double m = margin_at(x);
    if (!std::isfinite(m))
      fail(errc::nonfinite, "claim margin is not finite within " + id);
    if (m < rep.worst_margin) {
      rep.worst_margin = m;
      rep.witness = x;
    }
  }
  rep.grid = std::move(grid);
  rep.passed = rep.worst_margin >= -tol;
  return rep;
}

// Largest |residual| of the least-squares line through (x, y).
double max_affine_residual(const std::vector<double>& x,
                           const std::vector<double>& y, double* worst_at) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / n;
  double worst = 0.0;
  *worst_at = x.front();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double res = std::abs(y[i] - slope * x[i] - icpt);
    if (res > worst) {
      worst = res;
      *worst_at = x[i];
    }
  }
  return worst;
}

// Guarded dellis radius grids: two segments off the critical radius 1/2 whose
// pairwise midpoints stay at least 5e-3 away from it.
std::vector<double> dellis_grid(int per_segment) {
  return concat(linspace(0.05, 0.45, per_segment),
                linspace(0.56, 0.96, per_segment));
}

void build_prop12(Builder& b) {
  const QuadratureSpec quad = b.quad;
  const auto tgrid = concat(linspace(-3.0, -0.75, 12), linspace(-0.6, -0.1, 12));

  for (const char* which : {"monotone", "convex"}) {
    const std::string id = std::string("prop1.2/a-") + which + "-dellis";
    const double tol = b.tol(1e-7);
    const bool convex = which[0] == 'c';
    b.add(id, tol, [=] {
      const QFunction f = make_function("dellis");
      const Curve a = [=](double t) { return log_growth(f, t, quad); };
      CheckSpec cs;
      cs.claim_id = id;
      cs.tol = tol;
      cs.dspec.domain_hi = -1e-12;
      return convex ? check_convex(a, tgrid, cs) : check_monotone(a, tgrid, cs);
    });
  }

  const std::pair<const char*, const char*> affine[] = {
      {"prop1.2/a-affine-cone", "roots:2,1,0"},
      {"prop1.2/a-affine-homog", "homog:0.5,roots2"},
      {"prop1.2/a-affine-cube-root", "cube-root"},
  };
  for (const auto& [id_c, fn_c] : affine) {
    const std::string id = id_c, fn = fn_c;
    const double tol = b.tol(1e-8);
    b.add(id, tol, [=] {
      const QFunction f = make_function(fn);
      const auto tg = linspace(-3.0, -0.1, 15);
      std::vector<double> av(tg.size());
      for (std::size_t i = 0; i < tg.size(); ++i)
        av[i] = log_growth(f, tg[i], quad);
      VerificationReport rep;
      rep.claim_id = id;
      rep.tolerance = tol;
      rep.grid = tg;
      rep.worst_margin = -max_affine_residual(tg, av, &rep.witness);
      rep.passed = rep.worst_margin >= -tol;
      return rep;
    });
  }
}

void build_thm12(Builder& b) {
  const QuadratureSpec quad = b.quad;
  struct Row {
    const char* fn;
    double n;  // Q/2
    std::vector<double> grid;
  };
  const std::vector<Row> rows = {{"dellis", 1.0, dellis_grid(9)},
                                 {"cube-root", 1.5, linspace(0.1, 0.9, 9)}};
  for (const Row& row : rows) {
    for (const char* which : {"monotone", "convex"}) {
      const std::string id =
          std::string("thm1.2/h-halfQ-") + which + "-" + row.fn;
      const double tol = b.tol(1e-5);
      const bool convex = which[0] == 'c';
      const std::string fn = row.fn;
      const double n = row.n;
      const std::vector<double> grid = row.grid;
      b.add(id, tol, [=] {
        const QFunction f = make_function(fn);
        const Curve h = [=](double r) { return h_n(f, n, r, quad); };
        CheckSpec cs;
        cs.claim_id = id;
        cs.tol = tol;
        cs.dspec.step = 0.02;
        cs.dspec.domain_lo = 1e-6;
        cs.dspec.domain_hi = 1.0 - 1e-6;
        return convex ? check_convex(h, grid, cs) : check_monotone(h, grid, cs);
      });
    }
  }
}

void build_prop44(Builder& b) {
  const QuadratureSpec quad = b.quad;
  const std::pair<const char*, bool> rows[] = {
      {"cube-root", false}, {"dellis", true}, {"roots:2,1,0", false}};
  for (const auto& [fn_c, guarded] : rows) {
    const std::string fn = fn_c;
    const std::string id = "prop4.4/r-hbar-convex-" + fn;
    const double tol = b.tol(1e-5);
    const std::vector<double> grid =
        guarded ? dellis_grid(9) : linspace(0.1, 0.9, 9);
    b.add(id, tol, [=] {
      const QFunction f = make_function(fn);
      const Curve rhb = [=](double r) { return r * h_bar(f, r, quad); };
      CheckSpec cs;
      cs.claim_id = id;
      cs.tol = tol;
      cs.dspec.step = 0.02;
      cs.dspec.domain_lo = 1e-6;
      cs.dspec.domain_hi = 1.0 - 1e-6;
      return check_convex(rhb, grid, cs);
    });
  }
}

void build_thm32b(Builder& b) {
  const QuadratureSpec quad = b.quad;
  const std::pair<const char*, double> constant[] = {{"roots:2,1,0", 0.5},
                                                     {"cube-root", 1.0 / 3.0}};
  for (const auto& [fn_c, alpha] : constant) {
    const std::string fn = fn_c;
    const std::string id = "thm3.2b/frequency-constant-" + fn;
    const double tol = b.tol(1e-6);
    const double a = alpha;
    b.add(id, tol, [=] {
      const QFunction f = make_function(fn);
      return margin_claim(id, linspace(0.05, 0.95, 20), tol, [&](double r) {
        return -std::abs(frequency(f, r, quad) - a);
      });
    });
  }

  const std::string id = "thm3.2b/frequency-nondecreasing-dellis";
  const double tol = b.tol(1e-7);
  b.add(id, tol, [=] {
    const QFunction f = make_function("dellis");
    const Curve ic = [=](double r) { return frequency(f, r, quad); };
    CheckSpec cs;
    cs.claim_id = id;
    cs.tol = tol;
    cs.dspec.step = 0.005;
    cs.dspec.domain_lo = 0.0;
    cs.dspec.domain_hi = 1.0;
    return check_monotone(
        ic, concat(linspace(0.05, 0.45, 8), linspace(0.55, 0.95, 8)), cs);
  });
}

void build_prop31(Builder& b) {
  const QuadratureSpec quad = b.quad;
  const QuadratureSpec tq = tighten(b.quad);
  struct Row {
    const char* fn;
    bool guarded;
  };
  const Row rows[] = {{"cube-root", false}, {"dellis", true}, {"roots:2,1,0", false}};

  for (const Row& row : rows) {
    const std::string fn = row.fn;
    const std::vector<double> g50 =
        row.guarded ? dellis_grid(25) : linspace(0.05, 0.95, 50);
    const std::vector<double> g20 =
        row.guarded ? dellis_grid(10) : linspace(0.05, 0.95, 20);

    {
      const std::string id = "prop3.1/eq3.2-" + fn;
      const double tol = b.tol(1e-8);
      b.add(id, tol, [=] {
        const QFunction f = make_function(fn);
        const Curve hs = [=](double s) { return h_sphere(f, s, tq); };
        DerivativeSpec ds;
        ds.step = 0.01;
        ds.domain_lo = 1e-6;
        ds.domain_hi = 1.0 - 1e-6;
        return margin_claim(id, g50, tol, [&](double r) {
          const double hp = derivative(hs, r, 1, ds).value;
          const double res =
              hp - h_sphere(f, r, tq) / r - 2.0 * dirichlet(f, r, tq);
          return -std::abs(res) / std::max(1.0, std::abs(hp));
        });
      });
    }
    {
      const std::string id = "prop3.1/boundary-split-" + fn;
      const double tol = b.tol(1e-10);
      b.add(id, tol, [=] {
        const QFunction f = make_function(fn);
        return margin_claim(id, g20, tol, [&](double r) {
          const double bd = boundary_dirichlet(f, r, quad);
          const double br = boundary_radial_sq(f, r, quad);
          return -std::abs(bd - 2.0 * br) / std::max(1.0, bd);
        });
      });
    }
    {
      const std::string id = "prop3.1/flux-identity-" + fn;
      const double tol = b.tol(1e-8);
      b.add(id, tol, [=] {
        const QFunction f = make_function(fn);
        return margin_claim(id, g20, tol, [&](double r) {
          const double d = dirichlet(f, r, quad);
          const double flux = boundary_radial_flux(f, r, quad);
          return -std::abs(d - flux) / std::max(1.0, d);
        });
      });
    }
  }
}

void build_prop36i(Builder& b) {
  const QuadratureSpec quad = b.quad;
  struct Row {
    const char* fn;
    bool guarded;
  };
  for (const Row& row : {Row{"dellis", true}, Row{"cube-root", false}}) {
    const std::string fn = row.fn;
    const std::string id = "prop3.6i/energy-bound-" + fn;
    const double tol = b.tol(1e-8);
    const std::vector<double> grid =
        row.guarded ? dellis_grid(10) : linspace(0.05, 0.95, 20);
    b.add(id, tol, [=] {
      const QFunction f = make_function(fn);
      return margin_claim(id, grid, tol, [&](double r) {
        const double t = boundary_tangential_sq(f, r, quad);
        return f.q() * r * t - dirichlet(f, r, quad);
      });
    });
  }

  // The cone saturates the bound: D(r) = Q r Dir(g_r) exactly.
  const std::string id = "prop3.6i/energy-bound-sharp-cone";
  const double tol = b.tol(1e-10);
  b.add(id, tol, [=] {
    const QFunction f = make_function("roots:2,1,0");
    return margin_claim(id, linspace(0.05, 0.95, 20), tol, [&](double r) {
      const double t = boundary_tangential_sq(f, r, quad);
      return -std::abs(f.q() * r * t - dirichlet(f, r, quad));
    });
  });
}

void build_cor48(Builder& b) {
  const QuadratureSpec quad = b.quad;
  std::vector<double> rfit;
  for (int k = 0; k < 10; ++k)
    rfit.push_back(0.02 * std::pow(10.0, static_cast<double>(k) / 9.0));

  const std::pair<const char*, int> rows[] = {{"cube-root", 3},
                                              {"roots:2,1,0", 2}};
  for (const auto& [fn_c, qq] : rows) {
    const std::string fn = fn_c;
    const std::string id = "cor4.8/exponent-bound-" + fn;
    const double tol = b.tol(1e-6);
    const int q = qq;
    b.add(id, tol, [=] {
      const QFunction f = make_function(fn);
      const double alpha =
          0.5 * fit_loglog_slope([=](double r) { return h_bar(f, r, quad); }, rfit);
      CheckSpec cs;
      cs.claim_id = id;
      cs.tol = tol;
      return check_homogeneity_bound(alpha, q, 2, std::nullopt, cs);
    });
  }

  const std::string id = "cor4.8/exponent-equality-cube-root";
  const double tol = b.tol(1e-6);
  b.add(id, tol, [=] {
    const QFunction f = make_function("cube-root");
    const double alpha =
        0.5 * fit_loglog_slope([=](double r) { return h_bar(f, r, quad); }, rfit);
    return margin_claim(id, {alpha}, tol,
                        [](double a) { return -std::abs(a - 1.0 / 3.0); });
  });
}

void build_thm11(Builder& b) {
  const QuadratureSpec tq = tighten(b.quad);
  struct Combo {
    int m;
    const char* terms;
  };
  const std::vector<Combo> combos = {
      {2, "1+Re(z)+Im(z^2)"},
      {2, "Re(z)"},
      {2, "1-0.5*Im(z^3)"},
      {2, "0.5*Re(z^2)+0.25*Im(z^4)"},
      {2, "2+Re(z^5)"},
      {3, "Y(1,0)+0.5*Y(2,1)"},
      {3, "1+0.25*Y(3,-2)"},
  };

  for (const Combo& c : combos) {
    const int m = c.m;
    const std::string terms = c.terms;
    const std::string id =
        "thm1.1/m=" + std::to_string(m) + ";" + terms;
    const double tol = b.tol(1e-4);
    b.add(id, tol, [=] {
      Theorem11Spec ts;
      ts.claim_id = id;
      ts.tol = tol;
      ts.quad = tq;
      const int order = m == 2 ? 6 : 4;
      const auto grid =
          m == 2 ? linspace(0.4, 0.6, 5) : linspace(0.25, 0.75, 5);
      return verify_theorem_1_1(parse_harmonic_combo(m, terms), order, grid, ts);
    });
  }

  const std::string id = "thm1.1/closed-vs-quadrature";
  const double tol = b.tol(1e-10);
  b.add(id, tol, [=] {
    std::vector<std::pair<QFunction, std::vector<double>>> pairs;
    for (const Combo& c : combos) {
      const HarmonicCombo u = parse_harmonic_combo(c.m, c.terms);
      pairs.emplace_back(to_qfunction(u), h_bar_closed_form(u));
    }
    return margin_claim(id, linspace(0.1, 0.9, 9), tol, [&](double r) {
      double worst = kInf;
      for (const auto& [f, coeffs] : pairs) {
        const double poly = eval_even_poly(coeffs, r);
        const double rel = std::abs(h_bar(f, r, tq) - poly) /
                           std::max(1.0, std::abs(poly));
        worst = std::min(worst, -rel);
      }
      return worst;
    });
  });
}

void build_prop51(Builder& b) {
  const QuadratureSpec quad = b.quad;
  const std::string planar_terms = "Re(z)+0.5*Im(z^2)";
  const std::string solid_terms = "Y(1,0)+0.5*Y(2,1)";

  struct Row {
    const char* id;
    int m;
    bool smooth;
    std::vector<double> radii;
  };
  const std::vector<Row> rows = {
      {"prop5.1/d-prime-identity-planar-identity-weight", 2, false, {0.3, 0.6, 0.85}},
      {"prop5.1/d-prime-identity-planar-smoothstep", 2, true, {0.3, 0.6, 0.85}},
      {"prop5.1/d-prime-identity-solid-identity-weight", 3, false, {0.5, 0.8}},
  };
  for (const Row& row : rows) {
    const std::string id = row.id;
    const double tol = b.tol(1e-7);
    const int m = row.m;
    const bool smooth = row.smooth;
    const std::vector<double> radii = row.radii;
    b.add(id, tol, [=] {
      const HarmonicCombo u =
          parse_harmonic_combo(m, m == 2 ? planar_terms : solid_terms);
      const WeightSpec w = smooth ? weight_smoothstep() : weight_identity();
      return margin_claim(id, radii, tol, [&](double r) {
        const double lhs =
            derivative([&](double s) { return weighted_d(u, w, s, quad); }, r, 1)
                .value;
        const double rhs = weighted_d_prime_rhs(u, w, r, quad);
        return -std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
      });
    });
  }

  // d/dr of the ball mass against the boundary growth: polynomial-exact
  // quadrature (piecewise Gauss-Legendre of an even polynomial) keeps the
  // finite-difference path clean.
  QuadratureSpec qv = b.quad;
  qv.circle_nodes = 256;
  qv.radial_depth = 8;
  qv.radial_gl = 16;
  struct VRow {
    const char* id;
    int m;
    std::vector<double> radii;
  };
  const std::vector<VRow> vrows = {
      {"prop5.1/volume-derivative-planar", 2, {0.35, 0.6, 0.85}},
      {"prop5.1/volume-derivative-solid", 3, {0.4, 0.75}},
  };
  for (const VRow& row : vrows) {
    const std::string id = row.id;
    const double tol = b.tol(1e-8);
    const int m = row.m;
    const std::vector<double> radii = row.radii;
    b.add(id, tol, [=] {
      const HarmonicCombo u =
          parse_harmonic_combo(m, m == 2 ? planar_terms : solid_terms);
      const QFunction f = to_qfunction(u);
      const double cm = m == 2 ? 2.0 * kPi : 4.0 * kPi;
      return margin_claim(id, radii, tol, [&](double r) {
        DerivativeSpec ds;
        ds.max_levels = 6;
        const double lhs =
            derivative([&](double s) { return volume_abs_sq(f, s, qv); }, r, 1, ds)
                .value;
        const double rhs = cm * std::pow(r, m - 1) * h_bar(f, r, qv);
        return -std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
      });
    });
  }

  {
    const std::string id = "prop5.1/laplacian-doubling-identity";
    const double tol = b.tol(1e-8);
    b.add(id, tol, [=] {
      const HarmonicCombo u2 = parse_harmonic_combo(2, planar_terms);
      const HarmonicCombo u3 = parse_harmonic_combo(3, solid_terms);
      const std::vector<std::pair<const HarmonicCombo*, Vec>> pts = {
          {&u2, {0.3, 0.4}},        {&u2, {-0.5, 0.2}},
          {&u2, {0.1, -0.7}},       {&u3, {0.3, -0.4, 0.5}},
          {&u3, {-0.2, 0.6, -0.3}},
      };
      return margin_claim(id, linspace(0.0, 4.0, 5), tol, [&](double idx) {
        const auto& [u, x] = pts[static_cast<std::size_t>(idx)];
        double lap = 0.0;
        for (std::size_t ax = 0; ax < x.size(); ++ax) {
          const Curve slice = [&, ax](double t) {
            Vec y = x;
            y[ax] = t;
            const double v = eval(*u, y);
            return v * v;
          };
          lap += derivative(slice, x[ax], 2).value;
        }
        const Vec g = gradient(*u, x);
        double gs = 0.0;
        for (double c : g) gs += c * c;
        return -std::abs(lap - 2.0 * gs) / std::max(1.0, 2.0 * gs);
      });
    });
  }

  {
    const std::string id = "prop5.1/converse-derivative-exact";
    b.add(id, 0.0, [=] {
      return margin_claim(id, linspace(0.1, 0.9, 9), 0.0, [](double r) {
        return -std::abs(converse_example_d_prime(r) - 2.0 * std::pow(r, 4));
      });
    });
  }
  {
    const std::string id = "prop5.1/converse-abs-monotone-derivative";
    const double tol = b.tol(1e-7);
    b.add(id, tol, [=] {
      CheckSpec cs;
      cs.claim_id = id;
      cs.tol = tol;
      return check_abs_monotonic(converse_example_d_prime, 4,
                                 linspace(0.2, 0.8, 5), cs);
    });
  }
}

void build_cex_cube(Builder& b) {
  const QuadratureSpec quad = b.quad;
  const QuadratureSpec tq = tighten(b.quad);

  {
    const std::string id = "cex-cube-root/hbar-closed-form";
    const double tol = b.tol(1e-10);
    b.add(id, tol, [=] {
      const QFunction f = make_function("cube-root");
      return margin_claim(id, linspace(0.02, 0.98, 50), tol, [&](double r) {
        const double cf = 3.0 * std::pow(r, 2.0 / 3.0);
        return -std::abs(h_bar(f, r, quad) - cf) / cf;
      });
    });
  }
  {
    const std::string id = "cex-cube-root/volume-closed-form";
    const double tol = b.tol(1e-8);
    b.add(id, tol, [=] {
      const QFunction f = make_function("cube-root");
      return margin_claim(id, linspace(0.05, 0.95, 10), tol, [&](double r) {
        const double cf = 2.25 * kPi * std::pow(r, 8.0 / 3.0);
        return -std::abs(volume_abs_sq(f, r, quad) - cf) / cf;
      });
    });
  }
  {
    const std::string id = "cex-cube-root/hbar-concave";
    const double tol = b.tol(1e-6);
    b.add(id, tol, [=] {
      const QFunction f = make_function("cube-root");
      const Curve hb = [=](double r) { return h_bar(f, r, tq); };
      DerivativeSpec ds;
      ds.step = 0.02;
      ds.domain_lo = 1e-6;
      ds.domain_hi = 1.0 - 1e-6;
      return margin_claim(id, linspace(0.1, 0.9, 17), tol, [&](double r) {
        return -derivative(hb, r, 2, ds).value;
      });
    });
  }
  {
    const std::string id = "cex-cube-root/abs-monotonicity-fails-order-2";
    const double tol = b.tol(1e-3);
    b.add(id, tol, [=] {
      const QFunction f = make_function("cube-root");
      CheckSpec cs;
      cs.claim_id = id;
      cs.tol = tol;
      cs.expectation = Expectation::must_fail;
      cs.dspec.step = 0.02;
      cs.dspec.domain_lo = 1e-6;
      cs.dspec.domain_hi = 1.0 - 1e-6;
      return check_abs_monotonic([=](double r) { return h_bar(f, r, tq); }, 2,
                                 {0.9}, cs);
    });
  }
}

void build_cex_dellis(Builder& b) {
  const QuadratureSpec quad = b.quad;
  const QuadratureSpec tq = tighten(b.quad);

  {
    const std::string id = "cex-dellis-3rd/A2-positive";
    const double tol = b.tol(1e-9);
    b.add(id, tol, [=] {
      return margin_claim(
          id, concat(linspace(0.05, 0.45, 9), linspace(0.55, 0.95, 9)), tol,
          [&](double rho) { return a_integral(rho, 2, quad); });
    });
  }
  {
    const std::string id = "cex-dellis-3rd/A3-negative-beyond-half";
    const double tol = b.tol(1e-9);
    b.add(id, tol, [=] {
      return margin_claim(id, linspace(0.55, 0.95, 9), tol, [&](double rho) {
        return -a_integral(rho, 3, quad) - 0.01;
      });
    });
  }
  {
    const std::string id = "cex-dellis-3rd/A3-dual-path";
    const double tol = b.tol(1e-5);
    b.add(id, tol, [=] {
      const Curve a0 = [=](double rho) { return a_integral(rho, 0, tq); };
      DerivativeSpec ds;
      ds.step = 0.06;
      ds.domain_lo = 0.0;
      ds.domain_hi = 1.0 - 1e-9;
      return margin_claim(id, {0.6, 0.75, 0.85}, tol, [&](double rho) {
        const double fd = derivative(a0, rho, 3, ds).value;
        const double an = a_integral(rho, 3, tq);
        return -std::abs(fd - an) / std::max(1.0, std::abs(an));
      });
    });
  }
  {
    const std::string id = "cex-dellis-3rd/hbar-matches-A";
    const double tol = b.tol(1e-11);
    b.add(id, tol, [=] {
      const QFunction f = make_function("dellis");
      return margin_claim(id, dellis_grid(10), tol, [&](double r) {
        const double viaA = a_integral(r, 0, quad) / kPi;
        return -std::abs(h_bar(f, r, quad) - viaA) / std::max(1.0, viaA);
      });
    });
  }
}

void build_lemma52(Builder& b) {
  for (double r : {0.3, 0.7}) {
    const std::string id =
        r < 0.5 ? "lemma5.2/converges-r0.3" : "lemma5.2/converges-r0.7";
    const double tol = b.tol(1e-6);
    b.add(id, tol, [=] {
      return margin_claim(id, {r}, tol, [](double rr) {
        const double coarse = lemma52_energy(rr, 4096);
        const double fine = lemma52_energy(rr, 8192);
        return -std::abs(fine - coarse) / std::abs(fine);
      });
    });
  }

  // Estimates capped at 1e9 so the margin stays JSON-representable; the cap
  // only matters when the estimator has already blown past every bound.
  const auto capped = [](double r, int nodes) {
    return std::min(lemma52_energy(r, nodes), 1e9);
  };
  {
    const std::string id = "lemma5.2/unbounded-at-half";
    b.add(id, 0.0, [=] {
      return margin_claim(id, {0.5}, 0.0, [&](double r) {
        return std::min(capped(r, 1024), capped(r, 1 << 18)) - 1e3;
      });
    });
  }
  for (double r : {0.5 + 1e-6, 0.5 - 1e-6}) {
    const std::string id = r > 0.5 ? "lemma5.2/unbounded-near-half-above"
                                   : "lemma5.2/unbounded-near-half-below";
    b.add(id, 0.0, [=] {
      return margin_claim(id, {r}, 0.0,
                          [&](double rr) { return capped(rr, 1 << 18) - 1e3; });
    });
  }
}

using BuildFn = void (*)(Builder&);

const std::vector<std::pair<std::string, BuildFn>>& suite_table() {
  static const std::vector<std::pair<std::string, BuildFn>> table = {
      {"prop1.2", build_prop12},
      {"thm1.2", build_thm12},
      {"prop4.4", build_prop44},
      {"thm3.2b", build_thm32b},
      {"prop3.1", build_prop31},
      {"prop3.6i", build_prop36i},
      {"cor4.8", build_cor48},
      {"thm1.1", build_thm11},
      {"prop5.1", build_prop51},
      {"cex-cube-root", build_cex_cube},
      {"cex-dellis-3rd", build_cex_dellis},
      {"lemma5.2-finiteness", build_lemma52},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suite_table()) names.push_back(name);
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  const auto& table = suite_table();
  const auto it =
      std::find_if(table.begin(), table.end(),
                   [&](const auto& row) { return row.first == name; });
  if (it == table.end())
    fail(errc::unknown_suite, "unknown suite '" + name + "'");

  Builder b;
  b.quad = opt.quad.value_or(QuadratureSpec{});
  b.tol_override = opt.tol;
  it->second(b);

  SuiteResult out;
  out.name = name;
  for (const Claim& claim : b.claims) {
    try {
      out.reports.push_back(claim.run());
    } catch (const Error&) {
      VerificationReport rep;
      rep.claim_id = claim.id;
      rep.tolerance = claim.tol;
      rep.passed = false;
      rep.worst_margin = -kInf;
      rep.witness = std::numeric_limits<double>::quiet_NaN();
      rep.degraded = true;
      out.reports.push_back(rep);
    }
  }
  for (const VerificationReport& rep : out.reports)
    if (rep.passed) ++out.passed_count;
  out.passed = !out.reports.empty() &&
               out.passed_count == static_cast<int>(out.reports.size());
  return out;
}

nlohmann::ordered_json suite_to_json(const SuiteResult& result) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const VerificationReport& rep : result.reports)
    arr.push_back(report_to_json(rep));
  return arr;
}

std::string suite_summary(const SuiteResult& result) {
  return "PASSED " + std::to_string(result.passed_count) + "/" +
         std::to_string(result.reports.size());
}

}  // namespace qvlab
