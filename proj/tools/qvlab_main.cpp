// Command-line surface: growth curves to CSV, verification suites to JSON,
// and the two counterexample derivative curves. Data files are byte
// deterministic; timestamps live only in the .meta sidecar.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qvlab/calculus.hpp"
#include "qvlab/growth.hpp"
#include "qvlab/registry.hpp"
#include "qvlab/suites.hpp"

namespace {

using qvlab::errc;
using qvlab::fail;

// Raised instead of shifting the grid when --strict is in force; exit 3.
struct StrictViolation {
  std::string message;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    fail(errc::bad_config, "config key '" + key + "': bad number '" + s + "'");
  return v;
}

long parse_long(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size())
    fail(errc::bad_config, "config key '" + key + "': bad integer '" + s + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  fail(errc::bad_config, "config key '" + key + "': bad boolean '" + s + "'");
}

// Flat key = value file; '#' starts a comment line; flags take precedence.
using Config = std::map<std::string, std::string>;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "fn",          "functional",      "grid",         "order",
      "tol",         "strict",          "out",          "suite",
      "circle_nodes", "max_circle_nodes", "sphere_polar", "sphere_azimuth",
      "radial_depth", "radial_gl",       "abs_tol",      "rel_tol"};
  return keys;
}

Config read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_config, "cannot open config file '" + path + "'");
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      fail(errc::bad_config, "config line " + std::to_string(lineno) +
                                 ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (!known_keys().count(key))
      fail(errc::bad_config, "config line " + std::to_string(lineno) +
                                 ": unknown key '" + key + "'");
    cfg[key] = val;  // last occurrence wins
  }
  return cfg;
}

// flags > config file > defaults
std::optional<std::string> resolve(const CLI::App& cmd, const std::string& flag,
                                   const std::string& flag_value,
                                   const Config& cfg, const std::string& key) {
  if (cmd.count(flag) > 0) return flag_value;
  const auto it = cfg.find(key);
  if (it != cfg.end()) return it->second;
  return std::nullopt;
}

qvlab::QuadratureSpec quad_from(const Config& cfg, std::optional<double> tol) {
  qvlab::QuadratureSpec q;
  const auto tune = [&](const char* key, int& field) {
    const auto it = cfg.find(key);
    if (it != cfg.end()) field = static_cast<int>(parse_long(key, it->second));
  };
  tune("circle_nodes", q.circle_nodes);
  tune("max_circle_nodes", q.max_circle_nodes);
  tune("sphere_polar", q.sphere_polar);
  tune("sphere_azimuth", q.sphere_azimuth);
  tune("radial_depth", q.radial_depth);
  tune("radial_gl", q.radial_gl);
  if (cfg.count("abs_tol")) q.abs_tol = parse_double("abs_tol", cfg.at("abs_tol"));
  if (cfg.count("rel_tol")) q.rel_tol = parse_double("rel_tol", cfg.at("rel_tol"));
  if (tol) {
    q.abs_tol = *tol;
    q.rel_tol = *tol;
  }
  qvlab::validate_quadrature(q);
  return q;
}

bool has_quad_keys(const Config& cfg) {
  for (const char* key : {"circle_nodes", "max_circle_nodes", "sphere_polar",
                          "sphere_azimuth", "radial_depth", "radial_gl",
                          "abs_tol", "rel_tol"})
    if (cfg.count(key)) return true;
  return false;
}

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

GridSpec parse_grid(const std::string& s) {
  const auto c1 = s.find(':');
  const auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos ||
      s.find(':', c2 + 1) != std::string::npos)
    fail(errc::bad_config, "--grid expects min:max:count, got '" + s + "'");
  GridSpec g;
  g.lo = parse_double("grid", s.substr(0, c1));
  g.hi = parse_double("grid", s.substr(c1 + 1, c2 - c1 - 1));
  g.count = static_cast<int>(parse_long("grid", s.substr(c2 + 1)));
  if (g.count < 8)
    fail(errc::bad_config, "--grid needs at least 8 points, got " +
                               std::to_string(g.count));
  return g;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

// Grid points closer than half the spacing to a critical radius are snapped
// onto the half-spacing ring around it (the spacing guarantees at most one
// point per window, so ordering survives). --strict refuses instead.
std::vector<double> guard_grid(std::vector<double> grid,
                               const std::vector<double>& crits, bool strict) {
  if (grid.size() < 2 || crits.empty()) return grid;
  const double s = grid[1] - grid[0];
  for (double c : crits) {
    for (double& g : grid) {
      if (std::abs(g - c) >= 0.5 * s) continue;
      const double to = g <= c ? c - 0.5 * s : c + 0.5 * s;
      if (strict)
        throw StrictViolation{"grid point " + fmt17(g) +
                              " is within half a step of critical radius " +
                              fmt17(c) + " (strict mode refuses to shift)"};
      std::cerr << "warning: grid point " << fmt17(g) << " shifted to "
                << fmt17(to) << " (critical radius " << fmt17(c) << ")\n";
      g = to;
    }
  }
  return grid;
}

std::string iso_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::bad_config, "cannot open output file '" + path + "'");
  f << body;
  f.flush();
  if (!f) fail(errc::bad_config, "failed writing '" + path + "'");
}

// Payload to --out (with a .meta sidecar holding the only timestamp) or to
// stdout (no sidecar).
void emit(const std::optional<std::string>& out, const std::string& payload,
          const std::vector<std::pair<std::string, std::string>>& meta) {
  if (!out) {
    std::cout << payload;
    return;
  }
  write_file(*out, payload);
  std::string side =
      "# qvlab run metadata; the data file itself is byte-deterministic and "
      "carries no timestamps\n";
  for (const auto& [k, v] : meta) side += k + " = " + v + "\n";
  side += "generated_at = " + iso_now() + "\n";
  write_file(*out + ".meta", side);
}

int run_growth(const CLI::App& cmd, const std::string& fn_flag,
               const std::string& functional_flag, const std::string& grid_flag,
               double tol_flag, bool strict_flag, const std::string& out_flag,
               const Config& cfg) {
  const auto fn = resolve(cmd, "--fn", fn_flag, cfg, "fn");
  const auto functional =
      resolve(cmd, "--functional", functional_flag, cfg, "functional");
  const auto grid_s = resolve(cmd, "--grid", grid_flag, cfg, "grid");
  if (!fn) fail(errc::bad_config, "growth needs --fn (or 'fn' in the config)");
  if (!functional) fail(errc::bad_config, "growth needs --functional");
  if (!grid_s) fail(errc::bad_config, "growth needs --grid min:max:count");

  std::optional<double> tol;
  if (cmd.count("--tol") > 0)
    tol = tol_flag;
  else if (cfg.count("tol"))
    tol = parse_double("tol", cfg.at("tol"));
  const bool strict = cmd.count("--strict") > 0
                          ? strict_flag
                          : (cfg.count("strict") &&
                             parse_bool("strict", cfg.at("strict")));
  const auto out = resolve(cmd, "--out", out_flag, cfg, "out");

  const GridSpec gs = parse_grid(*grid_s);
  const bool log_time = *functional == "a";
  if (log_time) {
    if (!(gs.lo < gs.hi && gs.hi < 0.0))
      fail(errc::bad_config,
           "functional 'a' samples log-time: --grid needs min < max < 0");
  } else if (!(0.0 < gs.lo && gs.lo < gs.hi && gs.hi < 1.0)) {
    fail(errc::bad_config, "--grid needs 0 < min < max < 1");
  }

  const qvlab::QFunction f = qvlab::make_function(*fn);

  // The A-integral family has its own kink at rho = 1/2 and ignores --fn.
  std::vector<double> crits;
  if (functional->size() >= 1 && (*functional)[0] == 'A') {
    crits = {0.5};
  } else {
    // A branch point strictly inside (or at) the origin never lies on a
    // positive sampling circle; only radii in (0,1) can put the kink on it.
    for (double c : f.singular().critical_radii)
      if (c > 0.0 && c < 1.0) crits.push_back(log_time ? std::log(c) : c);
  }

  const std::vector<double> grid =
      guard_grid(linspace(gs.lo, gs.hi, gs.count), crits, strict);
  const qvlab::QuadratureSpec quad = quad_from(cfg, tol);

  const qvlab::GrowthCurve curve =
      qvlab::growth_curve(f, *functional, grid, quad);
  std::vector<std::pair<std::string, std::string>> meta = {
      {"command", "growth"},
      {"fn", *fn},
      {"functional", *functional},
      {"grid", *grid_s},
      {"strict", strict ? "true" : "false"},
  };
  if (tol) meta.emplace_back("tol", fmt17(*tol));
  emit(out, qvlab::to_csv(curve), meta);
  return 0;
}

int run_verify(const CLI::App& cmd, const std::string& pos_suite,
               const std::string& suite_flag, double tol_flag,
               const std::string& out_flag, const Config& cfg) {
  std::optional<std::string> name;
  if (cmd.count("name") > 0) name = pos_suite;
  const auto flag_name = resolve(cmd, "--suite", suite_flag, cfg, "suite");
  if (name && cmd.count("--suite") > 0 && *name != suite_flag)
    fail(errc::bad_config, "conflicting suite names '" + *name + "' and '" +
                               suite_flag + "'");
  if (!name) name = flag_name;
  if (!name)
    fail(errc::bad_config, "verify needs a suite name or 'all'");

  qvlab::SuiteOptions so;
  if (cmd.count("--tol") > 0)
    so.tol = tol_flag;
  else if (cfg.count("tol"))
    so.tol = parse_double("tol", cfg.at("tol"));
  if (has_quad_keys(cfg)) so.quad = quad_from(cfg, std::nullopt);
  const auto out = resolve(cmd, "--out", out_flag, cfg, "out");

  std::string payload;
  std::string summary;
  bool all_passed = true;
  if (*name == "all") {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    int claims = 0, passed = 0;
    for (const std::string& n : qvlab::suite_names()) {
      const qvlab::SuiteResult s = qvlab::run_suite(n, so);
      obj[n] = qvlab::suite_to_json(s);
      summary += n + ": " + qvlab::suite_summary(s) + "\n";
      claims += static_cast<int>(s.reports.size());
      passed += s.passed_count;
      all_passed = all_passed && s.passed;
    }
    summary += "PASSED " + std::to_string(passed) + "/" +
               std::to_string(claims) + "\n";
    payload = obj.dump(2) + "\n";
  } else {
    const qvlab::SuiteResult s = qvlab::run_suite(*name, so);
    summary = qvlab::suite_summary(s) + "\n";
    payload = qvlab::suite_to_json(s).dump(2) + "\n";
    all_passed = s.passed;
  }

  std::vector<std::pair<std::string, std::string>> meta = {
      {"command", "verify"}, {"suite", *name}};
  if (so.tol) meta.emplace_back("tol", fmt17(*so.tol));
  emit(out, payload, meta);
  // keep stdout pure JSON when it carries the payload
  (out ? std::cout : std::cerr) << summary;
  return all_passed ? 0 : 1;
}

int run_counterexample(const CLI::App& cmd, const std::string& name,
                       int order_flag, double tol_flag,
                       const std::string& out_flag, const Config& cfg) {
  std::optional<double> tol;
  if (cmd.count("--tol") > 0)
    tol = tol_flag;
  else if (cfg.count("tol"))
    tol = parse_double("tol", cfg.at("tol"));
  std::optional<int> order;
  if (cmd.count("--order") > 0)
    order = order_flag;
  else if (cfg.count("order"))
    order = static_cast<int>(parse_long("order", cfg.at("order")));
  const auto out = resolve(cmd, "--out", out_flag, cfg, "out");

  std::string csv;
  if (name == "cube-root") {
    const int k = order.value_or(2);
    if (k < 1 || k > 6)
      fail(errc::bad_config, "cube-root counterexample: --order must be 1..6");
    qvlab::QuadratureSpec quad = quad_from(cfg, tol);
    if (!tol) {
      quad.abs_tol = std::min(quad.abs_tol, 1e-13);
      quad.rel_tol = std::min(quad.rel_tol, 1e-12);
    }
    const qvlab::QFunction f = qvlab::make_function("cube-root");
    qvlab::DerivativeSpec ds;
    ds.step = 0.02;
    ds.domain_lo = 1e-6;
    ds.domain_hi = 1.0 - 1e-6;
    csv = "rho,d" + std::to_string(k) + "Hbar\n";
    for (double rho : linspace(0.05, 0.95, 46)) {
      const double v =
          qvlab::derivative(
              [&](double s) { return qvlab::h_bar(f, s, quad); }, rho, k, ds)
              .value;
      csv += fmt17(rho) + "," + fmt17(v) + "\n";
    }
  } else if (name == "dellis") {
    const int k = order.value_or(3);
    if (k < 0 || k > 3)
      fail(errc::bad_config, "dellis counterexample: --order must be 0..3");
    const qvlab::QuadratureSpec quad = quad_from(cfg, tol);
    std::vector<double> grid = {0.3};
    for (double rho : linspace(0.55, 0.95, 21)) grid.push_back(rho);
    csv = "rho,A" + std::to_string(k) + "\n";
    for (double rho : grid)
      csv += fmt17(rho) + "," + fmt17(qvlab::a_integral(rho, k, quad)) + "\n";
  } else {
    fail(errc::unknown_function,
         "unknown counterexample '" + name + "' (try cube-root or dellis)");
  }

  std::vector<std::pair<std::string, std::string>> meta = {
      {"command", "counterexample"}, {"name", name}};
  if (order) meta.emplace_back("order", std::to_string(*order));
  if (tol) meta.emplace_back("tol", fmt17(*tol));
  emit(out, csv, meta);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qvlab: quadrature laboratory for multivalued growth functionals"};
  app.set_version_flag("--version", "qvlab 0.1.0");
  app.require_subcommand(1);

  std::string g_fn, g_functional, g_grid, g_out, g_config;
  double g_tol = 0.0;
  bool g_strict = false;
  CLI::App* growth = app.add_subcommand(
      "growth", "Sample a growth functional over a grid and emit CSV");
  growth->add_option("--fn", g_fn,
                     "registry id: cube-root | dellis | roots:q,a,b | "
                     "homog:alpha,profile | harm:m=2;terms | harm:m=3;terms");
  growth->add_option("--functional", g_functional,
                     "H | Hbar | D | I | hN:<N> | a | A | A1 | A2 | A3");
  growth->add_option(
      "--grid", g_grid,
      "min:max:count with count >= 8; radii in (0,1), except functional 'a' "
      "which samples log-time (min < max < 0)");
  growth->add_option("--tol", g_tol,
                     "quadrature tolerance override (absolute and relative)");
  growth->add_flag("--strict", g_strict,
                   "exit 3 when the grid touches a critical radius instead of "
                   "shifting the offending point");
  growth->add_option("--out", g_out,
                     "CSV path; run metadata goes to <out>.meta (stdout and "
                     "no sidecar if omitted)");
  growth->add_option("--config", g_config,
                     "flat 'key = value' config file; flags take precedence");

  std::string v_pos, v_suite, v_out, v_config;
  double v_tol = 0.0;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run a named verification suite (or 'all') and emit JSON");
  verify->add_option("name", v_pos, "suite name or 'all'");
  verify->add_option("--suite", v_suite, "suite name or 'all'");
  verify->add_option("--tol", v_tol, "per-claim tolerance override");
  verify->add_option("--out", v_out,
                     "JSON path; summaries still print to stdout");
  verify->add_option("--config", v_config,
                     "flat 'key = value' config file; flags take precedence");

  std::string c_name, c_out, c_config;
  int c_order = 0;
  double c_tol = 0.0;
  CLI::App* cex = app.add_subcommand(
      "counterexample",
      "Emit the derivative curve behind a counterexample as CSV");
  cex->add_option("name", c_name, "cube-root | dellis")->required();
  cex->add_option("--order", c_order,
                  "derivative order (defaults: 2 for cube-root, 3 for dellis)");
  cex->add_option("--tol", c_tol, "quadrature tolerance override");
  cex->add_option("--out", c_out, "CSV path; metadata goes to <out>.meta");
  cex->add_option("--config", c_config,
                  "flat 'key = value' config file; flags take precedence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (growth->parsed()) {
      const Config cfg = g_config.empty() ? Config{} : read_config(g_config);
      return run_growth(*growth, g_fn, g_functional, g_grid, g_tol, g_strict,
                        g_out, cfg);
    }
    if (verify->parsed()) {
      const Config cfg = v_config.empty() ? Config{} : read_config(v_config);
      return run_verify(*verify, v_pos, v_suite, v_tol, v_out, cfg);
    }
    const Config cfg = c_config.empty() ? Config{} : read_config(c_config);
    return run_counterexample(*cex, c_name, c_order, c_tol, c_out, cfg);
  } catch (const StrictViolation& sv) {
    std::cerr << "error: " << sv.message << "\n";
    return 3;
  } catch (const qvlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
