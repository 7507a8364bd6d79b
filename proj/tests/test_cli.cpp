#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int rc = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "qvlab_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  static int seq = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(seq) + ".txt");
  const fs::path err = scratch_dir() / ("err" + std::to_string(seq) + ".txt");
  ++seq;
  const std::string cmd = std::string(QVLAB_BIN) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  CliResult res;
  res.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out);
  res.err = slurp(err);
  return res;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Column extraction for "a,b,..." rows with purely numeric leading fields.
double field(const std::string& line, int index) {
  std::istringstream in(line);
  std::string cell;
  for (int i = 0; i <= index; ++i) REQUIRE(std::getline(in, cell, ','));
  return std::strtod(cell.c_str(), nullptr);
}

}  // namespace

TEST_CASE("growth emits a deterministic curve matching the closed form") {
  const std::string args =
      "growth --fn cube-root --functional Hbar --grid 0.1:0.9:9";
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  REQUIRE(a.rc == 0);
  CHECK(a.out == b.out);  // byte-identical data
  const auto lines = lines_of(a.out);
  REQUIRE(lines.size() == 10);
  CHECK(lines[0] == "r,value,functional,function_id,nodes");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double r = field(lines[i], 0);
    const double v = field(lines[i], 1);
    CHECK(std::abs(v - 3.0 * std::pow(r, 2.0 / 3.0)) <= 1e-10 * v);
  }
}

TEST_CASE("grids touching a critical radius shift with a warning") {
  const CliResult res =
      run_cli("growth --fn dellis --functional I --grid 0.1:0.9:9");
  CHECK(res.rc == 0);
  CHECK(res.err.find("shifted") != std::string::npos);
  // 0.5 - spacing/2 rendered at 17 significant digits
  CHECK(res.out.find("\n0.45000000000000001,") != std::string::npos);
  CHECK(res.out.find("\n0.5,") == std::string::npos);
}

TEST_CASE("strict mode refuses shifted grids with exit 3") {
  const CliResult res =
      run_cli("growth --fn dellis --functional I --grid 0.1:0.9:9 --strict");
  CHECK(res.rc == 3);
  CHECK(res.err.find("strict") != std::string::npos);
  CHECK(res.out.empty());
}

TEST_CASE("log-time functional validates its own grid orientation") {
  CHECK(run_cli("growth --fn cube-root --functional a --grid -3:-0.5:8").rc == 0);
  CHECK(run_cli("growth --fn cube-root --functional a --grid 0.1:0.9:9").rc == 2);
}

TEST_CASE("invalid invocations exit 2") {
  CHECK(run_cli("growth --fn quux --functional H --grid 0.1:0.9:9").rc == 2);
  CHECK(run_cli("growth --fn cube-root --functional Z --grid 0.1:0.9:9").rc == 2);
  CHECK(run_cli("growth --fn cube-root --functional H --grid 0.1:0.9:7").rc == 2);
  CHECK(run_cli("growth --fn cube-root --functional H --grid 0.9:0.1:9").rc == 2);
  CHECK(run_cli("growth --fn cube-root --functional H").rc == 2);
  CHECK(run_cli("growth --fn cube-root --functional H --grid 0.1:0.9:9 "
                "--bogus-flag")
            .rc == 2);
  CHECK(run_cli("verify thm9.9").rc == 2);
  CHECK(run_cli("verify thm1.2 --suite prop4.4").rc == 2);
  CHECK(run_cli("verify").rc == 2);
  CHECK(run_cli("counterexample nope").rc == 2);
}

TEST_CASE("verify writes a JSON report plus sidecar and prints the summary") {
  const fs::path out = scratch_dir() / "thm32b.json";
  const CliResult res =
      run_cli("verify thm3.2b --out " + out.string());
  CHECK(res.rc == 0);
  CHECK(res.out.find("PASSED 3/3") != std::string::npos);

  const auto parsed = nlohmann::json::parse(slurp(out));
  REQUIRE(parsed.is_array());
  CHECK(parsed.size() == 3);
  for (const auto& rep : parsed) CHECK(rep.at("passed").get<bool>());

  const std::string meta = slurp(out.string() + ".meta");
  CHECK(meta.find("command = verify") != std::string::npos);
  CHECK(meta.find("suite = thm3.2b") != std::string::npos);
  CHECK(meta.find("generated_at = ") != std::string::npos);
}

TEST_CASE("verify without --out keeps stdout pure JSON") {
  const CliResult res = run_cli("verify thm3.2b");
  CHECK(res.rc == 0);
  const auto parsed = nlohmann::json::parse(res.out);  // throws if polluted
  CHECK(parsed.is_array());
  CHECK(res.err.find("PASSED 3/3") != std::string::npos);
}

TEST_CASE("verify exit code reflects the verdicts") {
  const CliResult res = run_cli("verify lemma5.2-finiteness");
  CHECK(res.rc == 1);
  CHECK(res.err.find("PASSED 3/5") != std::string::npos);
}

TEST_CASE("counterexample curves carry the pinned headers and signs") {
  const CliResult dellis = run_cli("counterexample dellis");
  CHECK(dellis.rc == 0);
  const auto dl = lines_of(dellis.out);
  REQUIRE(dl.size() == 23);  // header + rho=0.3 + 21 samples of (0.5, 1)
  CHECK(dl[0] == "rho,A3");
  CHECK(field(dl[1], 0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(field(dl[1], 1) > 0.0);  // sign unconstrained below 1/2; here positive
  for (std::size_t i = 2; i < dl.size(); ++i) CHECK(field(dl[i], 1) < -0.01);

  const CliResult cube = run_cli("counterexample cube-root --order 1");
  CHECK(cube.rc == 0);
  const auto cl = lines_of(cube.out);
  REQUIRE(cl.size() == 47);
  CHECK(cl[0] == "rho,d1Hbar");
  for (std::size_t i = 1; i < cl.size(); ++i) CHECK(field(cl[i], 1) > 0.0);
}

TEST_CASE("config file supplies defaults and flags take precedence") {
  const fs::path cfg = scratch_dir() / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# growth defaults\n"
      << "fn = cube-root\n"
      << "functional = H\n"
      << "grid = 0.1:0.9:9\n";
  }
  const CliResult from_cfg = run_cli("growth --config " + cfg.string());
  CHECK(from_cfg.rc == 0);
  CHECK(from_cfg.out.find(",H,cube-root,") != std::string::npos);

  const CliResult overridden =
      run_cli("growth --config " + cfg.string() + " --functional Hbar");
  CHECK(overridden.rc == 0);
  CHECK(overridden.out.find(",Hbar,cube-root,") != std::string::npos);
  CHECK(overridden.out.find(",H,cube-root,") == std::string::npos);

  const fs::path strict_cfg = scratch_dir() / "strict.cfg";
  {
    std::ofstream f(strict_cfg);
    f << "fn = dellis\nfunctional = I\ngrid = 0.1:0.9:9\nstrict = true\n";
  }
  CHECK(run_cli("growth --config " + strict_cfg.string()).rc == 3);

  const fs::path bad_cfg = scratch_dir() / "bad.cfg";
  {
    std::ofstream f(bad_cfg);
    f << "frobnicate = 12\n";
  }
  CHECK(run_cli("growth --config " + bad_cfg.string()).rc == 2);
}
