#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CmdResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string tag = std::to_string(counter++);
  const fs::path out = "cli_stdout_" + tag + ".txt";
  const fs::path err = "cli_stderr_" + tag + ".txt";
  const std::string cmd = std::string("\"") + NCHYDRO_CLI_PATH + "\" " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  CmdResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  result.out = slurp(out);
  result.err = slurp(err);
  fs::remove(out);
  fs::remove(err);
  return result;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
}

const std::string kRotationConfig = R"({
  "n": 2,
  "trunc_degree": 3,
  "dt": "1/100",
  "t_end": "1/10",
  "integrator": "rk4",
  "mode": "exact",
  "viscosity": "0",
  "moments": 2,
  "initial_field": ["s2", "-s1"]
})";

}  // namespace

TEST_CASE("trace subcommand prints the trace") {
  auto r = run_cli("trace \"s1^4\" --n 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "2\n");

  auto unit = run_cli("trace \"1\"");
  CHECK(unit.exit_code == 0);
  CHECK(unit.out == "1\n");
}

TEST_CASE("project subcommand prints projection and pressure") {
  auto r = run_cli("project \"(s1, s2)\" --n 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("projected: (0, 0)") != std::string::npos);
  CHECK(r.out.find("pressure: (1/2)*s1^2 + (1/2)*s2^2") != std::string::npos);
}

TEST_CASE("derive subcommand prints the three derivatives") {
  auto r = run_cli("derive \"s1*s2*s1\" --n 2 --j 1 --field \"(s2, -s1)\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("free_difference_quotient j=1: 1 (x) s2*s1 + s1*s2 (x) 1") !=
        std::string::npos);
  CHECK(r.out.find("cyclic_derivative j=1: s1*s2 + s2*s1") != std::string::npos);
  CHECK(r.out.find("directional_derivative:") != std::string::npos);
}

TEST_CASE("usage and parse failures exit with code 1") {
  CHECK(run_cli("trace \"s3\" --n 2").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("trace").exit_code == 1);
  CHECK(run_cli("simulate --config does_not_exist.json").exit_code == 1);
  CHECK(run_cli("check no-such-suite").exit_code == 1);
}

TEST_CASE("check subcommand runs a suite deterministically") {
  auto r = run_cli("check exact-sequence --seed 3 --size 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASSED") != std::string::npos);
}

TEST_CASE("simulate writes a deterministic series") {
  write_file("cli_rotation.json", kRotationConfig);
  fs::remove_all("cli_run_a");
  fs::remove_all("cli_run_b");

  auto first = run_cli("simulate --config cli_rotation.json --out cli_run_a");
  REQUIRE(first.exit_code == 0);
  CHECK(first.err.empty());
  CHECK(first.out.find("\"exit_status\": 0") != std::string::npos);

  const std::string series = slurp("cli_run_a/series.csv");
  std::istringstream lines(series);
  std::string header, row;
  REQUIRE(std::getline(lines, header));
  CHECK(header == "t,energy,div_residual,omega_m1,omega_m2");
  REQUIRE(std::getline(lines, row));
  CHECK(row == "0,2,0,0,8");
  while (std::getline(lines, row)) {
    CHECK(row.find(",2,0,0,8") != std::string::npos);
  }
  CHECK(fs::exists("cli_run_a/manifest.json"));

  auto second = run_cli("simulate --config cli_rotation.json --out cli_run_b --quiet");
  REQUIRE(second.exit_code == 0);
  CHECK(second.out.empty());
  CHECK(slurp("cli_run_b/series.csv") == series);

  // The manifest's config echo is itself a complete config: re-running from it
  // must reproduce the series byte for byte.
  const auto manifest = nlohmann::json::parse(slurp("cli_run_a/manifest.json"));
  write_file("cli_echo.json", manifest.at("config").dump(2));
  fs::remove_all("cli_run_echo");
  auto echoed = run_cli("simulate --config cli_echo.json --out cli_run_echo --quiet");
  REQUIRE(echoed.exit_code == 0);
  CHECK(slurp("cli_run_echo/series.csv") == series);

  fs::remove_all("cli_run_a");
  fs::remove_all("cli_run_b");
  fs::remove_all("cli_run_echo");
  fs::remove("cli_rotation.json");
  fs::remove("cli_echo.json");
}

TEST_CASE("simulate warns when the initial field is projected") {
  write_file("cli_gradient.json",
             R"({"n": 2, "t_end": "0", "initial_field": ["s1", "s2"]})");
  fs::remove_all("cli_run_c");

  auto r = run_cli("simulate --config cli_gradient.json --out cli_run_c");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("warning") != std::string::npos);

  fs::remove_all("cli_run_c");
  fs::remove("cli_gradient.json");
}

TEST_CASE("simulate rejects a non-self-adjoint initial field with exit 2") {
  write_file("cli_bad.json", R"({"n": 2, "t_end": "0", "initial_field": ["i*s1", "s2"]})");
  fs::remove_all("cli_run_d");

  auto r = run_cli("simulate --config cli_bad.json --out cli_run_d");
  CHECK(r.exit_code == 2);

  fs::remove_all("cli_run_d");
  fs::remove("cli_bad.json");
}
