// nchydro command-line interface.  Links the public C API only.
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nchydro.h"

namespace {

// Exit-code policy: 0 success, 1 usage/parse, 2 invariant failure,
// 3 resource cap.  Internal faults map to 1.
int exit_code_for(nch_status s) {
  switch (s) {
    case NCH_OK:
      return 0;
    case NCH_ERR_PARSE:
    case NCH_ERR_INVALID_ARGUMENT:
    case NCH_ERR_INTERNAL:
      return 1;
    case NCH_ERR_INVARIANT:
      return 2;
    case NCH_ERR_RESOURCE:
      return 3;
  }
  return 1;
}

int report_failure(nch_status s) {
  std::fprintf(stderr, "error: %s\n", nch_last_error());
  return exit_code_for(s);
}

struct StringOut {
  char* text = nullptr;
  ~StringOut() { nch_string_free(text); }
};

struct PolyOut {
  nch_poly* p = nullptr;
  ~PolyOut() { nch_poly_free(p); }
};

struct FieldOut {
  nch_field* f = nullptr;
  ~FieldOut() { nch_field_free(f); }
};

nch_mode mode_of(const std::string& text) {
  return text == "float" ? NCH_MODE_FLOAT : NCH_MODE_EXACT;
}

int run_simulate(const std::string& config_path, const std::string& out_dir, bool quiet) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot read config file '%s'\n", config_path.c_str());
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string config = buf.str();

  StringOut manifest;
  nch_status s = nch_simulate(config.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(),
                              &manifest.text);
  if (s != NCH_OK) return report_failure(s);

  try {
    auto doc = nlohmann::json::parse(manifest.text);
    if (doc.value("initial_projection_changed", false)) {
      std::fprintf(stderr,
                   "warning: initial field was not divergence-free; "
                   "it was projected before the run\n");
    }
  } catch (const std::exception&) {
    // The manifest is produced by the library; a parse failure here is
    // cosmetic only and must not mask a successful run.
  }
  if (!quiet) std::fputs(manifest.text, stdout);
  return 0;
}

int run_check(const std::string& suite, unsigned long long seed, int size, bool quiet) {
  int passed = 0;
  StringOut report;
  nch_status s = nch_check(suite.c_str(), seed, size, quiet ? 1 : 0, &passed, &report.text);
  if (s != NCH_OK) return report_failure(s);
  if (report.text && report.text[0] != '\0') std::fputs(report.text, stdout);
  return passed ? 0 : 2;
}

int run_trace(const std::string& expr, int n, nch_mode mode) {
  PolyOut poly;
  nch_status s = nch_poly_parse(expr.c_str(), n, mode, &poly.p);
  if (s != NCH_OK) return report_failure(s);
  StringOut value;
  s = nch_poly_trace(poly.p, &value.text);
  if (s != NCH_OK) return report_failure(s);
  std::printf("%s\n", value.text);
  return 0;
}

int run_project(const std::string& expr, int n, nch_mode mode) {
  FieldOut field;
  nch_status s = nch_field_parse(expr.c_str(), n, mode, &field.f);
  if (s != NCH_OK) return report_failure(s);
  FieldOut projected;
  PolyOut pressure;
  s = nch_field_leray_project(field.f, &projected.f, &pressure.p);
  if (s != NCH_OK) return report_failure(s);
  StringOut ftext;
  s = nch_field_format(projected.f, &ftext.text);
  if (s != NCH_OK) return report_failure(s);
  StringOut ptext;
  s = nch_poly_format(pressure.p, &ptext.text);
  if (s != NCH_OK) return report_failure(s);
  std::printf("projected: %s\n", ftext.text);
  std::printf("pressure: %s\n", ptext.text);
  return 0;
}

int run_derive(const std::string& expr, int n, int j, const std::string& field_text,
               nch_mode mode) {
  PolyOut poly;
  nch_status s = nch_poly_parse(expr.c_str(), n, mode, &poly.p);
  if (s != NCH_OK) return report_failure(s);

  StringOut tensor;
  s = nch_poly_free_diff(poly.p, j, &tensor.text);
  if (s != NCH_OK) return report_failure(s);
  std::printf("free_difference_quotient j=%d: %s\n", j, tensor.text);

  PolyOut cyclic;
  s = nch_poly_cyclic_diff(poly.p, j, &cyclic.p);
  if (s != NCH_OK) return report_failure(s);
  StringOut ctext;
  s = nch_poly_format(cyclic.p, &ctext.text);
  if (s != NCH_OK) return report_failure(s);
  std::printf("cyclic_derivative j=%d: %s\n", j, ctext.text);

  if (!field_text.empty()) {
    FieldOut field;
    s = nch_field_parse(field_text.c_str(), n, mode, &field.f);
    if (s != NCH_OK) return report_failure(s);
    PolyOut derived;
    s = nch_field_directional(field.f, poly.p, &derived.p);
    if (s != NCH_OK) return report_failure(s);
    StringOut dtext;
    s = nch_poly_format(derived.p, &dtext.text);
    if (s != NCH_OK) return report_failure(s);
    std::printf("directional_derivative: %s\n", dtext.text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nchydro: free-probability hydrodynamics engine"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool quiet = false;

  auto* simulate = app.add_subcommand("simulate", "Run a simulation from a JSON config");
  simulate->add_option("--config", config_path, "Path to JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--out", out_dir, "Output directory (overrides config output_dir)");
  simulate->add_flag("--quiet", quiet, "Suppress manifest echo on stdout");

  std::string suite = "all";
  unsigned long long seed = 1;
  int size = 2;
  auto* check = app.add_subcommand("check", "Run a named invariant suite");
  check->add_option("suite", suite, "Suite name (or 'all')");
  check->add_option("--seed", seed, "Random seed");
  check->add_option("--size", size, "Effort multiplier for randomized properties");
  check->add_flag("--quiet", quiet, "Only print the summary line");

  std::string expr;
  int n = 2;
  std::string mode_text = "exact";
  auto* trace = app.add_subcommand("trace", "Print the trace of a polynomial");
  trace->add_option("expr", expr, "Polynomial expression")->required();
  trace->add_option("--n", n, "Number of generators");
  trace->add_option("--mode", mode_text, "Arithmetic mode: exact|float")
      ->check(CLI::IsMember({"exact", "float"}));

  auto* project = app.add_subcommand("project", "Leray-project a field and recover pressure");
  project->add_option("field", expr, "Field expression, e.g. \"(s1, s2)\"")->required();
  project->add_option("--n", n, "Number of generators");
  project->add_option("--mode", mode_text, "Arithmetic mode: exact|float")
      ->check(CLI::IsMember({"exact", "float"}));

  int j = 1;
  std::string field_text;
  auto* derive = app.add_subcommand("derive", "Print derivatives of a polynomial");
  derive->add_option("expr", expr, "Polynomial expression")->required();
  derive->add_option("--n", n, "Number of generators");
  derive->add_option("--j", j, "Generator index (1-based)");
  derive->add_option("--field", field_text, "Field for the directional derivative");
  derive->add_option("--mode", mode_text, "Arithmetic mode: exact|float")
      ->check(CLI::IsMember({"exact", "float"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const nch_mode mode = mode_of(mode_text);
  if (simulate->parsed()) return run_simulate(config_path, out_dir, quiet);
  if (check->parsed()) return run_check(suite, seed, size, quiet);
  if (trace->parsed()) return run_trace(expr, n, mode);
  if (project->parsed()) return run_project(expr, n, mode);
  if (derive->parsed()) return run_derive(expr, n, j, field_text, mode);
  return 1;
}
