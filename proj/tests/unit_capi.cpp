#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "nchydro.h"

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { nch_string_free(p); }
  std::string get() const { return p ? std::string(p) : std::string(); }
};

struct Poly {
  nch_poly* p = nullptr;
  ~Poly() { nch_poly_free(p); }
};

struct Field {
  nch_field* f = nullptr;
  ~Field() { nch_field_free(f); }
};

}  // namespace

TEST_CASE("version is reported") {
  const char* v = nch_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("polynomial parse, format, degree, trace") {
  Poly p;
  REQUIRE(nch_poly_parse("(1/2)*s1^2 - i*s2*s1", 2, NCH_MODE_EXACT, &p.p) == NCH_OK);

  Str text;
  REQUIRE(nch_poly_format(p.p, &text.p) == NCH_OK);
  Poly reparsed;
  REQUIRE(nch_poly_parse(text.p, 2, NCH_MODE_EXACT, &reparsed.p) == NCH_OK);
  Str text2;
  REQUIRE(nch_poly_format(reparsed.p, &text2.p) == NCH_OK);
  CHECK(text.get() == text2.get());

  int degree = -2;
  REQUIRE(nch_poly_degree(p.p, &degree) == NCH_OK);
  CHECK(degree == 2);

  Poly m;
  REQUIRE(nch_poly_parse("s1^4", 2, NCH_MODE_EXACT, &m.p) == NCH_OK);
  Str tr;
  REQUIRE(nch_poly_trace(m.p, &tr.p) == NCH_OK);
  CHECK(tr.get() == "2");
}

TEST_CASE("parse failures set the error string and status") {
  Poly p;
  CHECK(nch_poly_parse("s3", 2, NCH_MODE_EXACT, &p.p) == NCH_ERR_PARSE);
  CHECK(std::strlen(nch_last_error()) > 0);
  CHECK(nch_poly_parse("s1", 2, NCH_MODE_EXACT, nullptr) == NCH_ERR_INVALID_ARGUMENT);
  CHECK(nch_poly_parse(nullptr, 2, NCH_MODE_EXACT, &p.p) == NCH_ERR_INVALID_ARGUMENT);
}

TEST_CASE("derivatives through the C surface") {
  Poly p;
  REQUIRE(nch_poly_parse("s1*s2*s1", 2, NCH_MODE_EXACT, &p.p) == NCH_OK);

  Str tensor;
  REQUIRE(nch_poly_free_diff(p.p, 1, &tensor.p) == NCH_OK);
  CHECK(tensor.get() == "1 (x) s2*s1 + s1*s2 (x) 1");

  Poly dp;
  REQUIRE(nch_poly_cyclic_diff(p.p, 1, &dp.p) == NCH_OK);
  Str text;
  REQUIRE(nch_poly_format(dp.p, &text.p) == NCH_OK);
  CHECK(text.get() == "s1*s2 + s2*s1");

  Str bad;
  CHECK(nch_poly_free_diff(p.p, 0, &bad.p) == NCH_ERR_INVALID_ARGUMENT);
  CHECK(nch_poly_free_diff(p.p, 3, &bad.p) == NCH_ERR_INVALID_ARGUMENT);
}

TEST_CASE("fields: parse, project, divergence, vorticity") {
  Field f;
  REQUIRE(nch_field_parse("(s1, s2)", 2, NCH_MODE_EXACT, &f.f) == NCH_OK);

  Field projected;
  Poly pressure;
  REQUIRE(nch_field_leray_project(f.f, &projected.f, &pressure.p) == NCH_OK);
  Str ptext;
  REQUIRE(nch_field_format(projected.f, &ptext.p) == NCH_OK);
  CHECK(ptext.get() == "(0, 0)");
  Str prtext;
  REQUIRE(nch_poly_format(pressure.p, &prtext.p) == NCH_OK);
  CHECK(prtext.get() == "(1/2)*s1^2 + (1/2)*s2^2");

  int flag = -1;
  double residual = -1.0;
  REQUIRE(nch_field_is_divergence_free(f.f, &flag, &residual) == NCH_OK);
  CHECK(flag == 0);

  Field rot;
  REQUIRE(nch_field_parse("(s2, -s1)", 2, NCH_MODE_EXACT, &rot.f) == NCH_OK);
  REQUIRE(nch_field_is_divergence_free(rot.f, &flag, nullptr) == NCH_OK);
  CHECK(flag == 1);

  Poly omega;
  REQUIRE(nch_field_vorticity(rot.f, &omega.p) == NCH_OK);
  Str otext;
  REQUIRE(nch_poly_format(omega.p, &otext.p) == NCH_OK);
  CHECK(otext.get() == "2*i*s1*s2 - 2*i*s2*s1");
}

TEST_CASE("directional derivative rejects mixed arithmetic modes") {
  Field f;
  REQUIRE(nch_field_parse("(s2, s1)", 2, NCH_MODE_EXACT, &f.f) == NCH_OK);
  Poly p_float;
  REQUIRE(nch_poly_parse("s1*s2", 2, NCH_MODE_FLOAT, &p_float.p) == NCH_OK);
  Poly out;
  CHECK(nch_field_directional(f.f, p_float.p, &out.p) == NCH_ERR_INVALID_ARGUMENT);

  Poly p_exact;
  REQUIRE(nch_poly_parse("s1*s2", 2, NCH_MODE_EXACT, &p_exact.p) == NCH_OK);
  REQUIRE(nch_field_directional(f.f, p_exact.p, &out.p) == NCH_OK);
  Str text;
  REQUIRE(nch_poly_format(out.p, &text.p) == NCH_OK);
  CHECK(text.get() == "s1^2 + s2^2");
}

TEST_CASE("simulation through the C surface") {
  namespace fs = std::filesystem;
  const std::string out = "unit_capi_run_tmp";
  fs::remove_all(out);

  Str manifest;
  REQUIRE(nch_simulate(
              R"({"n": 2, "initial_field": ["s2", "-s1"], "t_end": "0"})", out.c_str(),
              &manifest.p) == NCH_OK);
  CHECK(manifest.get().find("\"exit_status\": 0") != std::string::npos);
  CHECK(fs::exists(out + "/series.csv"));
  fs::remove_all(out);

  Str none;
  CHECK(nch_simulate(R"({"n": 2})", out.c_str(), &none.p) == NCH_ERR_INVALID_ARGUMENT);
  CHECK(nch_simulate(R"({"n": 2, "initial_field": ["i*s1", "s2"], "t_end": "0"})", out.c_str(),
                     &none.p) == NCH_ERR_INVARIANT);
  fs::remove_all(out);
}

TEST_CASE("check suites through the C surface") {
  int passed = 0;
  Str report;
  REQUIRE(nch_check("exact-sequence", 5, 2, 0, &passed, &report.p) == NCH_OK);
  CHECK(passed == 1);
  CHECK(report.get().find("PASSED") != std::string::npos);

  CHECK(nch_check("no-such-suite", 1, 2, 0, &passed, nullptr) == NCH_ERR_INVALID_ARGUMENT);
}
