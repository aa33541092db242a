#include "nchydro.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <variant>

#include "nchydro/checks.hpp"
#include "nchydro/derivations.hpp"
#include "nchydro/euler.hpp"
#include "nchydro/leray.hpp"
#include "nchydro/parse.hpp"
#include "nchydro/simulate_io.hpp"
#include "nchydro/trace.hpp"
#include "nchydro/version.hpp"

using nchydro::BiTensor;
using nchydro::Complexd;
using nchydro::Errc;
using nchydro::Error;
using nchydro::GaussianRational;
using nchydro::NcPoly;
using nchydro::VectorField;

extern "C" {

struct nch_poly {
  std::variant<NcPoly<GaussianRational>, NcPoly<Complexd>> value;
};

struct nch_field {
  std::variant<VectorField<GaussianRational>, VectorField<Complexd>> value;
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

nch_status status_of(Errc code) {
  switch (code) {
    case Errc::parse_error:
      return NCH_ERR_PARSE;
    case Errc::invalid_argument:
      return NCH_ERR_INVALID_ARGUMENT;
    case Errc::invariant_violation:
      return NCH_ERR_INVARIANT;
    case Errc::resource_limit:
      return NCH_ERR_RESOURCE;
    case Errc::internal:
      return NCH_ERR_INTERNAL;
  }
  return NCH_ERR_INTERNAL;
}

template <class Fn>
nch_status guarded(Fn&& fn) {
  try {
    fn();
    return NCH_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NCH_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return NCH_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

[[noreturn]] void fail_null(const char* what) {
  nchydro::fail(Errc::invalid_argument, std::string(what) + " must not be null");
}

void require_nonnull(const void* p, const char* what) {
  if (!p) fail_null(what);
}

[[noreturn]] void fail_mixed_modes() {
  nchydro::fail(Errc::invalid_argument, "objects use different arithmetic modes");
}

}  // namespace

extern "C" {

const char* nch_version(void) { return nchydro::kVersion; }

const char* nch_last_error(void) { return g_last_error.c_str(); }

void nch_string_free(char* s) { std::free(s); }

void nch_poly_free(nch_poly* p) { delete p; }

void nch_field_free(nch_field* f) { delete f; }

nch_status nch_poly_parse(const char* text, int n, nch_mode mode, nch_poly** out) {
  return guarded([&] {
    require_nonnull(text, "text");
    require_nonnull(out, "out");
    if (mode == NCH_MODE_EXACT) {
      *out = new nch_poly{nchydro::parse_poly<GaussianRational>(text, n)};
    } else {
      *out = new nch_poly{nchydro::parse_poly<Complexd>(text, n)};
    }
  });
}

nch_status nch_poly_format(const nch_poly* p, char** out) {
  return guarded([&] {
    require_nonnull(p, "poly");
    require_nonnull(out, "out");
    *out = copy_string(
        std::visit([](const auto& poly) { return nchydro::format_poly(poly); }, p->value));
  });
}

nch_status nch_poly_degree(const nch_poly* p, int* out) {
  return guarded([&] {
    require_nonnull(p, "poly");
    require_nonnull(out, "out");
    *out = std::visit([](const auto& poly) { return poly.degree(); }, p->value);
  });
}

nch_status nch_poly_trace(const nch_poly* p, char** out) {
  return guarded([&] {
    require_nonnull(p, "poly");
    require_nonnull(out, "out");
    *out = copy_string(std::visit(
        [](const auto& poly) { return nchydro::format_scalar(nchydro::trace(poly)); }, p->value));
  });
}

nch_status nch_poly_free_diff(const nch_poly* p, int j, char** out) {
  return guarded([&] {
    require_nonnull(p, "poly");
    require_nonnull(out, "out");
    *out = copy_string(std::visit(
        [&](const auto& poly) {
          if (j < 1 || j > poly.generator_count())
            nchydro::fail(Errc::invalid_argument, "generator index out of range");
          return nchydro::format_bitensor(nchydro::free_diff(j - 1, poly));
        },
        p->value));
  });
}

nch_status nch_poly_cyclic_diff(const nch_poly* p, int j, nch_poly** out) {
  return guarded([&] {
    require_nonnull(p, "poly");
    require_nonnull(out, "out");
    *out = std::visit(
        [&](const auto& poly) {
          if (j < 1 || j > poly.generator_count())
            nchydro::fail(Errc::invalid_argument, "generator index out of range");
          return new nch_poly{nchydro::cyclic_diff(j - 1, poly)};
        },
        p->value);
  });
}

nch_status nch_field_parse(const char* text, int n, nch_mode mode, nch_field** out) {
  return guarded([&] {
    require_nonnull(text, "text");
    require_nonnull(out, "out");
    if (mode == NCH_MODE_EXACT) {
      *out = new nch_field{nchydro::parse_field<GaussianRational>(text, n)};
    } else {
      *out = new nch_field{nchydro::parse_field<Complexd>(text, n)};
    }
  });
}

nch_status nch_field_format(const nch_field* f, char** out) {
  return guarded([&] {
    require_nonnull(f, "field");
    require_nonnull(out, "out");
    *out = copy_string(
        std::visit([](const auto& field) { return nchydro::format_field(field); }, f->value));
  });
}

nch_status nch_field_directional(const nch_field* f, const nch_poly* p, nch_poly** out) {
  return guarded([&] {
    require_nonnull(f, "field");
    require_nonnull(p, "poly");
    require_nonnull(out, "out");
    if (f->value.index() != p->value.index()) fail_mixed_modes();
    if (const auto* fe = std::get_if<VectorField<GaussianRational>>(&f->value)) {
      *out = new nch_poly{
          nchydro::directional(*fe, std::get<NcPoly<GaussianRational>>(p->value))};
    } else {
      *out = new nch_poly{nchydro::directional(std::get<VectorField<Complexd>>(f->value),
                                               std::get<NcPoly<Complexd>>(p->value))};
    }
  });
}

nch_status nch_field_leray_project(const nch_field* f, nch_field** projected,
                                   nch_poly** pressure) {
  return guarded([&] {
    require_nonnull(f, "field");
    require_nonnull(projected, "projected");
    std::visit(
        [&](const auto& field) {
          auto proj = nchydro::leray_project(field);
          if (pressure) *pressure = new nch_poly{nchydro::recover_pressure(field - proj)};
          *projected = new nch_field{std::move(proj)};
        },
        f->value);
  });
}

nch_status nch_field_is_divergence_free(const nch_field* f, int* flag, double* residual) {
  return guarded([&] {
    require_nonnull(f, "field");
    require_nonnull(flag, "flag");
    auto [ok, res] =
        std::visit([](const auto& field) { return nchydro::is_divergence_free(field); }, f->value);
    *flag = ok ? 1 : 0;
    if (residual) *residual = res;
  });
}

nch_status nch_field_vorticity(const nch_field* f, nch_poly** out) {
  return guarded([&] {
    require_nonnull(f, "field");
    require_nonnull(out, "out");
    *out = std::visit(
        [](const auto& field) { return new nch_poly{nchydro::vorticity(field)}; }, f->value);
  });
}

nch_status nch_simulate(const char* config_json, const char* out_dir, char** manifest_json) {
  return guarded([&] {
    require_nonnull(config_json, "config_json");
    nchydro::RunOutput run =
        nchydro::run_simulation_json(config_json, out_dir ? out_dir : "");
    if (manifest_json) *manifest_json = copy_string(run.manifest_json);
  });
}

nch_status nch_check(const char* suite, unsigned long long seed, int size, int quiet,
                     int* passed, char** report) {
  return guarded([&] {
    require_nonnull(suite, "suite");
    require_nonnull(passed, "passed");
    nchydro::CheckReport result = nchydro::run_check_suite(suite, seed, size);
    *passed = result.passed ? 1 : 0;
    if (report) *report = copy_string(result.render(quiet != 0));
  });
}

}  // extern "C"
