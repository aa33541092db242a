#include "nchydro/simulate_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "nchydro/euler.hpp"
#include "nchydro/fastpath.hpp"
#include "nchydro/parse.hpp"
#include "nchydro/version.hpp"

namespace nchydro {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& msg) {
  fail(Errc::invalid_argument, "config: " + msg);
}

std::string double_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

std::string scalar_text(const GaussianRational& s) { return format_scalar(s); }
std::string scalar_text(const Complexd& s) { return format_scalar(s); }

// Scalars arrive as strings ("1/100", "0.5") or JSON numbers.  Exact mode
// rejects non-integer JSON numbers: a binary double would be converted to an
// unintended rational, so the value must be spelled as a string instead.
template <class S>
S scalar_from_json(const json& v, const std::string& key) {
  if (v.is_string()) {
    return parse_scalar<S>(v.get<std::string>());
  }
  if (v.is_number_integer()) {
    return ScalarOps<S>::from_long(static_cast<long>(v.get<long long>()));
  }
  if (v.is_number_float()) {
    if constexpr (ScalarOps<S>::exact) {
      config_error("field '" + key + "' must be a string (e.g. \"1/100\") in exact mode");
    } else {
      return Complexd(v.get<double>(), 0.0);
    }
  }
  config_error("field '" + key + "' must be a number or string");
}

int int_from_json(const json& v, const std::string& key) {
  if (!v.is_number_integer()) config_error("field '" + key + "' must be an integer");
  return static_cast<int>(v.get<long long>());
}

Integrator integrator_from_json(const std::string& name) {
  if (name == "rk4") return Integrator::rk4;
  if (name == "euler" || name == "euler_explicit") return Integrator::euler_explicit;
  config_error("integrator must be \"rk4\" or \"euler\"");
}

const char* integrator_name(Integrator i) {
  return i == Integrator::rk4 ? "rk4" : "euler";
}

template <class S>
struct ParsedRun {
  SimConfig<S> cfg;
  VectorField<S> v0{1};
  std::vector<std::string> field_text;
};

template <class S>
ParsedRun<S> parse_run(const json& root) {
  ParsedRun<S> run;
  SimConfig<S>& cfg = run.cfg;

  if (!root.contains("n")) config_error("missing required field 'n'");
  cfg.n = int_from_json(root.at("n"), "n");
  if (root.contains("trunc_degree"))
    cfg.trunc_degree = int_from_json(root.at("trunc_degree"), "trunc_degree");
  if (root.contains("dt")) cfg.dt = scalar_from_json<S>(root.at("dt"), "dt");
  if (root.contains("t_end")) cfg.t_end = scalar_from_json<S>(root.at("t_end"), "t_end");
  if (root.contains("viscosity"))
    cfg.viscosity = scalar_from_json<S>(root.at("viscosity"), "viscosity");
  if (root.contains("moments")) cfg.moments = int_from_json(root.at("moments"), "moments");
  if (root.contains("output_every"))
    cfg.output_every = int_from_json(root.at("output_every"), "output_every");
  if (root.contains("div_tol")) {
    if (!root.at("div_tol").is_number()) config_error("field 'div_tol' must be a number");
    cfg.div_tol = root.at("div_tol").get<double>();
  }
  if (root.contains("integrator")) {
    if (!root.at("integrator").is_string()) config_error("field 'integrator' must be a string");
    cfg.integrator = integrator_from_json(root.at("integrator").get<std::string>());
  }

  if (!root.contains("initial_field")) config_error("missing required field 'initial_field'");
  const json& field = root.at("initial_field");
  if (!field.is_array()) config_error("initial_field must be an array of polynomial strings");
  if (field.size() != static_cast<std::size_t>(cfg.n))
    config_error("initial_field must have exactly n entries");
  std::vector<NcPoly<S>> comps;
  comps.reserve(field.size());
  for (const json& entry : field) {
    if (!entry.is_string()) config_error("initial_field entries must be strings");
    run.field_text.push_back(entry.get<std::string>());
    comps.push_back(parse_poly<S>(run.field_text.back(), cfg.n));
  }
  run.v0 = VectorField<S>(cfg.n, std::move(comps));
  cfg.validate();
  return run;
}

template <class S>
json config_echo(const ParsedRun<S>& run, const std::string& mode,
                 const std::string& output_dir) {
  const SimConfig<S>& cfg = run.cfg;
  json echo;
  echo["n"] = cfg.n;
  echo["trunc_degree"] = cfg.trunc_degree;
  echo["dt"] = scalar_text(cfg.dt);
  echo["t_end"] = scalar_text(cfg.t_end);
  echo["integrator"] = integrator_name(cfg.integrator);
  echo["mode"] = mode;
  echo["viscosity"] = scalar_text(cfg.viscosity);
  echo["moments"] = cfg.moments;
  echo["output_every"] = cfg.output_every;
  echo["div_tol"] = cfg.div_tol;
  echo["initial_field"] = run.field_text;
  echo["output_dir"] = output_dir;
  return echo;
}

template <class S>
RunOutput run_mode(const json& root, const std::string& mode, const std::string& out_dir) {
  ParsedRun<S> run = parse_run<S>(root);

  SimResult<S> result = [&] {
    if constexpr (ScalarOps<S>::exact) {
      return simulate(run.v0, run.cfg);
    } else {
      return simulate_fast(run.v0, run.cfg);
    }
  }();

  namespace fs = std::filesystem;
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(Errc::invalid_argument, "cannot create output directory: " + out_dir);

  // CSV series.
  fs::path series = dir / "series.csv";
  {
    std::ofstream csv(series);
    if (!csv) fail(Errc::invalid_argument, "cannot write " + series.string());
    csv << "t,energy,div_residual";
    for (int m = 1; m <= run.cfg.moments; ++m) csv << ",omega_m" << m;
    csv << "\n";
    for (const SimSample<S>& s : result.samples) {
      csv << scalar_text(s.t) << "," << scalar_text(s.energy) << ","
          << double_text(s.div_residual);
      for (const S& moment : s.omega_moments) csv << "," << scalar_text(moment);
      csv << "\n";
    }
  }

  // JSON manifest.
  json manifest;
  manifest["artifact_version"] = kVersion;
  manifest["mode"] = mode;
  manifest["config"] = config_echo(run, mode, out_dir);
  manifest["initial_projection_changed"] = result.initial_projection_changed;
  manifest["steps"] = result.steps_taken;
  json samples = json::array();
  for (const SimSample<S>& s : result.samples) {
    json rec;
    rec["t"] = scalar_text(s.t);
    rec["energy"] = scalar_text(s.energy);
    rec["div_residual"] = s.div_residual;
    json moments = json::array();
    for (const S& moment : s.omega_moments) moments.push_back(scalar_text(moment));
    rec["omega_moments"] = std::move(moments);
    if (s.pressure) rec["pressure"] = format_poly(*s.pressure);
    samples.push_back(std::move(rec));
  }
  manifest["samples"] = std::move(samples);
  json final_field = json::array();
  for (int j = 0; j < run.cfg.n; ++j) final_field.push_back(format_poly(result.final_v[j]));
  manifest["final_field"] = std::move(final_field);
  manifest["series_csv"] = "series.csv";
  manifest["exit_status"] = 0;

  RunOutput out;
  out.series_path = series.string();
  out.manifest_json = manifest.dump(2) + "\n";
  out.initial_projection_changed = result.initial_projection_changed;
  fs::path manifest_path = dir / "manifest.json";
  {
    std::ofstream mf(manifest_path);
    if (!mf) fail(Errc::invalid_argument, "cannot write " + manifest_path.string());
    mf << out.manifest_json;
  }
  out.manifest_path = manifest_path.string();
  return out;
}

}  // namespace

RunOutput run_simulation_json(const std::string& config_json, const std::string& out_dir) {
  json root;
  try {
    root = json::parse(config_json);
  } catch (const json::parse_error& e) {
    fail(Errc::parse_error, std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) config_error("top level must be a JSON object");

  static const std::set<std::string> known = {
      "n",          "trunc_degree", "dt",      "t_end",        "integrator",
      "mode",       "viscosity",    "moments", "initial_field", "output_dir",
      "output_every", "div_tol"};
  for (const auto& [key, value] : root.items()) {
    (void)value;
    if (!known.count(key)) config_error("unknown field '" + key + "'");
  }

  std::string mode = "exact";
  if (root.contains("mode")) {
    if (!root.at("mode").is_string()) config_error("field 'mode' must be a string");
    mode = root.at("mode").get<std::string>();
    if (mode != "exact" && mode != "float")
      config_error("mode must be \"exact\" or \"float\"");
  }

  std::string dir = out_dir;
  if (dir.empty() && root.contains("output_dir")) {
    if (!root.at("output_dir").is_string()) config_error("field 'output_dir' must be a string");
    dir = root.at("output_dir").get<std::string>();
  }
  if (dir.empty()) config_error("no output directory (config output_dir or --out)");

  if (mode == "exact") return run_mode<GaussianRational>(root, mode, dir);
  return run_mode<Complexd>(root, mode, dir);
}

}  // namespace nchydro
