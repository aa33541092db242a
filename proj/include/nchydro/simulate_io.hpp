#pragma once

#include <string>

namespace nchydro {

struct RunOutput {
  std::string series_path;
  std::string manifest_path;
  std::string manifest_json;
  bool initial_projection_changed = false;
};

// Parses the JSON run configuration, integrates, and writes series.csv plus
// manifest.json into the output directory (created if absent).  out_dir
// overrides the config's output_dir field when nonempty.  Returns the
// artifact paths and the manifest text.
//
// Config fields: n, trunc_degree, dt, t_end, integrator ("rk4" | "euler"),
// mode ("exact" | "float"), viscosity, moments, initial_field (array of n
// polynomial strings), output_dir; optional output_every, div_tol.  In exact
// mode the scalar fields must be strings or integers ("1/100", 2); plain JSON
// floats are rejected there because they cannot be represented faithfully.
RunOutput run_simulation_json(const std::string& config_json, const std::string& out_dir);

}  // namespace nchydro
