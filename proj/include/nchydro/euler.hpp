#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nchydro/leray.hpp"

namespace nchydro {

enum class Integrator { euler_explicit, rk4 };

template <class S>
struct SimConfig {
  int n = 2;
  int trunc_degree = 3;
  S dt = ScalarOps<S>::from_fraction(1, 100);
  S t_end = ScalarOps<S>::one();
  Integrator integrator = Integrator::rk4;
  S viscosity = ScalarOps<S>::zero();
  int moments = 2;
  int output_every = 1;
  double div_tol = 1e-8;  // float-mode instability threshold
  LerayOptions leray;

  void validate() const {
    detail::check_generator_count(n);
    if (trunc_degree < 1 || trunc_degree > 16)
      fail(Errc::invalid_argument, "trunc_degree must be in 1..16");
    if (!ScalarOps<S>::is_real(dt) || ScalarOps<S>::sign_real(dt) <= 0)
      fail(Errc::invalid_argument, "dt must be a positive real");
    if (!ScalarOps<S>::is_real(t_end) || ScalarOps<S>::sign_real(t_end) < 0)
      fail(Errc::invalid_argument, "t_end must be a nonnegative real");
    if (!ScalarOps<S>::is_real(viscosity) || ScalarOps<S>::sign_real(viscosity) < 0)
      fail(Errc::invalid_argument, "viscosity must be a nonnegative real");
    if (moments < 0 || moments > 8) fail(Errc::invalid_argument, "moments must be in 0..8");
    if (output_every < 1) fail(Errc::invalid_argument, "output_every must be positive");
  }
};

// The quadratic form of the flow: B(c, a)_k = Pi(D_a c_k + sum_j c_j pinched
// into the flipped difference quotients of a_j).  a must be divergence-free.
template <class S>
VectorField<S> b_form(const VectorField<S>& c, const VectorField<S>& a,
                      const LerayOptions& opts = {}) {
  c.require_same_algebra(a);
  if (!is_divergence_free(a, opts).first)
    fail(Errc::invariant_violation, "b_form requires a divergence-free second argument");
  const int n = a.generator_count();
  std::vector<NcPoly<S>> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    NcPoly<S> acc = directional(a, c[k]);
    for (int j = 0; j < n; ++j) acc += insert_middle(c[j], free_diff(k, a[j]).flipped());
    comps.push_back(std::move(acc));
  }
  return leray_project(VectorField<S>(n, std::move(comps)), opts);
}

// Number operator on a polynomial field (degree-k part scales by k).
template <class S>
VectorField<S> number_op_field(const VectorField<S>& v) {
  const int n = v.generator_count();
  std::vector<NcPoly<S>> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) comps.push_back(fock_to_poly(apply_number_op(poly_to_fock(v[j]))));
  return VectorField<S>(n, std::move(comps));
}

// Right-hand side of the truncated flow: -Pi_{<=D}(D_v v) - viscosity * N v.
// v is assumed divergence-free of degree <= trunc_degree (the integrator
// maintains this).
template <class S>
VectorField<S> euler_rhs(const VectorField<S>& v, const SimConfig<S>& cfg) {
  if (v.degree() > cfg.trunc_degree)
    fail(Errc::invalid_argument, "state degree exceeds trunc_degree");
  VectorField<S> rhs = -leray_project_truncate(directional(v, v), cfg.trunc_degree, cfg.leray);
  if (!ScalarOps<S>::is_zero(cfg.viscosity)) rhs -= cfg.viscosity * number_op_field(v);
  return rhs;
}

// Companion pressure of the truncated flow: the rhs together with the
// potential p with cyclic gradient Pi_{<=D}(D_v v) - (D_v v restricted to
// degrees <= D), i.e. minus the non-divergence-free part.
template <class S>
std::pair<VectorField<S>, NcPoly<S>> pressure_rhs(const VectorField<S>& v,
                                                  const SimConfig<S>& cfg) {
  if (v.degree() > cfg.trunc_degree)
    fail(Errc::invalid_argument, "state degree exceeds trunc_degree");
  GradedField<S> w = field_to_fock(directional(v, v));
  // Truncate, then split into projected part and gradient part.
  GradedField<S> trunc(v.generator_count());
  for (int j = 0; j < v.generator_count(); ++j) trunc[j] = w[j].truncated(cfg.trunc_degree);
  GradedField<S> proj = project_graded(trunc, cfg.trunc_degree, cfg.leray);
  VectorField<S> g = fock_to_field(proj - trunc);  // = -(I - Pi) D_v v
  NcPoly<S> p = recover_pressure(g);
  VectorField<S> rhs = -fock_to_field(proj);
  if (!ScalarOps<S>::is_zero(cfg.viscosity)) rhs -= cfg.viscosity * number_op_field(v);
  return {std::move(rhs), std::move(p)};
}

template <class S>
VectorField<S> step(const VectorField<S>& v, const SimConfig<S>& cfg) {
  VectorField<S> next(cfg.n);
  switch (cfg.integrator) {
    case Integrator::euler_explicit:
      next = v + cfg.dt * euler_rhs(v, cfg);
      break;
    case Integrator::rk4: {
      const S half = ScalarOps<S>::from_fraction(1, 2);
      const S sixth = ScalarOps<S>::from_fraction(1, 6);
      const S third = ScalarOps<S>::from_fraction(1, 3);
      VectorField<S> k1 = euler_rhs(v, cfg);
      VectorField<S> k2 = euler_rhs(v + (half * cfg.dt) * k1, cfg);
      VectorField<S> k3 = euler_rhs(v + (half * cfg.dt) * k2, cfg);
      VectorField<S> k4 = euler_rhs(v + cfg.dt * k3, cfg);
      next = v + cfg.dt * (sixth * k1 + third * k2 + third * k3 + sixth * k4);
      break;
    }
  }
  // Re-project the state onto the divergence-free subspace.  In exact mode
  // the update is already in the subspace (state and rhs both are, and the
  // subspace is degree-closed under the cutoff), so the projection is the
  // identity and is skipped.  In float mode it removes accumulated rounding
  // drift.
  if constexpr (!ScalarOps<S>::exact)
    next = leray_project_truncate(next, cfg.trunc_degree, cfg.leray);
  return next;
}

// i * theta(v); self-adjoint whenever v is.
template <class S>
NcPoly<S> vorticity(const VectorField<S>& v) {
  NcPoly<S> t = theta(v);
  return t * ScalarOps<S>::imaginary_unit();
}

// trace(Omega^m) for m = 1..max_moment.
template <class S>
std::vector<S> vorticity_moments(const VectorField<S>& v, int max_moment) {
  std::vector<S> out;
  if (max_moment <= 0) return out;
  NcPoly<S> omega = vorticity(v);
  out.push_back(trace(omega));
  NcPoly<S> power = omega;  // omega^1
  for (int m = 2; m <= max_moment; ++m) {
    out.push_back(trace_product(power, omega));
    if (m < max_moment) power = power * omega;
  }
  return out;
}

// trace(D_v(Omega^m)) for a divergence-free field vanishes; returns the
// computed value for reporting.
template <class S>
S vorticity_transport_defect(const VectorField<S>& v, int m, const LerayOptions& opts = {}) {
  if (m < 1) fail(Errc::invalid_argument, "moment order must be positive");
  if (!is_divergence_free(v, opts).first)
    fail(Errc::invariant_violation, "vorticity transport requires a divergence-free field");
  NcPoly<S> omega = vorticity(v);
  NcPoly<S> power = omega;
  for (int i = 1; i < m; ++i) power = power * omega;
  return trace_directional(v, power);
}

template <class S>
bool check_vorticity_transport(const VectorField<S>& v, int m, const LerayOptions& opts = {}) {
  S defect = vorticity_transport_defect(v, m, opts);
  if constexpr (ScalarOps<S>::exact) {
    return ScalarOps<S>::is_zero(defect);
  } else {
    return std::sqrt(ScalarOps<S>::abs_sq(defect)) <= 1e-8;
  }
}

template <class S>
struct SimSample {
  S t;
  S energy;
  double div_residual;
  std::vector<S> omega_moments;
  std::optional<NcPoly<S>> pressure;  // companion pressure at the sample time
};

template <class S>
struct SimResult {
  std::vector<SimSample<S>> samples;
  VectorField<S> final_v;
  bool initial_projection_changed = false;
  long long steps_taken = 0;
};

namespace detail {

// Number of steps covering [0, t_end] at width dt.  Exact mode requires an
// integer step count; float mode rounds.
template <class S>
long long step_count(const S& dt, const S& t_end) {
  if constexpr (ScalarOps<S>::exact) {
    mpq_class ratio = t_end.re / dt.re;
    if (ratio.get_den() != 1)
      fail(Errc::invalid_argument, "t_end must be an integer multiple of dt in exact mode");
    if (!ratio.get_num().fits_slong_p())
      fail(Errc::resource_limit, "step count does not fit a machine integer");
    return ratio.get_num().get_si();
  } else {
    double ratio = ScalarOps<S>::to_double_real(t_end) / ScalarOps<S>::to_double_real(dt);
    long long steps = static_cast<long long>(ratio + 0.5);
    if (steps < 0) steps = 0;
    return steps;
  }
}

}  // namespace detail

// Companion pressure of the state: the potential of the gradient part removed
// by the truncated projection of D_v v.
template <class S>
NcPoly<S> sample_pressure(const VectorField<S>& v, const SimConfig<S>& cfg) {
  const int n = v.generator_count();
  GradedField<S> w = field_to_fock(directional(v, v));
  GradedField<S> trunc(n);
  for (int j = 0; j < n; ++j) trunc[j] = w[j].truncated(cfg.trunc_degree);
  GradedField<S> proj = project_graded(trunc, cfg.trunc_degree, cfg.leray);
  return recover_pressure(fock_to_field(proj - trunc));
}

template <class S>
SimSample<S> make_sample(const S& t, const VectorField<S>& v, const SimConfig<S>& cfg) {
  SimSample<S> s;
  s.t = t;
  s.energy = inner_sym(v, v);
  s.div_residual = is_divergence_free(v, cfg.leray).second;
  s.omega_moments = vorticity_moments(v, cfg.moments);
  s.pressure = sample_pressure(v, cfg);
  return s;
}

// Reference integrator on polynomial states.  The float mode has a faster
// coordinate-space implementation in fastpath.hpp used by the simulation
// front end; both produce the same trajectories (cross-checked in tests).
template <class S>
SimResult<S> simulate(const VectorField<S>& v0, const SimConfig<S>& cfg,
                      const std::function<void(const SimSample<S>&)>& on_sample = {}) {
  cfg.validate();
  if (v0.generator_count() != cfg.n)
    fail(Errc::invalid_argument, "initial field generator count does not match config");
  if (!v0.is_self_adjoint())
    fail(Errc::invariant_violation, "initial field must be self-adjoint");

  GradedField<S> raw = field_to_fock(v0);
  GradedField<S> projected = project_graded(raw, cfg.trunc_degree, cfg.leray);
  bool changed;
  if constexpr (ScalarOps<S>::exact) {
    changed = (projected != raw);
  } else {
    changed = coord_norm(raw - projected) > cfg.leray.tol * std::max(1.0, coord_norm(raw));
  }
  VectorField<S> v = fock_to_field(projected);
  SimResult<S> result{.samples = {}, .final_v = v, .initial_projection_changed = changed};

  const long long steps = detail::step_count(cfg.dt, cfg.t_end);
  S t = ScalarOps<S>::zero();
  auto emit = [&](const VectorField<S>& state) {
    SimSample<S> s = make_sample(t, state, cfg);
    if (!ScalarOps<S>::exact && s.div_residual > cfg.div_tol)
      fail(Errc::invariant_violation, "divergence residual exceeds tolerance (instability)");
    if (on_sample) on_sample(s);
    result.samples.push_back(std::move(s));
  };
  emit(v);
  for (long long i = 0; i < steps; ++i) {
    v = step(v, cfg);
    t += cfg.dt;
    if ((i + 1) % cfg.output_every == 0 || i + 1 == steps) emit(v);
  }
  result.final_v = v;
  result.steps_taken = steps;
  return result;
}

}  // namespace nchydro
