#include <doctest.h>

#include <cmath>

#include "nchydro/euler.hpp"
#include "nchydro/fastpath.hpp"
#include "nchydro/parse.hpp"
#include "nchydro/random.hpp"
#include "nchydro/trace.hpp"

using namespace nchydro;
using Q = GaussianRational;

namespace {

NcPoly<Q> P(const std::string& text, int n = 2) { return parse_poly<Q>(text, n); }
VectorField<Q> F(const std::string& text, int n = 2) { return parse_field<Q>(text, n); }

SimConfig<Q> exact_cfg(int trunc_degree = 3) {
  SimConfig<Q> cfg;
  cfg.trunc_degree = trunc_degree;
  return cfg;
}

}  // namespace

TEST_CASE("quadratic form satisfies the pairing identity on divergence-free triples") {
  Rng rng(61);
  for (int it = 0; it < 10; ++it) {
    auto a = random_divergence_free_field<Q>(rng, 2, 3, 3);
    auto b = random_divergence_free_field<Q>(rng, 2, 3, 3);
    auto c = random_divergence_free_field<Q>(rng, 2, 3, 3);
    CHECK(-inner_sym(bracket(a, b), c) == inner_sym(b_form(c, a), b));
  }
}

TEST_CASE("quadratic form with equal arguments reduces to the projected transport term") {
  Rng rng(62);
  for (int it = 0; it < 10; ++it) {
    auto a = random_divergence_free_field<Q>(rng, 2, 3, 3);
    CHECK(b_form(a, a) == leray_project(directional(a, a)));
  }
  auto rot = F("(s2, -s1)");
  CHECK(b_form(rot, rot) == VectorField<Q>::zero(2));
}

TEST_CASE("quadratic form rejects a non-divergence-free second argument") {
  CHECK_THROWS_AS(b_form(F("(s2, -s1)"), F("(s1, s2)")), Error);
}

TEST_CASE("rotation field is a stationary solution") {
  auto rot = F("(s2, -s1)");
  auto cfg = exact_cfg();
  CHECK(euler_rhs(rot, cfg) == VectorField<Q>::zero(2));
  CHECK(step(rot, cfg) == rot);

  cfg.dt = ScalarOps<Q>::from_fraction(1, 10);
  auto result = simulate(rot, cfg);
  CHECK_FALSE(result.initial_projection_changed);
  CHECK(result.final_v == rot);
  for (const auto& s : result.samples) {
    CHECK(s.energy == Q(2));
    CHECK(s.div_residual == 0.0);
  }
}

TEST_CASE("the zero field stays zero with zero diagnostics") {
  auto cfg = exact_cfg();
  cfg.dt = ScalarOps<Q>::from_fraction(1, 4);
  auto result = simulate(VectorField<Q>::zero(2), cfg);
  CHECK(result.final_v == VectorField<Q>::zero(2));
  for (const auto& s : result.samples) {
    CHECK(s.energy == Q(0));
    CHECK(s.div_residual == 0.0);
    for (const Q& m : s.omega_moments) CHECK(m == Q(0));
  }
}

TEST_CASE("the right-hand side is orthogonal to the state") {
  Rng rng(63);
  auto cfg = exact_cfg(4);
  for (int it = 0; it < 8; ++it) {
    auto a = random_divergence_free_field<Q>(rng, 2, 3, 3);
    CHECK(inner_sym(euler_rhs(a, cfg), a) == Q(0));
  }
}

TEST_CASE("steps preserve self-adjointness, divergence freedom, and degree") {
  Rng rng(64);
  auto cfg = exact_cfg(3);
  cfg.dt = ScalarOps<Q>::from_fraction(1, 8);
  for (int it = 0; it < 4; ++it) {
    auto v = random_divergence_free_field<Q>(rng, 2, 3, 3);
    auto next = step(v, cfg);
    CHECK(next.is_self_adjoint());
    CHECK(is_divergence_free(next).first);
    CHECK(next.degree() <= cfg.trunc_degree);
  }
}

TEST_CASE("projection and pressure forms of the flow agree") {
  Rng rng(65);
  auto cfg = exact_cfg(3);
  for (int it = 0; it < 6; ++it) {
    auto v = random_divergence_free_field<Q>(rng, 2, 3, 3);
    auto [rhs, p] = pressure_rhs(v, cfg);
    CHECK(rhs == euler_rhs(v, cfg));

    // rhs + (D_v v truncated to the cutoff) + cyclic_grad(p) must vanish.
    GradedField<Q> w = field_to_fock(directional(v, v));
    GradedField<Q> trunc(2);
    for (int j = 0; j < 2; ++j) trunc[j] = w[j].truncated(cfg.trunc_degree);
    auto total = rhs + fock_to_field(trunc) + cyclic_grad(p);
    CHECK(total == VectorField<Q>::zero(2));
  }
}

TEST_CASE("pressure of the gradient-direction example") {
  auto cfg = exact_cfg(3);
  auto [rhs, p] = pressure_rhs(F("(s2, -s1)"), cfg);
  CHECK(rhs == VectorField<Q>::zero(2));
  CHECK(p == P("(1/2)*s1^2 + (1/2)*s2^2"));
}

TEST_CASE("viscosity dissipates energy through the number operator") {
  Rng rng(66);
  auto cfg = exact_cfg(3);
  cfg.viscosity = ScalarOps<Q>::from_fraction(1, 10);
  for (int it = 0; it < 6; ++it) {
    auto v = random_divergence_free_field<Q>(rng, 2, 3, 3);
    Q production = inner_sym(euler_rhs(v, cfg), v);
    Q expected = -(cfg.viscosity * inner_sym(number_op_field(v), v));
    CHECK(production == expected);
    CHECK(sgn(production.re) <= 0);
    CHECK(sgn(production.im) == 0);
  }
}

TEST_CASE("viscous run has monotonically non-increasing energy") {
  Rng rng(67);
  // A modest initial amplitude keeps the dissipative term dominant over the
  // single-step discretization error of the explicit integrator.  The
  // explicit integrator is used because exact-arithmetic coefficient growth
  // per step is quadratic for it (the classical four-stage scheme composes a
  // much higher-degree rational map per step).
  auto v0 = random_divergence_free_field<Q>(rng, 2, 3, 3) * ScalarOps<Q>::from_fraction(1, 8);
  auto cfg = exact_cfg(3);
  cfg.integrator = Integrator::euler_explicit;
  cfg.viscosity = ScalarOps<Q>::from_fraction(1, 10);
  cfg.dt = ScalarOps<Q>::from_fraction(1, 100);
  cfg.t_end = ScalarOps<Q>::from_fraction(1, 10);
  auto result = simulate(v0, cfg);
  REQUIRE(result.samples.size() > 1);
  for (std::size_t i = 1; i < result.samples.size(); ++i) {
    mpq_class prev = result.samples[i - 1].energy.re;
    mpq_class cur = result.samples[i].energy.re;
    CHECK(cur <= prev);
  }
}

TEST_CASE("empty horizon produces a single sample") {
  auto cfg = exact_cfg();
  cfg.t_end = ScalarOps<Q>::zero();
  auto result = simulate(F("(s2, -s1)"), cfg);
  CHECK(result.samples.size() == 1);
  CHECK(result.steps_taken == 0);
  CHECK(result.samples[0].t == Q(0));
}

TEST_CASE("non-divergence-free initial data is projected with a notice") {
  auto cfg = exact_cfg();
  cfg.t_end = ScalarOps<Q>::zero();
  auto result = simulate(F("(s2 + s1, -s1)"), cfg);
  CHECK(result.initial_projection_changed);
  CHECK(is_divergence_free(result.final_v).first);
}

TEST_CASE("exact mode requires an integer number of steps") {
  auto cfg = exact_cfg();
  cfg.dt = ScalarOps<Q>::from_fraction(1, 3);
  cfg.t_end = ScalarOps<Q>::from_fraction(1, 2);
  CHECK_THROWS_AS(simulate(F("(s2, -s1)"), cfg), Error);
}

TEST_CASE("samples carry the companion pressure") {
  auto cfg = exact_cfg();
  cfg.t_end = ScalarOps<Q>::zero();
  Rng rng(68);
  auto v0 = random_divergence_free_field<Q>(rng, 2, 3, 3);
  auto result = simulate(v0, cfg);
  REQUIRE(result.samples.size() == 1);
  REQUIRE(result.samples[0].pressure.has_value());
  auto [rhs, p] = pressure_rhs(v0, cfg);
  CHECK(*result.samples[0].pressure == p);
}

TEST_CASE("vorticity of the rotation field") {
  auto rot = F("(s2, -s1)");
  auto omega = vorticity(rot);
  CHECK(omega == P("2*i*s1*s2 - 2*i*s2*s1"));
  CHECK(omega.is_self_adjoint());
  CHECK(trace(omega) == Q(0));
  CHECK(trace(omega * omega) == Q(8));
  CHECK(c_map(omega).is_zero());

  auto moments = vorticity_moments(rot, 2);
  REQUIRE(moments.size() == 2);
  CHECK(moments[0] == Q(0));
  CHECK(moments[1] == Q(8));
}

TEST_CASE("vorticity is self-adjoint with real moments") {
  Rng rng(69);
  for (int it = 0; it < 8; ++it) {
    auto v = random_self_adjoint_field<Q>(rng, 2, 3, 3);
    auto omega = vorticity(v);
    CHECK(omega.is_self_adjoint());
    for (const Q& m : vorticity_moments(v, 3)) CHECK(sgn(m.im) == 0);
  }
}

TEST_CASE("vorticity moments are transport-invariant") {
  Rng rng(70);
  for (int it = 0; it < 6; ++it) {
    auto v = random_divergence_free_field<Q>(rng, 2, 3, 3);
    for (int m = 1; m <= 3; ++m) {
      CHECK(vorticity_transport_defect(v, m) == Q(0));
      CHECK(check_vorticity_transport(v, m));
    }
  }
}

TEST_CASE("float fast path matches the reference integrator") {
  Rng rng(71);
  auto v0q = random_divergence_free_field<Q>(rng, 2, 3, 3);
  auto v0 = to_float(v0q);

  SimConfig<Complexd> cfg;
  cfg.trunc_degree = 4;
  cfg.dt = Complexd(0.01, 0.0);
  cfg.t_end = Complexd(0.05, 0.0);

  auto slow = simulate(v0, cfg);
  auto fast = simulate_fast(v0, cfg);
  REQUIRE(slow.samples.size() == fast.samples.size());
  for (std::size_t i = 0; i < slow.samples.size(); ++i) {
    double de = std::abs(slow.samples[i].energy.real() - fast.samples[i].energy.real());
    CHECK(de <= 1e-10);
  }
  for (int j = 0; j < 2; ++j) {
    auto diff = slow.final_v[j] - fast.final_v[j];
    for (const auto& [w, c] : diff.terms()) CHECK(std::abs(c) <= 1e-9);
  }
}
