// Acceptance checks for the nchydro engine.  Each criterion prints exactly
// one [PASS]/[FAIL] line; the process exits 0 only if all criteria pass.
// Tolerances and time budgets are pinned next to each criterion body.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>

#include "nchydro/derivations.hpp"
#include "nchydro/euler.hpp"
#include "nchydro/fastpath.hpp"
#include "nchydro/fock.hpp"
#include "nchydro/fock_oracle.hpp"
#include "nchydro/parse.hpp"
#include "nchydro/random.hpp"
#include "nchydro/trace.hpp"
#include "pairing_bruteforce.hpp"

using namespace nchydro;
using Q = GaussianRational;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

std::string at_trial(const char* what, int trial) {
  return std::string(what) + " at trial " + std::to_string(trial);
}

// 1. Even moments of a single standard generator are the Catalan numbers
//    1, 1, 2, 5, 14, 42, 132 (odd moments vanish), confirmed exactly, by
//    brute-force enumeration of all pair partitions, and by an operator
//    realization truncated at level 12 (tolerance 1e-10).
void criterion_moments() {
  const double tol = 1e-10;
  const long long catalan[7] = {1, 1, 2, 5, 14, 42, 132};
  const NcPoly<Q> s = NcPoly<Q>::generator(1, 0);
  const NcPoly<Complexd> sf = NcPoly<Complexd>::generator(1, 0);
  const TruncatedFock oracle(1, 12);
  NcPoly<Q> pow = NcPoly<Q>::unit(1);
  NcPoly<Complexd> powf = NcPoly<Complexd>::unit(1);
  for (int deg = 0; deg <= 12; ++deg) {
    const Q t = trace(pow);
    Word w;
    for (int i = 0; i < deg; ++i) w.push_back(0);
    const long long brute = nchydro_test::bruteforce_trace_count(w);
    const Complexd v = oracle.vacuum_expectation(powf);
    if (deg % 2 == 0) {
      const long long c = catalan[deg / 2];
      require(t == Q(static_cast<long>(c)),
              "exact moment mismatch at degree " + std::to_string(deg));
      require(brute == c, "pairing enumeration mismatch at degree " + std::to_string(deg));
      require(std::abs(v.real() - static_cast<double>(c)) <= tol && std::abs(v.imag()) <= tol,
              "operator-model moment mismatch at degree " + std::to_string(deg));
    } else {
      require(t == Q(0), "odd moment nonzero at degree " + std::to_string(deg));
      require(brute == 0, "odd pairing count nonzero at degree " + std::to_string(deg));
      require(std::abs(v) <= tol, "operator-model odd moment nonzero at degree " + std::to_string(deg));
    }
    pow = pow * s;
    powf = powf * sf;
  }
}

// 2. -<[a,b], c> = <B(c,a), b> for 200 seeded random divergence-free
//    self-adjoint triples over two generators, degree <= 3, in exact
//    arithmetic with the untruncated quadratic form.  Zero failures allowed.
void criterion_pairing_identity() {
  Rng rng(101);
  for (int it = 0; it < 200; ++it) {
    const auto a = random_divergence_free_field<Q>(rng, 2, 3, 3);
    const auto b = random_divergence_free_field<Q>(rng, 2, 3, 3);
    const auto c = random_divergence_free_field<Q>(rng, 2, 3, 3);
    require(-inner_sym(bracket(a, b), c) == inner_sym(b_form(c, a), b),
            at_trial("pairing identity failed", it));
  }
}

// 3. B(a,a) equals the projected self-advection term Pi(D_a a) exactly, for
//    200 draws from the same population as criterion 2.
void criterion_self_transport() {
  Rng rng(102);
  for (int it = 0; it < 200; ++it) {
    const auto a = random_divergence_free_field<Q>(rng, 2, 3, 3);
    require(b_form(a, a) == leray_project(directional(a, a)),
            at_trial("quadratic form differs from the projected self-advection", it));
  }
}

// 4. The rotation field (s2, -s1) is a fixed point of the float-mode
//    integrator: 100 RK4 steps of width 1e-2 leave every coefficient within
//    1e-12 of the initial state and every sampled energy within 1e-12 of 2.
void criterion_rotation_fixed_point() {
  const double tol = 1e-12;
  const auto v0 = parse_field<Complexd>("(s2, -s1)", 2);
  SimConfig<Complexd> cfg;
  cfg.n = 2;
  cfg.trunc_degree = 3;
  cfg.dt = Complexd(1e-2, 0.0);
  cfg.t_end = Complexd(1.0, 0.0);
  cfg.integrator = Integrator::rk4;
  cfg.output_every = 10;
  const auto res = simulate_fast(v0, cfg);
  require(!res.initial_projection_changed, "rotation field was reported as needing projection");
  require(res.steps_taken == 100, "unexpected step count");
  for (const auto& s : res.samples)
    require(std::abs(s.energy.real() - 2.0) <= tol && std::abs(s.energy.imag()) <= tol,
            "sampled energy deviates from 2");
  for (int j = 0; j < 2; ++j) {
    const auto diff = res.final_v[j] - v0[j];
    for (const auto& [w, c] : diff.terms())
      require(std::abs(c) <= tol, "final state deviates from the initial rotation field");
  }
}

// 5. For 20 seeded random divergence-free self-adjoint initial fields
//    (two generators, degree <= 3), a float-mode inviscid RK4 run with
//    cutoff 5, dt = 1e-3, horizon 1 keeps the relative energy drift within
//    1e-8 across all samples; the exact-arithmetic right-hand side is
//    orthogonal to the state for every draw.
void criterion_inviscid_energy() {
  const double drift_tol = 1e-8;
  Rng rng(201);
  for (int run = 0; run < 20; ++run) {
    const auto v0q = random_divergence_free_field<Q>(rng, 2, 3, 3);

    SimConfig<Q> qcfg;
    qcfg.trunc_degree = 5;
    require(ScalarOps<Q>::is_zero(inner_sym(euler_rhs(v0q, qcfg), v0q)),
            at_trial("right-hand side is not orthogonal to the state", run));

    SimConfig<Complexd> cfg;
    cfg.trunc_degree = 5;
    cfg.dt = Complexd(1e-3, 0.0);
    cfg.t_end = Complexd(1.0, 0.0);
    cfg.integrator = Integrator::rk4;
    cfg.output_every = 100;
    const auto res = simulate_fast(to_float(v0q), cfg);
    require(res.samples.size() >= 2, "expected several samples");
    const double e0 = res.samples.front().energy.real();
    const double scale = std::max(1.0, std::abs(e0));
    for (const auto& s : res.samples)
      require(std::abs(s.energy.real() - e0) <= drift_tol * scale,
              at_trial("relative energy drift exceeds 1e-8", run));
  }
}

// 6. trace(D_v(Omega^m)) vanishes exactly for 50 seeded random
//    divergence-free fields (two generators, degree <= 3) and all powers
//    m = 1..4 of the vorticity Omega = i*theta(v).
void criterion_vorticity_transport() {
  Rng rng(301);
  for (int it = 0; it < 50; ++it) {
    const auto v = random_divergence_free_field<Q>(rng, 2, 3, 2);
    for (int m = 1; m <= 4; ++m)
      require(ScalarOps<Q>::is_zero(vorticity_transport_defect(v, m)),
              at_trial(("transport defect nonzero for power " + std::to_string(m)).c_str(), it));
  }
}

// 7. The rotation field's vorticity has trace 0, second moment 8, and is
//    annihilated by the compression map, all exactly.
void criterion_rotation_invariants() {
  const auto rot = parse_field<Q>("(s2, -s1)", 2);
  const auto omega = vorticity(rot);
  require(trace(omega) == Q(0), "vorticity trace is nonzero");
  require(trace_product(omega, omega) == Q(8), "second vorticity moment is not 8");
  require(c_map(omega).is_zero(), "compression map does not annihilate the vorticity");
}

// 8. theta annihilates cyclic gradients, and the compression map and trace
//    annihilate the range of theta: 200 seeded random draws of degree <= 5
//    in exact arithmetic, zero failures.
void criterion_exact_sequence() {
  Rng rng(401);
  for (int it = 0; it < 200; ++it) {
    const int n = (it % 4 == 3) ? 3 : 2;
    const auto r = random_poly<Q>(rng, n, 5, 4);
    require(theta(cyclic_grad(r)).is_zero(),
            at_trial("theta does not annihilate a cyclic gradient", it));
    const auto a = random_field<Q>(rng, n, 5, 3);
    const auto th = theta(a);
    require(c_map(th).is_zero(),
            at_trial("compression map does not annihilate a theta image", it));
    require(trace(th) == Q(0), at_trial("trace of a theta image is nonzero", it));
  }
}

// 9. The divergence-free projection is an exact idempotent, self-adjoint for
//    the hermitian pairing, degree-preserving, and orthogonal to cyclic
//    gradients under both pairings (degrees <= 4, two and three generators).
//    The first-layer rank is n(n-1)/2 for n = 2, 3, 4, and the numeric
//    operator-space oracle agrees with the structural projection to 1e-10
//    for n <= 3, k <= 4.
void criterion_projection_structure() {
  const double tol = 1e-10;
  Rng rng(501);
  for (int n = 2; n <= 3; ++n) {
    for (int it = 0; it < 6; ++it) {
      const auto a = random_field<Q>(rng, n, 4, 3);
      const auto pa = leray_project(a);
      require(leray_project(pa) == pa, "projection is not idempotent");
      const auto b = random_field<Q>(rng, n, 4, 3);
      require(inner_herm(pa, b) == inner_herm(a, leray_project(b)),
              "projection is not self-adjoint for the hermitian pairing");
      require(pa.degree() <= a.degree(), "projection raised the degree");
      const auto g = cyclic_grad(random_poly<Q>(rng, n, 5, 4));
      require(inner_herm(pa, g) == Q(0),
              "projected field is not orthogonal to gradients (hermitian pairing)");
      require(inner_sym(pa, g) == Q(0),
              "projected field is not orthogonal to gradients (symmetric pairing)");
    }
  }
  for (int n = 2; n <= 4; ++n)
    require(LerayBasis::get(n, 1)->rank() == static_cast<std::size_t>(n * (n - 1) / 2),
            "first-layer rank is not n(n-1)/2 for n = " + std::to_string(n));
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= 4; ++k) {
      const auto rep = oracle_xk_check(n, k, tol, 7);
      const std::string where = " (n = " + std::to_string(n) + ", k = " + std::to_string(k) + ")";
      require(rep.numeric_rank == rep.structural_rank, "numeric and structural ranks differ" + where);
      require(rep.max_residual <= tol, "projector residual exceeds 1e-10" + where);
      require(rep.ok, "numeric oracle check failed" + where);
    }
}

// 10. Symbolic traces of 500 seeded random monomials (two and three
//     generators, degree <= 8) match vacuum expectations in the truncated
//     operator realization within 1e-10.
void criterion_trace_oracle() {
  const double tol = 1e-10;
  Rng rng(601);
  const TruncatedFock f2(2, 8);
  const TruncatedFock f3(3, 8);
  for (int it = 0; it < 500; ++it) {
    const int n = (it % 2 == 0) ? 2 : 3;
    const int len = static_cast<int>(rng.uniform(0, 8));
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng.uniform(0, n - 1)));
    const Q t = trace(NcPoly<Q>::monomial(n, w, ScalarOps<Q>::one()));
    require(sgn(t.im) == 0, at_trial("symbolic monomial trace is not real", it));
    const Complexd v = (n == 2 ? f2 : f3).vacuum_expectation(
        NcPoly<Complexd>::monomial(n, w, ScalarOps<Complexd>::one()));
    require(std::abs(v.real() - t.re.get_d()) <= tol && std::abs(v.imag()) <= tol,
            at_trial("vacuum expectation deviates from the symbolic trace", it));
  }
}

// 11. A viscous exact-arithmetic run (viscosity 1/10, explicit steps of
//     width 1/100 over horizon 1/10) from a seeded random divergence-free
//     field has monotonically non-increasing energy at every sample and a
//     strict net decrease.
void criterion_viscous_decay() {
  Rng rng(701);
  const auto v0 =
      random_divergence_free_field<Q>(rng, 2, 3, 3) * ScalarOps<Q>::from_fraction(1, 8);
  SimConfig<Q> cfg;
  cfg.trunc_degree = 3;
  cfg.integrator = Integrator::euler_explicit;
  cfg.viscosity = ScalarOps<Q>::from_fraction(1, 10);
  cfg.dt = ScalarOps<Q>::from_fraction(1, 100);
  cfg.t_end = ScalarOps<Q>::from_fraction(1, 10);
  const auto res = simulate(v0, cfg);
  require(res.samples.size() == 11, "expected one sample per step");
  require(sgn(res.samples.front().energy.re) > 0, "initial energy is not positive");
  for (std::size_t i = 0; i + 1 < res.samples.size(); ++i) {
    const Q& a = res.samples[i].energy;
    const Q& b = res.samples[i + 1].energy;
    require(sgn(a.im) == 0 && sgn(b.im) == 0, "sampled energy has an imaginary part");
    require(b.re <= a.re, "energy increased between samples " + std::to_string(i) + " and " +
                              std::to_string(i + 1));
  }
  require(res.samples.back().energy.re < res.samples.front().energy.re,
          "viscous run shows no net dissipation");
}

// 12. Graded-coordinate roundtrips are lossless on every monomial of degree
//     <= 8 over two generators and on random three-generator polynomials;
//     parse(format(p)) == p for 200 seeded random polynomials.
void criterion_roundtrips() {
  for (int len = 0; len <= 8; ++len) {
    for (std::size_t idx = 0; idx < (std::size_t{1} << len); ++idx) {
      Word w;
      for (int i = 0; i < len; ++i) w.push_back(static_cast<int>((idx >> i) & 1));
      const auto p = NcPoly<Q>::monomial(2, w, ScalarOps<Q>::one());
      require(fock_to_poly(poly_to_fock(p)) == p, "coordinate roundtrip failed on a monomial");
    }
  }
  Rng rng(801);
  for (int it = 0; it < 25; ++it) {
    const auto p = random_poly<Q>(rng, 3, 8, 5);
    require(fock_to_poly(poly_to_fock(p)) == p,
            at_trial("coordinate roundtrip failed on a random polynomial", it));
  }
  for (int it = 0; it < 200; ++it) {
    const int n = (it % 3 == 0) ? 3 : 2;
    const auto p = random_poly<Q>(rng, n, 5, 5);
    require(parse_poly<Q>(format_poly(p), n) == p, at_trial("text roundtrip failed", it));
  }
}

struct Criterion {
  int id;
  const char* name;
  void (*body)();
  double budget_seconds;  // 0 = no pinned budget
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "semicircular moments match the pairing and operator-model oracles", criterion_moments,
       5.0},
      {2, "bracket pairs with the quadratic transport form on divergence-free triples",
       criterion_pairing_identity, 60.0},
      {3, "quadratic transport form with equal arguments is the projected self-advection",
       criterion_self_transport, 0.0},
      {4, "rigid rotation is a fixed point of the float-mode integrator",
       criterion_rotation_fixed_point, 5.0},
      {5, "inviscid float runs conserve energy; the right-hand side is orthogonal to the state",
       criterion_inviscid_energy, 600.0},
      {6, "vorticity power traces are transport-invariant", criterion_vorticity_transport, 600.0},
      {7, "rotation vorticity invariants take their exact values", criterion_rotation_invariants,
       0.0},
      {8, "composite maps around the divergence complex vanish identically",
       criterion_exact_sequence, 0.0},
      {9, "divergence-free projection is an exact self-adjoint idempotent matching the oracle",
       criterion_projection_structure, 0.0},
      {10, "symbolic traces match vacuum expectations of the operator model",
       criterion_trace_oracle, 120.0},
      {11, "viscous exact run dissipates energy monotonically", criterion_viscous_decay, 0.0},
      {12, "coordinate and text representations round-trip losslessly", criterion_roundtrips, 0.0},
  };

  int passed = 0;
  int total = 0;
  for (const auto& c : criteria) {
    ++total;
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string reason;
    try {
      c.body();
    } catch (const Failure& f) {
      ok = false;
      reason = f.what();
    } catch (const std::exception& e) {
      ok = false;
      reason = std::string("unexpected error: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.budget_seconds > 0.0 && secs > c.budget_seconds) {
      ok = false;
      reason = "exceeded the pinned time budget of " + std::to_string(c.budget_seconds) + " s";
    }
    std::printf("[%s] %2d. %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.name, secs);
    if (!ok) std::printf("        %s\n", reason.c_str());
    if (ok) ++passed;
  }
  std::printf("%d/%d acceptance criteria passed\n", passed, total);
  return passed == total ? 0 : 1;
}
