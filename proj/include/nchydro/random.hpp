#pragma once

#include <cstdint>
#include <random>

#include "nchydro/leray.hpp"
#include "nchydro/poly.hpp"

namespace nchydro {

// Deterministic source for property checks.  Only engine draws plus modular
// reduction are used (no std distributions), so streams are reproducible
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [lo, hi] (inclusive); hi >= lo.
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

 private:
  std::mt19937_64 eng_;
};

// Random small-coefficient polynomial: up to `terms` monomials of degree
// <= max_degree, rational coefficients with small numerators/denominators,
// optionally with imaginary parts.
template <class S>
NcPoly<S> random_poly(Rng& rng, int n, int max_degree, int terms, bool complex_coeffs = true) {
  std::vector<typename NcPoly<S>::Term> out;
  for (int t = 0; t < terms; ++t) {
    const int len = static_cast<int>(rng.uniform(0, max_degree));
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng.uniform(0, n - 1)));
    long num = rng.uniform(-4, 4);
    long den = rng.uniform(1, 3);
    S coeff = ScalarOps<S>::from_fraction(num, den);
    if (complex_coeffs) {
      long inum = rng.uniform(-4, 4);
      long iden = rng.uniform(1, 3);
      coeff += ScalarOps<S>::imaginary_unit() * ScalarOps<S>::from_fraction(inum, iden);
    }
    out.emplace_back(std::move(w), std::move(coeff));
  }
  return NcPoly<S>::from_terms(n, std::move(out));
}

template <class S>
VectorField<S> random_field(Rng& rng, int n, int max_degree, int terms,
                            bool complex_coeffs = true) {
  std::vector<NcPoly<S>> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    comps.push_back(random_poly<S>(rng, n, max_degree, terms, complex_coeffs));
  return VectorField<S>(n, std::move(comps));
}

// Self-adjoint random field: (a + a*) / 2 componentwise.
template <class S>
VectorField<S> random_self_adjoint_field(Rng& rng, int n, int max_degree, int terms) {
  VectorField<S> a = random_field<S>(rng, n, max_degree, terms, true);
  return (a + a.adjoint()) * ScalarOps<S>::from_fraction(1, 2);
}

// Divergence-free self-adjoint random field via projection; retries a few
// seeds if the projection collapses to zero.
template <class S>
VectorField<S> random_divergence_free_field(Rng& rng, int n, int max_degree, int terms,
                                            const LerayOptions& opts = {}) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    VectorField<S> a = random_self_adjoint_field<S>(rng, n, max_degree, terms);
    VectorField<S> p = leray_project(a, opts);
    if (!p.is_zero()) return p;
  }
  fail(Errc::internal, "could not draw a nonzero divergence-free field");
}

}  // namespace nchydro
