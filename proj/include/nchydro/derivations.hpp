#pragma once

#include <utility>
#include <vector>

#include "nchydro/poly.hpp"

namespace nchydro {

// Free difference quotient in direction j (0-based): on a word w it produces
// the sum over occurrences w = u.s_j.v of u (x) v.
template <class S>
BiTensor<S> free_diff(int j, const NcPoly<S>& p) {
  const int n = p.generator_count();
  if (j < 0 || j >= n) fail(Errc::invalid_argument, "derivation index out of range");
  std::vector<typename BiTensor<S>::Term> out;
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t k = 0; k < w.length(); ++k) {
      if (w.letter(k) != j) continue;
      out.push_back({{w.prefix(k), w.suffix(k + 1)}, c});
    }
  }
  return BiTensor<S>::from_terms(n, std::move(out));
}

// Cyclic derivative in direction j: each occurrence w = u.s_j.v contributes
// the rotated word v.u.
template <class S>
NcPoly<S> cyclic_diff(int j, const NcPoly<S>& p) {
  const int n = p.generator_count();
  if (j < 0 || j >= n) fail(Errc::invalid_argument, "derivation index out of range");
  std::vector<typename NcPoly<S>::Term> out;
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t k = 0; k < w.length(); ++k) {
      if (w.letter(k) != j) continue;
      out.emplace_back(w.suffix(k + 1) + w.prefix(k), c);
    }
  }
  return NcPoly<S>::from_terms(n, std::move(out));
}

// Cyclic gradient: the field of all cyclic derivatives.
template <class S>
VectorField<S> cyclic_grad(const NcPoly<S>& p) {
  const int n = p.generator_count();
  std::vector<NcPoly<S>> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) comps.push_back(cyclic_diff(j, p));
  return VectorField<S>(n, std::move(comps));
}

// Multiplication that pinches b into the tensor gap: A (x) B -> A b B.
template <class S>
NcPoly<S> insert_middle(const NcPoly<S>& b, const BiTensor<S>& t) {
  const int n = b.generator_count();
  if (n != t.generator_count()) fail(Errc::invalid_argument, "mixed generator counts");
  std::vector<typename NcPoly<S>::Term> out;
  out.reserve(t.terms().size() * b.terms().size());
  for (const auto& [k, c] : t.terms())
    for (const auto& [wb, cb] : b.terms()) out.emplace_back(k.first + wb + k.second, c * cb);
  return NcPoly<S>::from_terms(n, std::move(out));
}

// Derivation determined by generator images s_j -> b_j: on a word it replaces
// one letter at a time by the corresponding component of b.
template <class S>
NcPoly<S> directional(const VectorField<S>& b, const NcPoly<S>& p) {
  const int n = p.generator_count();
  if (n != b.generator_count()) fail(Errc::invalid_argument, "mixed generator counts");
  std::vector<typename NcPoly<S>::Term> out;
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t k = 0; k < w.length(); ++k) {
      const NcPoly<S>& rep = b[w.letter(k)];
      const Word head = w.prefix(k);
      const Word tail = w.suffix(k + 1);
      for (const auto& [wr, cr] : rep.terms()) out.emplace_back(head + wr + tail, c * cr);
    }
  }
  return NcPoly<S>::from_terms(n, std::move(out));
}

template <class S>
VectorField<S> directional(const VectorField<S>& b, const VectorField<S>& a) {
  const int n = a.generator_count();
  std::vector<NcPoly<S>> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) comps.push_back(directional(b, a[k]));
  return VectorField<S>(n, std::move(comps));
}

// Lie bracket of vector fields, [a, b]_k = D_a b_k - D_b a_k.  This sign is
// the one under which the adjoint identity -<[a,b],c> = <B(c,a),b> holds for
// divergence-free fields (see b_form in leray.hpp).
template <class S>
VectorField<S> bracket(const VectorField<S>& a, const VectorField<S>& b) {
  a.require_same_algebra(b);
  const int n = a.generator_count();
  std::vector<NcPoly<S>> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) comps.push_back(directional(a, b[k]) - directional(b, a[k]));
  return VectorField<S>(n, std::move(comps));
}

}  // namespace nchydro
