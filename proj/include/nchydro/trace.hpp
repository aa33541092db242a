#pragma once

#include "nchydro/derivations.hpp"
#include "nchydro/poly.hpp"

namespace nchydro {

// Number of noncrossing pairings of the letter positions of w in which every
// pair joins two equal letters.  This is the value of the trace on the
// corresponding product of the standard semicircular family.  Memoized
// globally; thread-safe.  Words longer than 64 letters are rejected (the
// counts would no longer be guaranteed to fit in 64 bits).
long long noncrossing_pair_count(const Word& w);

// Trace of a polynomial evaluated on the standard semicircular family: the
// empty word contributes its coefficient, a word contributes its coefficient
// times the matched-pairing count.
template <class S>
S trace(const NcPoly<S>& p) {
  S acc = ScalarOps<S>::zero();
  for (const auto& [w, c] : p.terms()) {
    if (w.length() % 2 != 0) continue;
    long long cnt = noncrossing_pair_count(w);
    if (cnt == 0) continue;
    acc += c * ScalarOps<S>::from_long(static_cast<long>(cnt));
  }
  return acc;
}

// trace(a * b) without materializing the product.
template <class S>
S trace_product(const NcPoly<S>& a, const NcPoly<S>& b) {
  a.require_same_algebra(b);
  S acc = ScalarOps<S>::zero();
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      if ((wa.length() + wb.length()) % 2 != 0) continue;
      long long cnt = noncrossing_pair_count(wa + wb);
      if (cnt == 0) continue;
      acc += ca * cb * ScalarOps<S>::from_long(static_cast<long>(cnt));
    }
  }
  return acc;
}

// Symmetric bilinear pairing sum_j trace(a_j b_j).
template <class S>
S inner_sym(const VectorField<S>& a, const VectorField<S>& b) {
  a.require_same_algebra(b);
  S acc = ScalarOps<S>::zero();
  for (int j = 0; j < a.generator_count(); ++j) acc += trace_product(a[j], b[j]);
  return acc;
}

// Hermitian pairing sum_j trace(a_j b_j*).
template <class S>
S inner_herm(const VectorField<S>& a, const VectorField<S>& b) {
  a.require_same_algebra(b);
  S acc = ScalarOps<S>::zero();
  for (int j = 0; j < a.generator_count(); ++j) acc += trace_product(a[j], b[j].adjoint());
  return acc;
}

// trace(D_v p) computed as sum_j trace(v_j * cyclic_diff_j p); avoids building
// the (large) derived polynomial.
template <class S>
S trace_directional(const VectorField<S>& v, const NcPoly<S>& p) {
  S acc = ScalarOps<S>::zero();
  for (int j = 0; j < v.generator_count(); ++j)
    acc += trace_product(v[j], cyclic_diff(j, p));
  return acc;
}

}  // namespace nchydro
