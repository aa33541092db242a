#pragma once

#include <utility>
#include <vector>

#include "nchydro/poly.hpp"

namespace nchydro {

// Chebyshev-basis coefficients of the polynomial attached to a tensor-algebra
// basis word (integer coefficients, independent of the scalar field).
// Memoized globally; thread-safe.
const std::vector<std::pair<Word, long>>& wick_poly_terms(const Word& w);

// A vector in the graded completion associated with the generators: a finite
// sparse family of coordinates indexed by basis words, grouped by length
// (= degree).  Coordinates are kept sorted in canonical word order, so equal
// lengths are contiguous.
template <class S>
class GradedVector {
 public:
  using Term = std::pair<Word, S>;

  explicit GradedVector(int n) : n_(n) { detail::check_generator_count(n); }

  static GradedVector zero(int n) { return GradedVector(n); }

  static GradedVector from_terms(int n, std::vector<Term> terms) {
    detail::check_generator_count(n);
    for (const auto& [w, c] : terms) {
      (void)c;
      if (w.max_letter() >= n) fail(Errc::invalid_argument, "word letter exceeds generator count");
    }
    detail::normalize_terms(terms, word_less);
    GradedVector v(n);
    v.coords_ = std::move(terms);
    return v;
  }

  int generator_count() const { return n_; }
  const std::vector<Term>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  int degree() const { return coords_.empty() ? -1 : static_cast<int>(coords_.back().first.length()); }

  S coefficient(const Word& w) const {
    auto it = std::lower_bound(coords_.begin(), coords_.end(), w, [](const Term& t, const Word& key) {
      return word_less(t.first, key);
    });
    if (it != coords_.end() && it->first == w) return it->second;
    return ScalarOps<S>::zero();
  }

  GradedVector& operator+=(const GradedVector& o) {
    std::vector<Term> out;
    out.reserve(coords_.size() + o.coords_.size());
    out.insert(out.end(), coords_.begin(), coords_.end());
    out.insert(out.end(), o.coords_.begin(), o.coords_.end());
    detail::normalize_terms(out, word_less);
    coords_ = std::move(out);
    return *this;
  }
  GradedVector& operator-=(const GradedVector& o) { return *this += -o; }
  GradedVector operator-() const {
    GradedVector v(n_);
    v.coords_.reserve(coords_.size());
    for (const auto& [w, c] : coords_) v.coords_.emplace_back(w, -c);
    return v;
  }
  GradedVector& operator*=(const S& s) {
    for (auto& [w, c] : coords_) c *= s;
    std::erase_if(coords_, [](const Term& t) { return ScalarOps<S>::is_zero(t.second); });
    return *this;
  }
  friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
  friend GradedVector operator*(GradedVector a, const S& s) { return a *= s; }

  friend bool operator==(const GradedVector& a, const GradedVector& b) {
    return a.n_ == b.n_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const GradedVector& a, const GradedVector& b) { return !(a == b); }

  // Antilinear degree-preserving involution: conjugate coefficients, reverse words.
  GradedVector adjoint() const {
    std::vector<Term> out;
    out.reserve(coords_.size());
    for (const auto& [w, c] : coords_) out.emplace_back(w.reversed(), ScalarOps<S>::conj(c));
    return from_terms(n_, std::move(out));
  }

  GradedVector truncated(int max_degree) const {
    std::vector<Term> out;
    for (const auto& [w, c] : coords_)
      if (static_cast<int>(w.length()) <= max_degree) out.emplace_back(w, c);
    GradedVector v(n_);
    v.coords_ = std::move(out);
    return v;
  }

 private:
  int n_;
  std::vector<Term> coords_;
};

// <a, b> with orthonormal basis words: sum_w a_w conj(b_w).
template <class S>
S herm_dot(const GradedVector<S>& a, const GradedVector<S>& b) {
  S acc = ScalarOps<S>::zero();
  auto ia = a.coords().begin();
  auto ib = b.coords().begin();
  while (ia != a.coords().end() && ib != b.coords().end()) {
    if (word_less(ia->first, ib->first)) {
      ++ia;
    } else if (word_less(ib->first, ia->first)) {
      ++ib;
    } else {
      acc += ia->second * ScalarOps<S>::conj(ib->second);
      ++ia;
      ++ib;
    }
  }
  return acc;
}

// Bilinear pairing matching the trace form: sum_w a_w b_{reverse(w)}.
template <class S>
S sym_dot(const GradedVector<S>& a, const GradedVector<S>& b) {
  S acc = ScalarOps<S>::zero();
  for (const auto& [w, c] : a.coords()) {
    S other = b.coefficient(w.reversed());
    if (!ScalarOps<S>::is_zero(other)) acc += c * other;
  }
  return acc;
}

// Coordinates of p applied to the vacuum: letters act right-to-left, each as
// prepend-plus-annihilate.
template <class S>
GradedVector<S> poly_to_fock(const NcPoly<S>& p) {
  const int n = p.generator_count();
  std::vector<typename GradedVector<S>::Term> acc;
  for (const auto& [w, c] : p.terms()) {
    std::vector<typename GradedVector<S>::Term> cur;
    cur.emplace_back(Word(), ScalarOps<S>::one());
    for (std::size_t i = w.length(); i-- > 0;) {
      const int j = w.letter(i);
      std::vector<typename GradedVector<S>::Term> next;
      next.reserve(cur.size() * 2);
      for (const auto& [u, cu] : cur) {
        next.emplace_back(Word::single(j) + u, cu);
        if (!u.empty() && u.first_letter() == j) next.emplace_back(u.suffix(1), cu);
      }
      detail::normalize_terms(next, word_less);
      cur = std::move(next);
    }
    for (auto& [u, cu] : cur) acc.emplace_back(std::move(u), c * cu);
  }
  return GradedVector<S>::from_terms(n, std::move(acc));
}

// Inverse of poly_to_fock: each basis word maps to its Chebyshev-basis
// polynomial.
template <class S>
NcPoly<S> fock_to_poly(const GradedVector<S>& v) {
  const int n = v.generator_count();
  std::vector<typename NcPoly<S>::Term> out;
  for (const auto& [w, c] : v.coords()) {
    for (const auto& [u, k] : wick_poly_terms(w))
      out.emplace_back(u, c * ScalarOps<S>::from_long(k));
  }
  return NcPoly<S>::from_terms(n, std::move(out));
}

// Multiplies the degree-k block by factor^k.
template <class S>
GradedVector<S> apply_ou_factor(const GradedVector<S>& v, const S& factor) {
  std::vector<typename GradedVector<S>::Term> out;
  out.reserve(v.coords().size());
  S power = ScalarOps<S>::one();
  std::size_t power_len = 0;
  for (const auto& [w, c] : v.coords()) {
    while (power_len < w.length()) {
      power *= factor;
      ++power_len;
    }
    out.emplace_back(w, c * power);
  }
  return GradedVector<S>::from_terms(v.generator_count(), std::move(out));
}

// Semigroup action at time t >= 0 (float scalars): degree-k block scales by
// exp(-k t).
inline GradedVector<Complexd> apply_ou(const GradedVector<Complexd>& v, double t) {
  if (t < 0) fail(Errc::invalid_argument, "semigroup time must be nonnegative");
  return apply_ou_factor(v, Complexd(std::exp(-t), 0.0));
}

// Grading operator: degree-k block scales by k.
template <class S>
GradedVector<S> apply_number_op(const GradedVector<S>& v) {
  std::vector<typename GradedVector<S>::Term> out;
  out.reserve(v.coords().size());
  for (const auto& [w, c] : v.coords()) {
    if (w.empty()) continue;
    out.emplace_back(w, c * ScalarOps<S>::from_long(static_cast<long>(w.length())));
  }
  return GradedVector<S>::from_terms(v.generator_count(), std::move(out));
}

// Componentwise graded coordinates of a vector field.
template <class S>
class GradedField {
 public:
  explicit GradedField(int n)
      : n_(n), comps_(static_cast<std::size_t>(n), GradedVector<S>::zero(n)) {
    detail::check_generator_count(n);
  }
  GradedField(int n, std::vector<GradedVector<S>> comps) : n_(n), comps_(std::move(comps)) {
    if (comps_.size() != static_cast<std::size_t>(n))
      fail(Errc::invalid_argument, "field component count must equal generator count");
  }

  int generator_count() const { return n_; }
  const GradedVector<S>& operator[](int j) const { return comps_[static_cast<std::size_t>(j)]; }
  GradedVector<S>& operator[](int j) { return comps_[static_cast<std::size_t>(j)]; }

  int degree() const {
    int d = -1;
    for (const auto& c : comps_) d = std::max(d, c.degree());
    return d;
  }
  bool is_zero() const {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  GradedField& operator+=(const GradedField& o) {
    for (int j = 0; j < n_; ++j) comps_[j] += o.comps_[j];
    return *this;
  }
  GradedField& operator-=(const GradedField& o) {
    for (int j = 0; j < n_; ++j) comps_[j] -= o.comps_[j];
    return *this;
  }
  GradedField& operator*=(const S& s) {
    for (auto& c : comps_) c *= s;
    return *this;
  }
  friend GradedField operator+(GradedField a, const GradedField& b) { return a += b; }
  friend GradedField operator-(GradedField a, const GradedField& b) { return a -= b; }
  friend bool operator==(const GradedField& a, const GradedField& b) {
    return a.n_ == b.n_ && a.comps_ == b.comps_;
  }
  friend bool operator!=(const GradedField& a, const GradedField& b) { return !(a == b); }

 private:
  int n_;
  std::vector<GradedVector<S>> comps_;
};

template <class S>
GradedField<S> field_to_fock(const VectorField<S>& v) {
  const int n = v.generator_count();
  std::vector<GradedVector<S>> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) comps.push_back(poly_to_fock(v[j]));
  return GradedField<S>(n, std::move(comps));
}

template <class S>
VectorField<S> fock_to_field(const GradedField<S>& v) {
  const int n = v.generator_count();
  std::vector<NcPoly<S>> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) comps.push_back(fock_to_poly(v[j]));
  return VectorField<S>(n, std::move(comps));
}

template <class S>
S herm_dot(const GradedField<S>& a, const GradedField<S>& b) {
  S acc = ScalarOps<S>::zero();
  for (int j = 0; j < a.generator_count(); ++j) acc += herm_dot(a[j], b[j]);
  return acc;
}

template <class S>
S sym_dot(const GradedField<S>& a, const GradedField<S>& b) {
  S acc = ScalarOps<S>::zero();
  for (int j = 0; j < a.generator_count(); ++j) acc += sym_dot(a[j], b[j]);
  return acc;
}

}  // namespace nchydro
