#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "nchydro/error.hpp"
#include "nchydro/scalar.hpp"
#include "nchydro/word.hpp"

namespace nchydro {

namespace detail {

// Sorts a raw term list into canonical order, combines duplicates and drops
// zeros.  All polynomial construction funnels through here.
template <class Key, class S, class Less>
void normalize_terms(std::vector<std::pair<Key, S>>& terms, Less less) {
  std::sort(terms.begin(), terms.end(),
            [&](const auto& a, const auto& b) { return less(a.first, b.first); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    Key key = std::move(terms[i].first);
    S coeff = std::move(terms[i].second);
    std::size_t j = i + 1;
    while (j < terms.size() && !less(key, terms[j].first) && !less(terms[j].first, key)) {
      coeff += terms[j].second;
      ++j;
    }
    if (!ScalarOps<S>::is_zero(coeff)) {
      terms[out].first = std::move(key);
      terms[out].second = std::move(coeff);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

inline void check_generator_count(int n) {
  if (n < 1 || n > 64) fail(Errc::invalid_argument, "generator count must be in 1..64");
}

}  // namespace detail

// Element of the algebra of noncommutative polynomials in n self-adjoint
// generators.  Terms are kept as a flat vector sorted by word order
// (length-then-lex) with nonzero coefficients only.
template <class S>
class NcPoly {
 public:
  using Term = std::pair<Word, S>;

  explicit NcPoly(int n) : n_(n) { detail::check_generator_count(n); }

  static NcPoly zero(int n) { return NcPoly(n); }

  static NcPoly unit(int n) { return monomial(n, Word(), ScalarOps<S>::one()); }

  // j is 0-based here; the text syntax s1..sn is 1-based and handled by the parser.
  static NcPoly generator(int n, int j) {
    detail::check_generator_count(n);
    if (j < 0 || j >= n) fail(Errc::invalid_argument, "generator index out of range");
    return monomial(n, Word::single(j), ScalarOps<S>::one());
  }

  static NcPoly monomial(int n, Word w, S coeff) {
    detail::check_generator_count(n);
    if (w.max_letter() >= n) fail(Errc::invalid_argument, "word letter exceeds generator count");
    NcPoly p(n);
    if (!ScalarOps<S>::is_zero(coeff)) p.terms_.emplace_back(std::move(w), std::move(coeff));
    return p;
  }

  static NcPoly from_terms(int n, std::vector<Term> terms) {
    detail::check_generator_count(n);
    for (const auto& [w, c] : terms) {
      (void)c;
      if (w.max_letter() >= n) fail(Errc::invalid_argument, "word letter exceeds generator count");
    }
    detail::normalize_terms(terms, word_less);
    NcPoly p(n);
    p.terms_ = std::move(terms);
    return p;
  }

  int generator_count() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Length of the longest word; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.back().first.length()); }

  S coefficient(const Word& w) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), w, [](const Term& t, const Word& key) {
      return word_less(t.first, key);
    });
    if (it != terms_.end() && it->first == w) return it->second;
    return ScalarOps<S>::zero();
  }

  NcPoly adjoint() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [w, c] : terms_) out.emplace_back(w.reversed(), ScalarOps<S>::conj(c));
    return from_terms(n_, std::move(out));
  }

  bool is_self_adjoint() const { return *this == adjoint(); }

  NcPoly& operator+=(const NcPoly& o) {
    require_same_algebra(o);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    out.insert(out.end(), terms_.begin(), terms_.end());
    out.insert(out.end(), o.terms_.begin(), o.terms_.end());
    detail::normalize_terms(out, word_less);
    terms_ = std::move(out);
    return *this;
  }
  NcPoly& operator-=(const NcPoly& o) { return *this += -o; }

  NcPoly operator-() const {
    NcPoly p(n_);
    p.terms_.reserve(terms_.size());
    for (const auto& [w, c] : terms_) p.terms_.emplace_back(w, -c);
    return p;
  }

  NcPoly& operator*=(const S& s) {
    if (ScalarOps<S>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    // Scaling by a nonzero scalar cannot create zeros in an exact field, but
    // float underflow can; normalize defensively.
    std::erase_if(terms_, [](const Term& t) { return ScalarOps<S>::is_zero(t.second); });
    return *this;
  }

  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  friend NcPoly operator*(NcPoly a, const S& s) { return a *= s; }
  friend NcPoly operator*(const S& s, NcPoly a) { return a *= s; }

  friend NcPoly operator*(const NcPoly& a, const NcPoly& b) {
    a.require_same_algebra(b);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) out.emplace_back(wa + wb, ca * cb);
    detail::normalize_terms(out, word_less);
    NcPoly p(a.n_);
    p.terms_ = std::move(out);
    return p;
  }

  friend bool operator==(const NcPoly& a, const NcPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

  void require_same_algebra(const NcPoly& o) const {
    if (n_ != o.n_) fail(Errc::invalid_argument, "mixed generator counts");
  }

 private:
  int n_;
  std::vector<Term> terms_;
};

template <class S>
NcPoly<S> poly_power(const NcPoly<S>& p, int m) {
  if (m < 0) fail(Errc::invalid_argument, "negative power");
  NcPoly<S> acc = NcPoly<S>::unit(p.generator_count());
  for (int i = 0; i < m; ++i) acc = acc * p;
  return acc;
}

// Exact-to-float coefficient conversion.
inline NcPoly<Complexd> to_float(const NcPoly<GaussianRational>& p) {
  std::vector<NcPoly<Complexd>::Term> out;
  out.reserve(p.terms().size());
  for (const auto& [w, c] : p.terms()) out.emplace_back(w, to_complexd(c));
  return NcPoly<Complexd>::from_terms(p.generator_count(), std::move(out));
}

// Element of the algebraic tensor square: a finite sum of elementary tensors
// A (x) B.  Used as the codomain of the free difference quotient.
template <class S>
class BiTensor {
 public:
  using Key = std::pair<Word, Word>;
  using Term = std::pair<Key, S>;

  static bool key_less(const Key& a, const Key& b) {
    if (a.first != b.first) return word_less(a.first, b.first);
    return word_less(a.second, b.second);
  }

  explicit BiTensor(int n) : n_(n) { detail::check_generator_count(n); }

  static BiTensor zero(int n) { return BiTensor(n); }

  static BiTensor elementary(int n, Word left, Word right, S coeff) {
    BiTensor t(n);
    if (!ScalarOps<S>::is_zero(coeff))
      t.terms_.emplace_back(Key{std::move(left), std::move(right)}, std::move(coeff));
    return t;
  }

  static BiTensor from_terms(int n, std::vector<Term> terms) {
    detail::normalize_terms(terms, key_less);
    BiTensor t(n);
    t.terms_ = std::move(terms);
    return t;
  }

  int generator_count() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // The flip A (x) B -> B (x) A.
  BiTensor flipped() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.emplace_back(Key{k.second, k.first}, c);
    return from_terms(n_, std::move(out));
  }

  // Leg-wise involution (A (x) B)* = A* (x) B*.
  BiTensor adjoint() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_)
      out.emplace_back(Key{k.first.reversed(), k.second.reversed()}, ScalarOps<S>::conj(c));
    return from_terms(n_, std::move(out));
  }

  BiTensor& operator+=(const BiTensor& o) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    out.insert(out.end(), terms_.begin(), terms_.end());
    out.insert(out.end(), o.terms_.begin(), o.terms_.end());
    detail::normalize_terms(out, key_less);
    terms_ = std::move(out);
    return *this;
  }
  friend BiTensor operator+(BiTensor a, const BiTensor& b) { return a += b; }

  BiTensor operator-() const {
    BiTensor t(n_);
    t.terms_.reserve(terms_.size());
    for (const auto& [k, c] : terms_) t.terms_.emplace_back(k, -c);
    return t;
  }
  friend BiTensor operator-(BiTensor a, const BiTensor& b) { return a + (-b); }

  BiTensor& operator*=(const S& s) {
    for (auto& [k, c] : terms_) c *= s;
    std::erase_if(terms_, [](const Term& t) { return ScalarOps<S>::is_zero(t.second); });
    return *this;
  }
  friend BiTensor operator*(BiTensor a, const S& s) { return a *= s; }

  // Componentwise product (A (x) B)(C (x) D) = AC (x) BD.
  friend BiTensor operator*(const BiTensor& a, const BiTensor& b) {
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        out.emplace_back(Key{ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return from_terms(a.n_, std::move(out));
  }

  friend bool operator==(const BiTensor& a, const BiTensor& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const BiTensor& a, const BiTensor& b) { return !(a == b); }

 private:
  int n_;
  std::vector<Term> terms_;
};

// P (x) 1 and 1 (x) P embeddings, used to state the Leibniz rule.
template <class S>
BiTensor<S> left_embed(const NcPoly<S>& p) {
  std::vector<typename BiTensor<S>::Term> out;
  out.reserve(p.terms().size());
  for (const auto& [w, c] : p.terms()) out.push_back({{w, Word()}, c});
  return BiTensor<S>::from_terms(p.generator_count(), std::move(out));
}

template <class S>
BiTensor<S> right_embed(const NcPoly<S>& p) {
  std::vector<typename BiTensor<S>::Term> out;
  out.reserve(p.terms().size());
  for (const auto& [w, c] : p.terms()) out.push_back({{Word(), w}, c});
  return BiTensor<S>::from_terms(p.generator_count(), std::move(out));
}

// An n-tuple of polynomials; the phase-space points of the flow and the
// values of gradients.
template <class S>
class VectorField {
 public:
  explicit VectorField(int n) : n_(n), comps_(static_cast<std::size_t>(n), NcPoly<S>::zero(n)) {
    detail::check_generator_count(n);
  }

  VectorField(int n, std::vector<NcPoly<S>> comps) : n_(n), comps_(std::move(comps)) {
    detail::check_generator_count(n);
    if (comps_.size() != static_cast<std::size_t>(n))
      fail(Errc::invalid_argument, "field component count must equal generator count");
    for (const auto& p : comps_)
      if (p.generator_count() != n) fail(Errc::invalid_argument, "mixed generator counts");
  }

  static VectorField zero(int n) { return VectorField(n); }

  int generator_count() const { return n_; }
  const NcPoly<S>& operator[](int j) const { return comps_[static_cast<std::size_t>(j)]; }
  NcPoly<S>& operator[](int j) { return comps_[static_cast<std::size_t>(j)]; }
  const std::vector<NcPoly<S>>& components() const { return comps_; }

  bool is_zero() const {
    for (const auto& p : comps_)
      if (!p.is_zero()) return false;
    return true;
  }

  int degree() const {
    int d = -1;
    for (const auto& p : comps_) d = std::max(d, p.degree());
    return d;
  }

  VectorField adjoint() const {
    std::vector<NcPoly<S>> out;
    out.reserve(comps_.size());
    for (const auto& p : comps_) out.push_back(p.adjoint());
    return VectorField(n_, std::move(out));
  }

  bool is_self_adjoint() const {
    for (const auto& p : comps_)
      if (!p.is_self_adjoint()) return false;
    return true;
  }

  VectorField& operator+=(const VectorField& o) {
    require_same_algebra(o);
    for (int j = 0; j < n_; ++j) comps_[j] += o.comps_[j];
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    require_same_algebra(o);
    for (int j = 0; j < n_; ++j) comps_[j] -= o.comps_[j];
    return *this;
  }
  VectorField& operator*=(const S& s) {
    for (auto& p : comps_) p *= s;
    return *this;
  }

  VectorField operator-() const {
    std::vector<NcPoly<S>> out;
    out.reserve(comps_.size());
    for (const auto& p : comps_) out.push_back(-p);
    return VectorField(n_, std::move(out));
  }

  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(VectorField a, const S& s) { return a *= s; }
  friend VectorField operator*(const S& s, VectorField a) { return a *= s; }

  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.n_ == b.n_ && a.comps_ == b.comps_;
  }
  friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

  void require_same_algebra(const VectorField& o) const {
    if (n_ != o.n_) fail(Errc::invalid_argument, "mixed generator counts");
  }

 private:
  int n_;
  std::vector<NcPoly<S>> comps_;
};

inline VectorField<Complexd> to_float(const VectorField<GaussianRational>& v) {
  std::vector<NcPoly<Complexd>> comps;
  comps.reserve(static_cast<std::size_t>(v.generator_count()));
  for (int j = 0; j < v.generator_count(); ++j) comps.push_back(to_float(v[j]));
  return VectorField<Complexd>(v.generator_count(), std::move(comps));
}

}  // namespace nchydro
