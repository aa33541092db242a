#include <doctest.h>

#include "nchydro/fock.hpp"
#include "nchydro/parse.hpp"
#include "nchydro/random.hpp"
#include "nchydro/trace.hpp"
#include "pairing_bruteforce.hpp"

using namespace nchydro;
using Q = GaussianRational;

namespace {

NcPoly<Q> P(const std::string& text, int n = 2) { return parse_poly<Q>(text, n); }
VectorField<Q> F(const std::string& text, int n = 2) { return parse_field<Q>(text, n); }

Word word_of(std::initializer_list<int> letters) {
  Word w;
  for (int l : letters) w.push_back(l);
  return w;
}

GradedVector<Q> basis_vector(int n, const Word& w) {
  return GradedVector<Q>::from_terms(n, {{w, ScalarOps<Q>::one()}});
}

NcPoly<Q> wick(int n, const Word& w) { return fock_to_poly(basis_vector(n, w)); }

}  // namespace

TEST_CASE("trace on small monomials") {
  CHECK(trace(P("1")) == Q(1));
  CHECK(trace(P("s1^2")) == Q(1));
  CHECK(trace(P("s1^4")) == Q(2));
  CHECK(trace(P("s1*s2*s1*s2")) == Q(0));
  CHECK(trace(P("s1^2*s2^2")) == Q(1));
  CHECK(trace(P("s1^3")) == Q(0));
  CHECK(trace(P("s1*s2")) == Q(0));
}

TEST_CASE("even single-letter moments match the Catalan numbers and brute force") {
  const long long catalan[] = {1, 1, 2, 5, 14, 42, 132};
  Word w;
  for (int m = 0; m <= 4; ++m) {
    CHECK(noncrossing_pair_count(w) == catalan[m]);
    CHECK(nchydro_test::bruteforce_trace_count(w) == static_cast<std::uint64_t>(catalan[m]));
    w.push_back(0);
    CHECK(noncrossing_pair_count(w) == 0);
    w.push_back(0);
  }
}

TEST_CASE("pairing recursion agrees with brute force on random words") {
  Rng rng(31);
  for (int it = 0; it < 60; ++it) {
    const int len = 2 * rng.uniform(0, 4);
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(rng.uniform(0, 2));
    CHECK(noncrossing_pair_count(w) ==
          static_cast<long long>(nchydro_test::bruteforce_trace_count(w)));
  }
}

TEST_CASE("trace is tracial and compatible with the involution") {
  Rng rng(32);
  for (int it = 0; it < 20; ++it) {
    auto p = random_poly<Q>(rng, 2, 5, 4);
    auto q = random_poly<Q>(rng, 2, 5, 4);
    CHECK(trace(p * q) == trace(q * p));
    CHECK(trace_product(p, q) == trace(p * q));
    CHECK(trace(p.adjoint()) == trace(p).conj());
  }
}

TEST_CASE("positivity of the trace on p* p") {
  Rng rng(33);
  for (int it = 0; it < 20; ++it) {
    auto p = random_poly<Q>(rng, 2, 4, 4);
    Q v = trace(p.adjoint() * p);
    CHECK(sgn(v.im) == 0);
    CHECK(sgn(v.re) >= 0);
    if (!p.is_zero()) CHECK(sgn(v.re) > 0);
  }
}

TEST_CASE("symmetric pairing examples") {
  CHECK(inner_sym(F("(s1, 0)"), F("(s1, 0)")) == Q(1));
  CHECK(inner_sym(F("(s2, -s1)"), F("(s1, s2)")) == Q(0));
  CHECK(inner_sym(F("(s1*s2, s2^2)"), F("(0, 0)")) == Q(0));
}

TEST_CASE("hermitian pairing examples and positivity") {
  CHECK(inner_herm(F("(i*s1, 0)"), F("(i*s1, 0)")) == Q(1));
  CHECK(inner_herm(F("(s1*s2, 0)"), F("(s1*s2, 0)")) == Q(1));
  Rng rng(34);
  for (int it = 0; it < 15; ++it) {
    auto a = random_field<Q>(rng, 2, 3, 3);
    Q v = inner_herm(a, a);
    CHECK(sgn(v.im) == 0);
    CHECK(sgn(v.re) >= 0);
    if (!a.is_zero()) CHECK(sgn(v.re) > 0);
  }
}

TEST_CASE("graded coordinates of small polynomials") {
  GradedVector<Q> sq = poly_to_fock(P("s1^2"));
  CHECK(sq.coefficient(Word()) == Q(1));
  CHECK(sq.coefficient(word_of({0, 0})) == Q(1));
  CHECK(sq.coefficient(word_of({0})) == Q(0));

  GradedVector<Q> mixed = poly_to_fock(P("s1*s2"));
  CHECK(mixed == basis_vector(2, word_of({0, 1})));

  CHECK(poly_to_fock(P("1")) == basis_vector(2, Word()));
}

TEST_CASE("basis words decode to Chebyshev-type polynomials") {
  CHECK(wick(2, word_of({0, 0})) == P("s1^2 - 1"));
  CHECK(wick(2, word_of({0, 0, 0})) == P("s1^3 - 2*s1"));
  CHECK(wick(2, word_of({0, 1})) == P("s1*s2"));
  CHECK(wick(2, word_of({0, 1, 0})) == P("s1*s2*s1"));
  CHECK(wick(2, word_of({0, 0, 1})) == P("s1^2*s2 - s2"));
}

TEST_CASE("coordinate round-trip is the identity") {
  Rng rng(35);
  for (int it = 0; it < 20; ++it) {
    auto p = random_poly<Q>(rng, 2, 6, 5);
    CHECK(fock_to_poly(poly_to_fock(p)) == p);
  }
  Rng rng3(36);
  for (int it = 0; it < 10; ++it) {
    auto p = random_poly<Q>(rng3, 3, 5, 5);
    CHECK(fock_to_poly(poly_to_fock(p)) == p);
  }
}

TEST_CASE("basis polynomials are orthonormal under the trace form") {
  std::vector<Word> words = {Word(),          word_of({0}),    word_of({1}),
                             word_of({0, 0}), word_of({0, 1}), word_of({1, 0}),
                             word_of({1, 1}), word_of({0, 1, 0})};
  for (const Word& u : words) {
    for (const Word& w : words) {
      Q expected = (u == w) ? Q(1) : Q(0);
      CHECK(trace_product(wick(2, u), wick(2, w).adjoint()) == expected);
    }
  }
}

TEST_CASE("trace equals the degree-zero coordinate") {
  Rng rng(37);
  for (int it = 0; it < 20; ++it) {
    auto p = random_poly<Q>(rng, 2, 6, 5);
    CHECK(trace(p) == poly_to_fock(p).coefficient(Word()));
  }
}

TEST_CASE("contraction semigroup scales blocks geometrically") {
  auto v = poly_to_fock(P("s1^2 + s1*s2*s1 + 3"));
  Q half = ScalarOps<Q>::from_fraction(1, 2);
  Q third = ScalarOps<Q>::from_fraction(1, 3);

  GradedVector<Q> once = apply_ou_factor(v, half);
  CHECK(once.coefficient(Word()) == v.coefficient(Word()));
  CHECK(once.coefficient(word_of({0, 0})) ==
        v.coefficient(word_of({0, 0})) * ScalarOps<Q>::from_fraction(1, 4));
  CHECK(once.coefficient(word_of({0, 1, 0})) ==
        v.coefficient(word_of({0, 1, 0})) * ScalarOps<Q>::from_fraction(1, 8));

  CHECK(apply_ou_factor(v, ScalarOps<Q>::one()) == v);
  CHECK(apply_ou_factor(apply_ou_factor(v, half), third) ==
        apply_ou_factor(v, ScalarOps<Q>::from_fraction(1, 6)));
}

TEST_CASE("number operator scales each block by its degree") {
  CHECK(apply_number_op(poly_to_fock(P("5"))).is_zero());
  CHECK(apply_number_op(basis_vector(2, word_of({0, 1}))) ==
        basis_vector(2, word_of({0, 1})) * Q(2));
  auto a = poly_to_fock(P("s1^2 + s2"));
  auto b = poly_to_fock(P("s1*s2*s1"));
  CHECK(apply_number_op(a + b) == apply_number_op(a) + apply_number_op(b));
}

TEST_CASE("coordinate involution matches the polynomial involution") {
  Rng rng(38);
  for (int it = 0; it < 15; ++it) {
    auto p = random_poly<Q>(rng, 2, 5, 4);
    CHECK(poly_to_fock(p.adjoint()) == poly_to_fock(p).adjoint());
  }
}

TEST_CASE("coordinate pairings match the polynomial pairings") {
  Rng rng(39);
  for (int it = 0; it < 15; ++it) {
    auto a = random_field<Q>(rng, 2, 3, 3);
    auto b = random_field<Q>(rng, 2, 3, 3);
    CHECK(herm_dot(field_to_fock(a), field_to_fock(b)) == inner_herm(a, b));
    CHECK(sym_dot(field_to_fock(a), field_to_fock(b)) == inner_sym(a, b));
  }
}
