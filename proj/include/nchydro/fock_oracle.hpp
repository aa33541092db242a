#pragma once

#include <cstdint>
#include <vector>

#include "nchydro/poly.hpp"

namespace nchydro {

// Independent float-mode oracle: the generators realized as explicit matrices
// (creation + annihilation) on the tensor algebra truncated at a finite
// level.  Vacuum expectations of polynomials of degree <= level are exact up
// to float rounding, because the truncation only discards tensor degrees that
// such polynomials cannot reach and return from.
class TruncatedFock {
 public:
  // Basis: all words of length <= level, ordered length-then-lex.
  TruncatedFock(int n, int level, std::size_t dim_cap = std::size_t{1} << 20);

  int generator_count() const { return n_; }
  int level() const { return level_; }
  std::size_t dim() const { return dim_; }

  const std::vector<Word>& basis() const { return basis_; }
  std::size_t index_of(const Word& w) const;

  // y += s_j x with s_j = (left creation) + (left annihilation).
  void apply_generator(int j, const std::vector<Complexd>& x, std::vector<Complexd>& y) const;
  // y += (right creation_j + right annihilation_j) x.
  void apply_right_generator(int j, const std::vector<Complexd>& x,
                             std::vector<Complexd>& y) const;

  // Left/right annihilation alone (adjoints of the creation parts).
  void apply_left_annihilation(int j, const std::vector<Complexd>& x,
                               std::vector<Complexd>& y) const;
  void apply_right_annihilation(int j, const std::vector<Complexd>& x,
                                std::vector<Complexd>& y) const;

  // <P(s) vac, vac>; requires deg P <= level.
  Complexd vacuum_expectation(const NcPoly<Complexd>& p) const;

  // Dense matrix of s_j (dim x dim), row-major; for small-dimension
  // inspection in tests.
  std::vector<double> generator_matrix(int j) const;

 private:
  int n_, level_;
  std::size_t dim_ = 0;
  std::vector<Word> basis_;
  std::vector<std::size_t> length_offset_;
  // prepend_[j][i] = index of (j . basis_[i]) or npos; append_ likewise.
  std::vector<std::vector<std::uint32_t>> prepend_, append_;
  static constexpr std::uint32_t npos = 0xffffffffu;
};

struct XkOracleReport {
  bool ok = false;
  std::size_t numeric_rank = 0;
  std::size_t structural_rank = 0;
  double max_residual = 0.0;  // worst disagreement between the two projectors
};

// Cross-checks the structural divergence-free projection at tensor degree
// k+1 against a matrix-level construction: generators are built with the
// truncated-space annihilation operators, their span is orthonormalized
// numerically, and the resulting projector is compared with the closed-form
// one on the generator family and on random vectors.
XkOracleReport oracle_xk_check(int n, int k, double tol = 1e-8, std::uint64_t seed = 1);

}  // namespace nchydro
