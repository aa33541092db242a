#pragma once

#include <memory>
#include <vector>

#include "nchydro/euler.hpp"

namespace nchydro {

// Precomputed sparse bilinear table for the float-mode flow at a fixed
// (n, trunc_degree): the graded coordinates of D_a b truncated to the cutoff,
// for a and b ranging over the Chebyshev-basis fields.  Turns each rhs
// evaluation into a sparse bilinear contraction over coordinate vectors.
// Entries are integers computed in double (no rounding).  Cached per (n, D).
class TruncatedBilinear {
 public:
  static std::shared_ptr<const TruncatedBilinear> get(int n, int trunc_degree);

  int generator_count() const { return n_; }
  int trunc_degree() const { return trunc_degree_; }
  std::size_t words_per_comp() const { return words_per_comp_; }

  std::size_t word_index(const Word& w) const;  // length-grouped, lex within length
  Word word_at(std::size_t idx) const;

  // Dense per-component coordinate layout used by apply().
  std::vector<Complexd> to_dense(const GradedField<Complexd>& x) const;
  GradedField<Complexd> to_graded(const std::vector<Complexd>& dense) const;

  // Coordinates of D_a b truncated to the cutoff (dense layout in/out).
  std::vector<Complexd> apply(const std::vector<Complexd>& a,
                              const std::vector<Complexd>& b) const;

 private:
  TruncatedBilinear(int n, int trunc_degree);

  struct Entry {
    std::uint32_t out;  // dense index (comp, word)
    double val;
  };

  int n_, trunc_degree_;
  std::size_t words_per_comp_ = 0;
  std::vector<std::size_t> length_offset_;           // word count below each length
  std::vector<std::vector<Entry>> table_;            // [a_slot * slots + b_slot]
  std::size_t slots_ = 0;                            // n * words_per_comp
};

// Float-mode rhs in dense coordinates: -Pi_{<=D}(D_v v) - viscosity * N v.
std::vector<Complexd> euler_rhs_dense(const std::vector<Complexd>& z,
                                      const TruncatedBilinear& table,
                                      const SimConfig<Complexd>& cfg);

// Float-mode simulation using the table; trajectories agree with
// simulate<Complexd> (cross-checked in tests).
SimResult<Complexd> simulate_fast(const VectorField<Complexd>& v0,
                                  const SimConfig<Complexd>& cfg,
                                  const std::function<void(const SimSample<Complexd>&)>& on_sample = {});

}  // namespace nchydro
