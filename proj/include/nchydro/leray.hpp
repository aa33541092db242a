#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "nchydro/derivations.hpp"
#include "nchydro/fock.hpp"
#include "nchydro/linalg.hpp"
#include "nchydro/poly.hpp"
#include "nchydro/trace.hpp"

namespace nchydro {

struct LerayOptions {
  std::size_t coord_cap = std::size_t{1} << 20;  // max tensor-layer dimension n^(k+1)
  double tol = 1e-10;                            // float-mode membership tolerance
};

// n^e, or nullopt when the value would exceed cap.
std::optional<std::size_t> checked_pow(int n, int e, std::size_t cap);

// Row of the circulant pseudoinverse of the d-cycle graph Laplacian
// L = 2I - R - R^{-1}: entry m is ((d^2 - 1) - 6 m (d - m)) / (12 d).
// Returned as (numerator, denominator) pairs; cached per d.
const std::vector<std::pair<long, long>>& cycle_lap_pinv_row(int d);

// Structural data for the divergence-free subspace at tensor degree k+1:
// dimensions and ranks.  The generator family is indexed by the full set of
// degree-(k+1) basis words; the kernel per rotation orbit is the constant
// vector, which yields the closed-form rank below.  Cached per (n, k).
class LerayBasis {
 public:
  static std::shared_ptr<const LerayBasis> get(int n, int k, const LerayOptions& opts = {});

  int generator_count() const { return n_; }
  int block_degree() const { return k_; }
  std::size_t ambient_dim() const { return ambient_dim_; }  // n^(k+1)
  std::size_t orbit_count() const { return orbit_count_; }
  std::size_t rank() const { return rank_; }

  // All generator seed words (degree k+1), in canonical order.
  std::vector<Word> generator_seeds() const;

 private:
  LerayBasis(int n, int k, const LerayOptions& opts);

  int n_, k_;
  std::size_t ambient_dim_ = 0;
  std::size_t orbit_count_ = 0;
  std::size_t rank_ = 0;
};

// The field with components (l_j* - r_j*) applied to the seed word: +1 at the
// tail of xi in the component of its first letter, -1 at the head of xi in
// the component of its last letter.
template <class S>
GradedField<S> leray_generator_field(int n, const Word& xi) {
  if (xi.empty()) fail(Errc::invalid_argument, "generator seed must be nonempty");
  if (xi.max_letter() >= n) fail(Errc::invalid_argument, "word letter exceeds generator count");
  GradedField<S> out(n);
  std::vector<typename GradedVector<S>::Term> plus{{xi.suffix(1), ScalarOps<S>::one()}};
  std::vector<typename GradedVector<S>::Term> minus{
      {xi.prefix(xi.length() - 1), -ScalarOps<S>::one()}};
  out[xi.first_letter()] += GradedVector<S>::from_terms(n, std::move(plus));
  out[xi.last_letter()] += GradedVector<S>::from_terms(n, std::move(minus));
  return out;
}

namespace detail {

// Minimal left-rotation representative of w, its period d, and the rotation
// index of w relative to the representative.
struct OrbitPos {
  Word rep;
  int period = 1;
  int index = 0;
};

inline OrbitPos orbit_position(const Word& w) {
  OrbitPos res;
  const std::size_t len = w.length();
  res.rep = w;
  res.period = 1;
  res.index = 0;
  // Determine the period first.
  int period = static_cast<int>(len);
  for (std::size_t i = 1; i < len; ++i) {
    if (w.rotated_left(i) == w) {
      period = static_cast<int>(i);
      break;
    }
  }
  res.period = period;
  Word best = w;
  int best_i = 0;
  for (int i = 1; i < period; ++i) {
    Word rot = w.rotated_left(static_cast<std::size_t>(i));
    if (rot.letters() < best.letters()) {
      best = rot;
      best_i = i;
    }
  }
  res.rep = best;
  // w = rep rotated left by (period - best_i) mod period.
  res.index = best_i == 0 ? 0 : res.period - best_i;
  return res;
}

}  // namespace detail

// Orthogonal projection of graded field coordinates onto the divergence-free
// subspace, degree block by degree block.  When drop_above >= 0, blocks of
// higher degree are discarded (Galerkin truncation) instead of projected.
//
// Each block is handled by solving the normal equations of the generator
// family.  The Gram operator of the family is 2I - R - R^{-1} with R the
// cyclic word rotation, so it is block-circulant over rotation orbits and the
// solve reduces to the closed-form cycle_lap_pinv_row convolution per orbit.
template <class S>
GradedField<S> project_graded(const GradedField<S>& x, int drop_above,
                              const LerayOptions& opts = {}) {
  const int n = x.generator_count();

  // Resource guard per present block degree.
  {
    int max_deg = -1;
    for (int j = 0; j < n; ++j) max_deg = std::max(max_deg, x[j].degree());
    if (drop_above >= 0) max_deg = std::min(max_deg, drop_above);
    if (max_deg >= 0 && !checked_pow(n, max_deg + 1, opts.coord_cap))
      fail(Errc::resource_limit, "projection layer exceeds coordinate cap");
  }

  // y = T* x over tensor words of every present length.
  std::map<Word, S, WordLess> y;
  for (int j = 0; j < n; ++j) {
    for (const auto& [w, c] : x[j].coords()) {
      if (drop_above >= 0 && static_cast<int>(w.length()) > drop_above) continue;
      const Word left = Word::single(j) + w;
      const Word right = w + Word::single(j);
      auto add = [&](const Word& u, const S& v) {
        auto [it, inserted] = y.emplace(u, v);
        if (!inserted) it->second += v;
      };
      add(left, c);
      add(right, -c);
    }
  }

  // Group by rotation orbit.
  struct OrbitAcc {
    int period = 1;
    std::vector<std::pair<int, S>> entries;  // (rotation index, value)
  };
  std::map<Word, OrbitAcc, WordLess> orbits;
  for (const auto& [u, val] : y) {
    if (ScalarOps<S>::is_zero(val)) continue;
    auto pos = detail::orbit_position(u);
    OrbitAcc& acc = orbits[pos.rep];
    acc.period = pos.period;
    acc.entries.emplace_back(pos.index, val);
  }

  // Solve per orbit and assemble T z.
  std::vector<std::vector<typename GradedVector<S>::Term>> out_terms(
      static_cast<std::size_t>(n));
  for (const auto& [rep, acc] : orbits) {
    const int d = acc.period;
    if (d == 1) continue;  // constant orbit: generator vanishes
    const auto& lp = cycle_lap_pinv_row(d);
    std::vector<S> z(static_cast<std::size_t>(d), ScalarOps<S>::zero());
    for (const auto& [m, bm] : acc.entries) {
      for (int i = 0; i < d; ++i) {
        const auto& [num, den] = lp[static_cast<std::size_t>(((i - m) % d + d) % d)];
        if (num == 0) continue;
        z[static_cast<std::size_t>(i)] += bm * ScalarOps<S>::from_fraction(num, den);
      }
    }
    for (int i = 0; i < d; ++i) {
      if (ScalarOps<S>::is_zero(z[static_cast<std::size_t>(i)])) continue;
      const Word u = rep.rotated_left(static_cast<std::size_t>(i));
      const S& zi = z[static_cast<std::size_t>(i)];
      out_terms[static_cast<std::size_t>(u.first_letter())].emplace_back(u.suffix(1), zi);
      out_terms[static_cast<std::size_t>(u.last_letter())].emplace_back(u.prefix(u.length() - 1),
                                                                        -zi);
    }
  }

  GradedField<S> out(n);
  for (int j = 0; j < n; ++j)
    out[j] = GradedVector<S>::from_terms(n, std::move(out_terms[static_cast<std::size_t>(j)]));
  return out;
}

// Projection in polynomial form.  max_degree acts as a guard: components of
// higher degree are rejected rather than silently truncated.
template <class S>
VectorField<S> leray_project(const VectorField<S>& a, int max_degree,
                             const LerayOptions& opts = {}) {
  if (a.degree() > max_degree) fail(Errc::resource_limit, "field degree exceeds projection cap");
  return fock_to_field(project_graded(field_to_fock(a), -1, opts));
}

template <class S>
VectorField<S> leray_project(const VectorField<S>& a, const LerayOptions& opts = {}) {
  return fock_to_field(project_graded(field_to_fock(a), -1, opts));
}

// Galerkin compression: project degree blocks <= trunc_degree, drop the rest.
template <class S>
VectorField<S> leray_project_truncate(const VectorField<S>& a, int trunc_degree,
                                      const LerayOptions& opts = {}) {
  return fock_to_field(project_graded(field_to_fock(a), trunc_degree, opts));
}

// Coefficient-norm of graded field coordinates (equals the Hermitian norm
// since basis words are orthonormal).
template <class S>
double coord_norm(const GradedField<S>& x) {
  double acc = 0.0;
  for (int j = 0; j < x.generator_count(); ++j)
    for (const auto& [w, c] : x[j].coords()) acc += ScalarOps<S>::abs_sq(c);
  return std::sqrt(acc);
}

// Membership test for the divergence-free subspace; returns the flag and the
// relative projection residual (exactly 0.0 in exact mode when a is in the
// subspace).
template <class S>
std::pair<bool, double> is_divergence_free(const VectorField<S>& a,
                                           const LerayOptions& opts = {}) {
  GradedField<S> x = field_to_fock(a);
  GradedField<S> px = project_graded(x, -1, opts);
  GradedField<S> diff = x - px;
  if constexpr (ScalarOps<S>::exact) {
    bool zero = diff.is_zero();
    return {zero, zero ? 0.0 : coord_norm(diff) / std::max(1.0, coord_norm(x))};
  } else {
    double rel = coord_norm(diff) / std::max(1.0, coord_norm(x));
    return {rel <= opts.tol, rel};
  }
}

// sum_j [s_j, a_j]; the curl-like quantity attached to a field.
template <class S>
NcPoly<S> theta(const VectorField<S>& a) {
  const int n = a.generator_count();
  std::vector<typename NcPoly<S>::Term> out;
  for (int j = 0; j < n; ++j) {
    for (const auto& [w, c] : a[j].terms()) {
      out.emplace_back(Word::single(j) + w, c);
      out.emplace_back(w + Word::single(j), -c);
    }
  }
  return NcPoly<S>::from_terms(n, std::move(out));
}

// Sum of all cyclic rotations of each word (p rotations for a word of
// length p; the empty word contributes nothing).
template <class S>
NcPoly<S> c_map(const NcPoly<S>& p) {
  std::vector<typename NcPoly<S>::Term> out;
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t r = 0; r < w.length(); ++r) out.emplace_back(w.rotated_left(r), c);
  }
  return NcPoly<S>::from_terms(p.generator_count(), std::move(out));
}

// Equivalent form sum_j s_j cyclic_diff_j; kept separate as a cross-check.
template <class S>
NcPoly<S> c_map_via_cyclic(const NcPoly<S>& p) {
  const int n = p.generator_count();
  std::vector<typename NcPoly<S>::Term> out;
  for (int j = 0; j < n; ++j) {
    const NcPoly<S> d = cyclic_diff(j, p);
    for (const auto& [w, c] : d.terms()) out.emplace_back(Word::single(j) + w, c);
  }
  return NcPoly<S>::from_terms(n, std::move(out));
}

namespace detail {

inline constexpr std::size_t kPressureLevelCapExact = 128;
inline constexpr std::size_t kPressureLevelCapFloat = 512;

// Word of length len whose letters are the base-n digits of idx (most
// significant first).
inline Word word_from_index(int n, int len, std::size_t idx) {
  Word::Storage s(static_cast<std::size_t>(len), 0);
  for (int i = len - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = static_cast<unsigned char>(idx % static_cast<std::size_t>(n));
    idx /= static_cast<std::size_t>(n);
  }
  return Word(s);
}

inline std::size_t index_of_word(int n, const Word& w) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < w.length(); ++i)
    idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(w.letter(i));
  return idx;
}

// Cached KKT solver for the per-level minimum-norm preimage under the cyclic
// gradient.  Unknowns: monomial coefficients of the potential at word length
// level+1.  Constraints: the cyclic gradient must match the target block.
// The quadratic form is the Hermitian Gram matrix of the monomials, so the
// solved coefficient vector is the unique minimum-norm one.
template <class S>
const PseudoSolver<S>& pressure_level_solver(int n, int level) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<PseudoSolver<S>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(n, level);
  if (auto it = cache.find(key); it != cache.end()) return *it->second;

  const std::size_t cap =
      ScalarOps<S>::exact ? kPressureLevelCapExact : kPressureLevelCapFloat;
  auto vars_opt = checked_pow(n, level + 1, cap);
  if (!vars_opt) fail(Errc::resource_limit, "pressure level exceeds solver cap");
  const std::size_t vars = *vars_opt;
  const std::size_t block = vars / static_cast<std::size_t>(n);  // n^level
  const std::size_t eqs = static_cast<std::size_t>(n) * block;

  DenseMatrix<S> m(vars + eqs, vars + eqs);
  // Gram block.
  for (std::size_t u = 0; u < vars; ++u) {
    Word wu = word_from_index(n, level + 1, u);
    for (std::size_t v = 0; v < vars; ++v) {
      Word wv = word_from_index(n, level + 1, v);
      long long g = noncrossing_pair_count(wu + wv.reversed());
      if (g != 0) m.at(u, v) = ScalarOps<S>::from_long(static_cast<long>(g));
    }
  }
  // Constraint block A (and -A^T): A[(j,w)][u] counts rotations of u at
  // letter j that produce w.
  for (std::size_t u = 0; u < vars; ++u) {
    Word wu = word_from_index(n, level + 1, u);
    for (std::size_t pos = 0; pos < wu.length(); ++pos) {
      const int j = wu.letter(pos);
      const Word rot = wu.suffix(pos + 1) + wu.prefix(pos);
      const std::size_t row =
          vars + static_cast<std::size_t>(j) * block + index_of_word(n, rot);
      m.at(row, u) += ScalarOps<S>::one();
      m.at(u, vars + static_cast<std::size_t>(j) * block + index_of_word(n, rot)) -=
          ScalarOps<S>::one();
    }
  }
  auto solver = std::make_unique<PseudoSolver<S>>(m);
  const PseudoSolver<S>& ref = *solver;
  cache.emplace(key, std::move(solver));
  return ref;
}

}  // namespace detail

// Minimum-Hermitian-norm potential p with cyclic gradient equal to g.  The
// gradient is homogeneous of monomial degree -1, so word-length levels
// decouple and each is solved independently; the additive constant is fixed
// to zero.  Throws when g is not a cyclic gradient.
template <class S>
NcPoly<S> recover_pressure(const VectorField<S>& g) {
  const int n = g.generator_count();

  std::map<int, std::vector<std::pair<std::size_t, S>>> levels;  // level -> rhs entries
  for (int j = 0; j < n; ++j) {
    for (const auto& [w, c] : g[j].terms()) {
      const int level = static_cast<int>(w.length());
      auto blk = checked_pow(n, level, detail::kPressureLevelCapFloat);
      if (!blk) fail(Errc::resource_limit, "pressure level exceeds solver cap");
      const std::size_t row = static_cast<std::size_t>(j) * *blk + detail::index_of_word(n, w);
      levels[level].push_back({row, c});
    }
  }

  std::vector<typename NcPoly<S>::Term> terms;
  for (const auto& [level, rhs_entries] : levels) {
    const auto& solver = detail::pressure_level_solver<S>(n, level);
    auto vars_opt = checked_pow(n, level + 1, detail::kPressureLevelCapFloat);
    const std::size_t vars = *vars_opt;
    const std::size_t eqs = vars;  // n * n^level
    std::vector<S> rhs(vars + eqs, ScalarOps<S>::zero());
    for (const auto& [row, c] : rhs_entries) rhs[vars + row] += c;
    auto solution = solver.solve(rhs);
    if (!solution)
      fail(Errc::invariant_violation, "field is not in the range of the cyclic gradient");
    for (std::size_t u = 0; u < vars; ++u) {
      if (ScalarOps<S>::is_zero((*solution)[u])) continue;
      terms.emplace_back(detail::word_from_index(n, level + 1, u), (*solution)[u]);
    }
  }
  NcPoly<S> p = NcPoly<S>::from_terms(n, std::move(terms));

  // Round-trip verification (also catches float-mode near-miss inputs).
  VectorField<S> back = cyclic_grad(p);
  if constexpr (ScalarOps<S>::exact) {
    if (back != g)
      fail(Errc::invariant_violation, "field is not in the range of the cyclic gradient");
  } else {
    double scale = 1.0;
    for (int j = 0; j < n; ++j)
      for (const auto& [w, c] : g[j].terms())
        scale = std::max(scale, std::sqrt(ScalarOps<S>::abs_sq(c)));
    VectorField<S> diff = back - g;
    double err = 0.0;
    for (int j = 0; j < n; ++j)
      for (const auto& [w, c] : diff[j].terms())
        err = std::max(err, std::sqrt(ScalarOps<S>::abs_sq(c)));
    if (err > 1e-8 * scale)
      fail(Errc::invariant_violation, "field is not in the range of the cyclic gradient");
  }
  return p;
}

}  // namespace nchydro
