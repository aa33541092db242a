#include "nchydro/fock_oracle.hpp"

#include <cmath>

#include "nchydro/fock.hpp"
#include "nchydro/leray.hpp"
#include "nchydro/random.hpp"

namespace nchydro {

TruncatedFock::TruncatedFock(int n, int level, std::size_t dim_cap) : n_(n), level_(level) {
  detail::check_generator_count(n);
  if (level < 0) fail(Errc::invalid_argument, "truncation level must be nonnegative");
  length_offset_.assign(static_cast<std::size_t>(level) + 2, 0);
  std::size_t count = 0;
  std::size_t pow = 1;
  for (int len = 0; len <= level; ++len) {
    length_offset_[static_cast<std::size_t>(len)] = count;
    if (count > dim_cap - pow) fail(Errc::resource_limit, "truncated space exceeds dimension cap");
    count += pow;
    pow *= static_cast<std::size_t>(n);
  }
  length_offset_[static_cast<std::size_t>(level) + 1] = count;
  dim_ = count;

  basis_.reserve(dim_);
  for (int len = 0; len <= level; ++len) {
    const std::size_t layer = length_offset_[static_cast<std::size_t>(len) + 1] -
                              length_offset_[static_cast<std::size_t>(len)];
    for (std::size_t idx = 0; idx < layer; ++idx)
      basis_.push_back(detail::word_from_index(n, len, idx));
  }

  prepend_.assign(static_cast<std::size_t>(n), std::vector<std::uint32_t>(dim_, npos));
  append_.assign(static_cast<std::size_t>(n), std::vector<std::uint32_t>(dim_, npos));
  for (std::size_t i = 0; i < dim_; ++i) {
    const Word& w = basis_[i];
    if (static_cast<int>(w.length()) >= level) continue;
    for (int j = 0; j < n; ++j) {
      prepend_[static_cast<std::size_t>(j)][i] =
          static_cast<std::uint32_t>(index_of(Word::single(j) + w));
      append_[static_cast<std::size_t>(j)][i] =
          static_cast<std::uint32_t>(index_of(w + Word::single(j)));
    }
  }
}

std::size_t TruncatedFock::index_of(const Word& w) const {
  if (static_cast<int>(w.length()) > level_)
    fail(Errc::invalid_argument, "word exceeds truncation level");
  return length_offset_[w.length()] + detail::index_of_word(n_, w);
}

void TruncatedFock::apply_generator(int j, const std::vector<Complexd>& x,
                                    std::vector<Complexd>& y) const {
  const auto& pre = prepend_[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::uint32_t pi = pre[i];
    if (pi == npos) continue;
    y[pi] += x[i];  // creation
    y[i] += x[pi];  // annihilation (transpose)
  }
}

void TruncatedFock::apply_right_generator(int j, const std::vector<Complexd>& x,
                                          std::vector<Complexd>& y) const {
  const auto& app = append_[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::uint32_t ai = app[i];
    if (ai == npos) continue;
    y[ai] += x[i];
    y[i] += x[ai];
  }
}

void TruncatedFock::apply_left_annihilation(int j, const std::vector<Complexd>& x,
                                            std::vector<Complexd>& y) const {
  const auto& pre = prepend_[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::uint32_t pi = pre[i];
    if (pi == npos) continue;
    y[i] += x[pi];
  }
}

void TruncatedFock::apply_right_annihilation(int j, const std::vector<Complexd>& x,
                                             std::vector<Complexd>& y) const {
  const auto& app = append_[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::uint32_t ai = app[i];
    if (ai == npos) continue;
    y[i] += x[ai];
  }
}

Complexd TruncatedFock::vacuum_expectation(const NcPoly<Complexd>& p) const {
  if (p.generator_count() != n_) fail(Errc::invalid_argument, "mixed generator counts");
  if (p.degree() > level_)
    fail(Errc::invalid_argument, "polynomial degree exceeds truncation level");
  Complexd acc(0.0, 0.0);
  for (const auto& [w, c] : p.terms()) {
    std::vector<Complexd> x(dim_, Complexd(0.0, 0.0));
    x[0] = Complexd(1.0, 0.0);  // vacuum
    for (std::size_t i = w.length(); i-- > 0;) {
      std::vector<Complexd> y(dim_, Complexd(0.0, 0.0));
      apply_generator(w.letter(i), x, y);
      x = std::move(y);
    }
    acc += c * x[0];
  }
  return acc;
}

std::vector<double> TruncatedFock::generator_matrix(int j) const {
  std::vector<double> m(dim_ * dim_, 0.0);
  const auto& pre = prepend_[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::uint32_t pi = pre[i];
    if (pi == npos) continue;
    m[pi * dim_ + i] += 1.0;
    m[i * dim_ + pi] += 1.0;
  }
  return m;
}

namespace {

double vec_norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

XkOracleReport oracle_xk_check(int n, int k, double tol, std::uint64_t seed) {
  XkOracleReport report;
  if (k < 1) fail(Errc::invalid_argument, "block degree must be positive for the oracle check");

  TruncatedFock space(n, k + 1);
  auto basis = LerayBasis::get(n, k);
  report.structural_rank = basis->rank();

  const std::size_t layer = static_cast<std::size_t>(std::pow(double(n), double(k)));
  auto layer_dim = checked_pow(n, k, std::size_t{1} << 20);
  if (!layer_dim || *layer_dim != layer) fail(Errc::resource_limit, "oracle layer too large");
  const std::size_t fdim = static_cast<std::size_t>(n) * layer;

  // Numeric generator family via the matrix annihilation operators.
  std::vector<std::vector<double>> gens;
  const std::size_t seeds = static_cast<std::size_t>(std::pow(double(n), double(k + 1)));
  std::vector<Complexd> xi(space.dim(), Complexd(0.0, 0.0));
  for (std::size_t s = 0; s < seeds; ++s) {
    const Word w = detail::word_from_index(n, k + 1, s);
    std::fill(xi.begin(), xi.end(), Complexd(0.0, 0.0));
    xi[space.index_of(w)] = Complexd(1.0, 0.0);
    std::vector<double> g(fdim, 0.0);
    for (int j = 0; j < n; ++j) {
      std::vector<Complexd> left(space.dim(), Complexd(0.0, 0.0));
      std::vector<Complexd> right(space.dim(), Complexd(0.0, 0.0));
      space.apply_left_annihilation(j, xi, left);
      space.apply_right_annihilation(j, xi, right);
      for (std::size_t idx = 0; idx < layer; ++idx) {
        const std::size_t src = space.index_of(detail::word_from_index(n, k, idx));
        g[static_cast<std::size_t>(j) * layer + idx] = (left[src] - right[src]).real();
      }
    }
    gens.push_back(std::move(g));
  }

  // Modified Gram-Schmidt for the numeric rank and an orthonormal frame.
  std::vector<std::vector<double>> q;
  for (const auto& gen : gens) {
    std::vector<double> v = gen;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qi : q) {
        const double d = vec_dot(v, qi);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * qi[i];
      }
    const double nv = vec_norm(v);
    if (nv > 1e-9) {
      for (double& x : v) x /= nv;
      q.push_back(std::move(v));
    }
  }
  report.numeric_rank = q.size();

  // Compare the two projectors.
  auto project_structural = [&](const std::vector<double>& v) {
    GradedField<Complexd> x(n);
    for (int j = 0; j < n; ++j) {
      std::vector<GradedVector<Complexd>::Term> terms;
      for (std::size_t idx = 0; idx < layer; ++idx) {
        const double val = v[static_cast<std::size_t>(j) * layer + idx];
        if (val != 0.0)
          terms.emplace_back(detail::word_from_index(n, k, idx), Complexd(val, 0.0));
      }
      x[j] = GradedVector<Complexd>::from_terms(n, std::move(terms));
    }
    GradedField<Complexd> px = project_graded(x, -1);
    std::vector<double> out(fdim, 0.0);
    for (int j = 0; j < n; ++j)
      for (const auto& [w, c] : px[j].coords())
        out[static_cast<std::size_t>(j) * layer + detail::index_of_word(n, w)] = c.real();
    return out;
  };
  auto project_numeric = [&](const std::vector<double>& v) {
    std::vector<double> out(fdim, 0.0);
    for (const auto& qi : q) {
      const double d = vec_dot(v, qi);
      for (std::size_t i = 0; i < fdim; ++i) out[i] += d * qi[i];
    }
    return out;
  };

  double worst = 0.0;
  auto compare_on = [&](const std::vector<double>& v) {
    std::vector<double> a = project_structural(v);
    std::vector<double> b = project_numeric(v);
    for (std::size_t i = 0; i < fdim; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  };
  for (const auto& gen : gens) compare_on(gen);
  Rng rng(seed);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> v(fdim);
    for (double& x : v) x = static_cast<double>(rng.uniform(-50, 50)) / 10.0;
    compare_on(v);
  }
  report.max_residual = worst;
  report.ok = (report.numeric_rank == report.structural_rank) && worst <= tol;
  return report;
}

}  // namespace nchydro
