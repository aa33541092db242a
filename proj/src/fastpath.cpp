#include "nchydro/fastpath.hpp"

#include <map>
#include <mutex>

namespace nchydro {

namespace {

NcPoly<Complexd> wick_poly(int n, const Word& w) {
  std::vector<NcPoly<Complexd>::Term> terms;
  for (const auto& [u, k] : wick_poly_terms(w))
    terms.emplace_back(u, Complexd(static_cast<double>(k), 0.0));
  return NcPoly<Complexd>::from_terms(n, std::move(terms));
}

}  // namespace

TruncatedBilinear::TruncatedBilinear(int n, int trunc_degree)
    : n_(n), trunc_degree_(trunc_degree) {
  detail::check_generator_count(n);
  if (trunc_degree < 1) fail(Errc::invalid_argument, "trunc_degree must be positive");
  auto layer = checked_pow(n, trunc_degree + 1, std::size_t{1} << 22);
  if (!layer) fail(Errc::resource_limit, "truncation table exceeds size cap");

  length_offset_.assign(static_cast<std::size_t>(trunc_degree) + 2, 0);
  std::size_t count = 0;
  std::size_t pow = 1;
  for (int len = 0; len <= trunc_degree; ++len) {
    length_offset_[static_cast<std::size_t>(len)] = count;
    count += pow;
    pow *= static_cast<std::size_t>(n);
  }
  length_offset_[static_cast<std::size_t>(trunc_degree) + 1] = count;
  words_per_comp_ = count;
  slots_ = static_cast<std::size_t>(n) * words_per_comp_;
  if (slots_ > (std::size_t{1} << 16))
    fail(Errc::resource_limit, "truncation table exceeds size cap");

  table_.assign(slots_ * slots_, {});

  // Difference quotients of the basis polynomials, indexed by (direction j,
  // basis word w).
  std::vector<std::vector<BiTensor<Complexd>>> fd(
      static_cast<std::size_t>(n),
      std::vector<BiTensor<Complexd>>(words_per_comp_, BiTensor<Complexd>::zero(n)));
  for (std::size_t wi = 0; wi < words_per_comp_; ++wi) {
    NcPoly<Complexd> wpoly = wick_poly(n, word_at(wi));
    for (int j = 0; j < n; ++j)
      fd[static_cast<std::size_t>(j)][wi] = free_diff(j, wpoly);
  }

  for (int aj = 0; aj < n; ++aj) {
    for (std::size_t ai = 0; ai < words_per_comp_; ++ai) {
      NcPoly<Complexd> au = wick_poly(n, word_at(ai));
      const std::size_t a_slot = static_cast<std::size_t>(aj) * words_per_comp_ + ai;
      for (int bk = 0; bk < n; ++bk) {
        for (std::size_t bi = 0; bi < words_per_comp_; ++bi) {
          const std::size_t b_slot = static_cast<std::size_t>(bk) * words_per_comp_ + bi;
          NcPoly<Complexd> term = insert_middle(au, fd[static_cast<std::size_t>(aj)][bi]);
          if (term.is_zero()) continue;
          GradedVector<Complexd> coords = poly_to_fock(term).truncated(trunc_degree);
          std::vector<Entry>& cell = table_[a_slot * slots_ + b_slot];
          for (const auto& [w, c] : coords.coords()) {
            cell.push_back(Entry{static_cast<std::uint32_t>(
                               static_cast<std::size_t>(bk) * words_per_comp_ + word_index(w)),
                           c.real()});
          }
        }
      }
    }
  }
}

std::size_t TruncatedBilinear::word_index(const Word& w) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < w.length(); ++i)
    idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(w.letter(i));
  return length_offset_[w.length()] + idx;
}

Word TruncatedBilinear::word_at(std::size_t idx) const {
  std::size_t len = 0;
  while (len + 1 < length_offset_.size() - 1 && idx >= length_offset_[len + 1]) ++len;
  std::size_t rel = idx - length_offset_[len];
  return detail::word_from_index(n_, static_cast<int>(len), rel);
}

std::vector<Complexd> TruncatedBilinear::to_dense(const GradedField<Complexd>& x) const {
  std::vector<Complexd> out(slots_, Complexd(0.0, 0.0));
  for (int j = 0; j < n_; ++j) {
    for (const auto& [w, c] : x[j].coords()) {
      if (static_cast<int>(w.length()) > trunc_degree_)
        fail(Errc::invalid_argument, "coordinate degree exceeds trunc_degree");
      out[static_cast<std::size_t>(j) * words_per_comp_ + word_index(w)] = c;
    }
  }
  return out;
}

GradedField<Complexd> TruncatedBilinear::to_graded(const std::vector<Complexd>& dense) const {
  GradedField<Complexd> out(n_);
  for (int j = 0; j < n_; ++j) {
    std::vector<GradedVector<Complexd>::Term> terms;
    for (std::size_t wi = 0; wi < words_per_comp_; ++wi) {
      const Complexd& c = dense[static_cast<std::size_t>(j) * words_per_comp_ + wi];
      if (c.real() == 0.0 && c.imag() == 0.0) continue;
      terms.emplace_back(word_at(wi), c);
    }
    out[j] = GradedVector<Complexd>::from_terms(n_, std::move(terms));
  }
  return out;
}

std::vector<Complexd> TruncatedBilinear::apply(const std::vector<Complexd>& a,
                                               const std::vector<Complexd>& b) const {
  std::vector<Complexd> out(slots_, Complexd(0.0, 0.0));
  for (std::size_t ai = 0; ai < slots_; ++ai) {
    const Complexd za = a[ai];
    if (za.real() == 0.0 && za.imag() == 0.0) continue;
    const std::size_t row = ai * slots_;
    for (std::size_t bi = 0; bi < slots_; ++bi) {
      const Complexd zb = b[bi];
      if (zb.real() == 0.0 && zb.imag() == 0.0) continue;
      const std::vector<Entry>& cell = table_[row + bi];
      if (cell.empty()) continue;
      const Complexd f = za * zb;
      for (const Entry& e : cell) out[e.out] += f * e.val;
    }
  }
  return out;
}

std::shared_ptr<const TruncatedBilinear> TruncatedBilinear::get(int n, int trunc_degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const TruncatedBilinear>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(n, trunc_degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::shared_ptr<const TruncatedBilinear>(new TruncatedBilinear(n, trunc_degree));
  cache.emplace(key, table);
  return table;
}

std::vector<Complexd> euler_rhs_dense(const std::vector<Complexd>& z,
                                      const TruncatedBilinear& table,
                                      const SimConfig<Complexd>& cfg) {
  std::vector<Complexd> quad = table.apply(z, z);
  GradedField<Complexd> proj = project_graded(table.to_graded(quad), cfg.trunc_degree, cfg.leray);
  std::vector<Complexd> out = table.to_dense(proj);
  const double nu = cfg.viscosity.real();
  const std::size_t wpc = table.words_per_comp();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = -out[i];
    if (nu != 0.0) {
      const std::size_t wi = i % wpc;
      out[i] -= nu * static_cast<double>(table.word_at(wi).length()) * z[i];
    }
  }
  return out;
}

SimResult<Complexd> simulate_fast(
    const VectorField<Complexd>& v0, const SimConfig<Complexd>& cfg,
    const std::function<void(const SimSample<Complexd>&)>& on_sample) {
  cfg.validate();
  if (v0.generator_count() != cfg.n)
    fail(Errc::invalid_argument, "initial field generator count does not match config");
  if (!v0.is_self_adjoint())
    fail(Errc::invariant_violation, "initial field must be self-adjoint");

  auto table = TruncatedBilinear::get(cfg.n, cfg.trunc_degree);
  GradedField<Complexd> raw = field_to_fock(v0);
  GradedField<Complexd> x0 = project_graded(raw, cfg.trunc_degree, cfg.leray);
  std::vector<Complexd> z = table->to_dense(x0);

  SimResult<Complexd> result{
      .samples = {},
      .final_v = fock_to_field(x0),
      .initial_projection_changed = coord_norm(raw - x0) >
                                    cfg.leray.tol * std::max(1.0, coord_norm(raw))};

  const long long steps = detail::step_count(cfg.dt, cfg.t_end);
  Complexd t(0.0, 0.0);

  auto emit = [&](const std::vector<Complexd>& state) {
    SimSample<Complexd> s = make_sample(t, fock_to_field(table->to_graded(state)), cfg);
    if (s.div_residual > cfg.div_tol)
      fail(Errc::invariant_violation, "divergence residual exceeds tolerance (instability)");
    if (on_sample) on_sample(s);
    result.samples.push_back(std::move(s));
  };

  auto axpy = [](std::vector<Complexd>& y, double alpha, const std::vector<Complexd>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
  };

  // Matches step(): the state is re-projected after every update to shed
  // rounding drift out of the divergence-free subspace.
  auto reproject = [&](std::vector<Complexd>& state) {
    state = table->to_dense(project_graded(table->to_graded(state), cfg.trunc_degree, cfg.leray));
  };

  emit(z);
  const double dt = cfg.dt.real();
  for (long long i = 0; i < steps; ++i) {
    if (cfg.integrator == Integrator::euler_explicit) {
      std::vector<Complexd> k1 = euler_rhs_dense(z, *table, cfg);
      axpy(z, dt, k1);
    } else {
      std::vector<Complexd> k1 = euler_rhs_dense(z, *table, cfg);
      std::vector<Complexd> tmp = z;
      axpy(tmp, dt / 2.0, k1);
      std::vector<Complexd> k2 = euler_rhs_dense(tmp, *table, cfg);
      tmp = z;
      axpy(tmp, dt / 2.0, k2);
      std::vector<Complexd> k3 = euler_rhs_dense(tmp, *table, cfg);
      tmp = z;
      axpy(tmp, dt, k3);
      std::vector<Complexd> k4 = euler_rhs_dense(tmp, *table, cfg);
      axpy(z, dt / 6.0, k1);
      axpy(z, dt / 3.0, k2);
      axpy(z, dt / 3.0, k3);
      axpy(z, dt / 6.0, k4);
    }
    reproject(z);
    t += Complexd(dt, 0.0);
    if ((i + 1) % cfg.output_every == 0 || i + 1 == steps) emit(z);
  }
  result.final_v = fock_to_field(table->to_graded(z));
  result.steps_taken = steps;
  return result;
}

}  // namespace nchydro
