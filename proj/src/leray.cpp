#include "nchydro/leray.hpp"

#include <map>
#include <mutex>

namespace nchydro {

std::optional<std::size_t> checked_pow(int n, int e, std::size_t cap) {
  std::size_t acc = 1;
  for (int i = 0; i < e; ++i) {
    if (acc > cap / static_cast<std::size_t>(n)) return std::nullopt;
    acc *= static_cast<std::size_t>(n);
  }
  if (acc > cap) return std::nullopt;
  return acc;
}

const std::vector<std::pair<long, long>>& cycle_lap_pinv_row(int d) {
  static std::mutex mutex;
  static std::map<int, std::vector<std::pair<long, long>>> cache;
  if (d < 1) fail(Errc::invalid_argument, "cycle length must be positive");
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<long, long>> row;
  row.reserve(static_cast<std::size_t>(d));
  const long dl = d;
  for (long m = 0; m < dl; ++m) {
    // ((d^2 - 1)/12 - m(d - m)/2) / d over a common denominator 12 d.
    row.emplace_back(dl * dl - 1 - 6 * m * (dl - m), 12 * dl);
  }
  return cache.emplace(d, std::move(row)).first->second;
}

namespace {

// Euler totient by trial division; arguments stay tiny.
std::size_t totient(std::size_t n) {
  std::size_t result = n;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Number of rotation orbits of length-len words over an n-letter alphabet
// (Burnside over the cyclic group).
std::size_t necklace_count(int n, int len) {
  std::size_t total = 0;
  for (int d = 1; d <= len; ++d) {
    if (len % d != 0) continue;
    std::size_t power = 1;
    for (int i = 0; i < len / d; ++i) power *= static_cast<std::size_t>(n);
    total += totient(static_cast<std::size_t>(d)) * power;
  }
  return total / static_cast<std::size_t>(len);
}

}  // namespace

LerayBasis::LerayBasis(int n, int k, const LerayOptions& opts) : n_(n), k_(k) {
  detail::check_generator_count(n);
  if (k < 0) fail(Errc::invalid_argument, "block degree must be nonnegative");
  auto dim = checked_pow(n, k + 1, opts.coord_cap);
  if (!dim) fail(Errc::resource_limit, "tensor layer exceeds coordinate cap");
  ambient_dim_ = *dim;
  orbit_count_ = necklace_count(n, k + 1);
  // Each rotation orbit of size d contributes d - 1 to the rank (the kernel
  // of the generator Gram operator per orbit is spanned by the constant
  // vector), so the rank is the layer dimension minus the orbit count.
  rank_ = ambient_dim_ - orbit_count_;
}

std::shared_ptr<const LerayBasis> LerayBasis::get(int n, int k, const LerayOptions& opts) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const LerayBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto basis = std::shared_ptr<const LerayBasis>(new LerayBasis(n, k, opts));
  cache.emplace(key, basis);
  return basis;
}

std::vector<Word> LerayBasis::generator_seeds() const {
  std::vector<Word> seeds;
  seeds.reserve(ambient_dim_);
  for (std::size_t idx = 0; idx < ambient_dim_; ++idx)
    seeds.push_back(detail::word_from_index(n_, k_ + 1, idx));
  return seeds;
}

}  // namespace nchydro
