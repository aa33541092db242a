#include "nchydro/fock.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

namespace nchydro {

namespace {

using IntTerms = std::vector<std::pair<Word, long>>;

std::mutex wick_mutex;

struct StorageHash {
  std::size_t operator()(const Word::Storage& s) const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

std::unordered_map<Word::Storage, IntTerms, StorageHash> cache;

// W(empty) = 1 and W(j.u) = s_j W(u) - [u starts with j] W(tail u).  Since s_j
// is a single generator the product is plain word prepending, so the whole
// recursion runs on integer coefficient maps.
const IntTerms& wick_rec(const Word& w) {
  auto it = cache.find(w.letters());
  if (it != cache.end()) return it->second;
  IntTerms result;
  if (w.empty()) {
    result.emplace_back(Word(), 1);
  } else {
    const int j = w.first_letter();
    const Word u = w.suffix(1);
    std::map<Word, long, WordLess> acc;
    for (const auto& [uw, k] : wick_rec(u)) acc[Word::single(j) + uw] += k;
    if (!u.empty() && u.first_letter() == j) {
      for (const auto& [uw, k] : wick_rec(u.suffix(1))) acc[uw] -= k;
    }
    for (auto& [uw, k] : acc)
      if (k != 0) result.emplace_back(uw, k);
  }
  return cache.emplace(w.letters(), std::move(result)).first->second;
}

}  // namespace

const std::vector<std::pair<Word, long>>& wick_poly_terms(const Word& w) {
  std::lock_guard<std::mutex> lock(wick_mutex);
  return wick_rec(w);
}

}  // namespace nchydro
