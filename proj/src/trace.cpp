#include "nchydro/trace.hpp"

#include <mutex>
#include <string>
#include <unordered_map>

#include "nchydro/error.hpp"

namespace nchydro {

namespace {

using Letters = Word::Storage;

struct LettersHash {
  std::size_t operator()(const Letters& s) const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using Memo = std::unordered_map<Letters, long long, LettersHash>;

// Core recursion, called with the cache mutex held.  The first position must
// be paired with some later position holding the same letter; the pair splits
// the word into an inside and an outside segment which pair independently.
long long count_rec(const Letters& w, Memo& memo) {
  const std::size_t m = w.size();
  if (m == 0) return 1;
  if (m % 2 != 0) return 0;
  if (auto it = memo.find(w); it != memo.end()) return it->second;
  long long total = 0;
  for (std::size_t k = 1; k < m; k += 2) {  // odd offset => even inside segment
    if (w[k] != w[0]) continue;
    long long inside = count_rec(w.substr(1, k - 1), memo);
    if (inside == 0) continue;
    long long outside = count_rec(w.substr(k + 1), memo);
    total += inside * outside;
  }
  memo.emplace(w, total);
  return total;
}

}  // namespace

long long noncrossing_pair_count(const Word& w) {
  if (w.length() > 64) fail(Errc::resource_limit, "trace word longer than 64 letters");
  if (w.length() % 2 != 0) return 0;
  static std::mutex mutex;
  static Memo memo;
  std::lock_guard<std::mutex> lock(mutex);
  return count_rec(w.letters(), memo);
}

}  // namespace nchydro
