#pragma once
// Independent brute-force oracle for semicircular moments: enumerate EVERY
// pair partition of the letter positions, discard the crossing ones with an
// explicit geometric test, and count those whose blocks pair equal letters.
// Deliberately naive — no recursion sharing, no memoization — so it cannot
// share a bug with the production pairing recursion.

#include <cstdint>
#include <utility>
#include <vector>

#include "nchydro/word.hpp"

namespace nchydro_test {

using Pairing = std::vector<std::pair<int, int>>;

inline void enumerate_rec(std::vector<int>& partner, std::size_t len, Pairing& current,
                          std::vector<Pairing>& out) {
  std::size_t first = 0;
  while (first < len && partner[first] >= 0) ++first;
  if (first == len) {
    out.push_back(current);
    return;
  }
  for (std::size_t j = first + 1; j < len; ++j) {
    if (partner[j] >= 0) continue;
    partner[first] = static_cast<int>(j);
    partner[j] = static_cast<int>(first);
    current.emplace_back(static_cast<int>(first), static_cast<int>(j));
    enumerate_rec(partner, len, current, out);
    current.pop_back();
    partner[first] = -1;
    partner[j] = -1;
  }
}

// All (len-1)!! pair partitions of {0, ..., len-1}; empty when len is odd.
inline std::vector<Pairing> all_pair_partitions(std::size_t len) {
  std::vector<Pairing> out;
  if (len % 2 != 0) return out;
  std::vector<int> partner(len, -1);
  Pairing current;
  enumerate_rec(partner, len, current, out);
  return out;
}

// Two chords (a,b) and (c,d) with a<b, c<d cross iff one endpoint of each
// lies strictly inside the other's span: a < c < b < d or c < a < d < b.
inline bool has_crossing(const Pairing& pairing) {
  for (std::size_t i = 0; i < pairing.size(); ++i) {
    for (std::size_t j = i + 1; j < pairing.size(); ++j) {
      const auto [a, b] = pairing[i];
      const auto [c, d] = pairing[j];
      if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) return true;
    }
  }
  return false;
}

// Number of non-crossing pair partitions of the word's positions that match
// equal letters: the brute-force value of the trace of the word monomial.
inline std::uint64_t bruteforce_trace_count(const nchydro::Word& w) {
  const std::size_t len = w.length();
  if (len == 0) return 1;
  std::uint64_t count = 0;
  for (const Pairing& pairing : all_pair_partitions(len)) {
    if (has_crossing(pairing)) continue;
    bool matched = true;
    for (const auto& [a, b] : pairing) {
      if (w.letter(static_cast<std::size_t>(a)) != w.letter(static_cast<std::size_t>(b))) {
        matched = false;
        break;
      }
    }
    if (matched) ++count;
  }
  return count;
}

}  // namespace nchydro_test
