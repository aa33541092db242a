#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "nchydro/error.hpp"

namespace nchydro {

// A word in the free monoid on the generator alphabet.  Letters are stored as
// 0-based generator indices; the ambient generator count lives on the
// containers (polynomials, fields), which validate letters on construction.
class Word {
 public:
  using Storage = std::basic_string<unsigned char>;

  Word() = default;
  explicit Word(Storage letters) : letters_(std::move(letters)) {}

  static Word single(int letter) {
    Word w;
    w.push_back(letter);
    return w;
  }

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int letter(std::size_t i) const { return static_cast<int>(letters_[i]); }
  int first_letter() const { return static_cast<int>(letters_.front()); }
  int last_letter() const { return static_cast<int>(letters_.back()); }

  void push_back(int letter) {
    if (letter < 0 || letter > 255) fail(Errc::invalid_argument, "generator index out of range");
    letters_.push_back(static_cast<unsigned char>(letter));
  }

  // First `count` letters.
  Word prefix(std::size_t count) const { return Word(letters_.substr(0, count)); }
  // Letters from position `start` to the end.
  Word suffix(std::size_t start) const { return Word(letters_.substr(start)); }
  Word reversed() const { return Word(Storage(letters_.rbegin(), letters_.rend())); }
  Word rotated_left(std::size_t r) const {
    if (letters_.empty()) return *this;
    r %= letters_.size();
    return Word(letters_.substr(r) + letters_.substr(0, r));
  }

  int max_letter() const {
    int m = -1;
    for (unsigned char c : letters_) m = std::max(m, static_cast<int>(c));
    return m;
  }

  const Storage& letters() const { return letters_; }

  friend Word operator+(const Word& a, const Word& b) { return Word(a.letters_ + b.letters_); }
  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Word& a, const Word& b) { return a.letters_ != b.letters_; }

 private:
  Storage letters_;
};

// Canonical term order: shorter words first, ties broken lexicographically.
inline bool word_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.letters() < b.letters();
}

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

struct WordHash {
  std::size_t operator()(const Word& w) const {
    // FNV-1a over the raw letters.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : w.letters()) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace nchydro
