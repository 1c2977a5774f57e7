#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pfree/rational.hpp"

namespace pfree {

// Raised when a precondition on the inputs of an operation fails.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a request exceeds an enumeration or memory cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ranked alphabet: letters are 0 .. size-1 and render as 'a', 'b', ...
class Alphabet {
 public:
  static constexpr std::uint32_t kMaxSize = 26;

  explicit Alphabet(std::uint32_t size);

  std::uint32_t size() const noexcept { return size_; }
  char letter(std::uint32_t rank) const;
  std::uint32_t rank_of(char c) const;

  friend bool operator==(Alphabet, Alphabet) = default;

 private:
  std::uint32_t size_;
};

// |A|^n, throwing CapExceeded when it does not fit in 64 bits.
std::uint64_t layer_size(std::uint32_t alphabet_size, std::uint32_t n);

// True when every rank of a length-n word fits in 64 bits.
bool length_supported(std::uint32_t alphabet_size, std::uint32_t n);

// A word of the free monoid stored as (length, base-|A| rank). The first
// letter is the most significant digit, so ranks order a layer
// lexicographically and concat(u, v).rank == u.rank * |A|^|v| + v.rank.
class Word {
 public:
  Word() = default;
  Word(std::uint32_t alphabet_size, std::uint32_t length, std::uint64_t rank);

  static Word empty(std::uint32_t alphabet_size) { return Word(alphabet_size, 0, 0); }
  static Word from_letters(std::uint32_t alphabet_size, const std::vector<std::uint32_t>& letters);
  static Word parse(std::uint32_t alphabet_size, std::string_view text);

  std::uint32_t alphabet_size() const noexcept { return alphabet_; }
  std::uint32_t length() const noexcept { return length_; }
  std::uint64_t rank() const noexcept { return rank_; }
  bool is_empty() const noexcept { return length_ == 0; }

  // Letter at position i (0-based from the left).
  std::uint32_t letter(std::uint32_t i) const;
  std::vector<std::uint32_t> letters() const;

  Word prefix(std::uint32_t len) const;
  Word suffix(std::uint32_t len) const;

  std::string to_string() const;

  // Shortlex: by length, then rank.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.rank_ <=> b.rank_;
  }
  friend bool operator==(const Word& a, const Word& b) {
    return a.alphabet_ == b.alphabet_ && a.length_ == b.length_ && a.rank_ == b.rank_;
  }

 private:
  std::uint32_t alphabet_ = 1;
  std::uint32_t length_ = 0;
  std::uint64_t rank_ = 0;
};

Word concat(const Word& u, const Word& v);
bool is_prefix(const Word& u, const Word& v);
bool is_suffix(const Word& u, const Word& v);
Word reverse(const Word& w);

// mu(w) = |A|^{-|w|}.
Rational mu(const Word& w);
Rational mu(std::uint32_t alphabet_size, std::uint32_t length);

// Sum of mu over a finite collection.
Rational total_mu(const std::vector<Word>& words);

// All words of length n in rank order.
std::vector<Word> layer_words(std::uint32_t alphabet_size, std::uint32_t n);

// Sorted, deduplicated copy (shortlex).
std::vector<Word> normalized(std::vector<Word> words);

bool is_prefix_free(const std::vector<Word>& words);

std::uint32_t max_length(const std::vector<Word>& words);
std::uint32_t min_length(const std::vector<Word>& words);

}  // namespace pfree
