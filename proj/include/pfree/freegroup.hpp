#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfree/rational.hpp"
#include "pfree/words.hpp"

namespace pfree::fg {

struct SignedLetter {
  std::uint32_t rank = 0;
  bool inverted = false;

  SignedLetter inverse() const noexcept { return {rank, !inverted}; }
  // 2 * rank + inverted, in [0, 2|A|).
  std::uint32_t index() const noexcept { return 2 * rank + (inverted ? 1U : 0U); }
  static SignedLetter from_index(std::uint32_t i) noexcept { return {i / 2, (i & 1U) != 0}; }
  std::string to_string() const;
  friend auto operator<=>(const SignedLetter&, const SignedLetter&) = default;
};

// Reduced word of the free group on |A| generators.
class ReducedWord {
 public:
  ReducedWord() = default;
  // Throws InvalidArgument when the sequence is not reduced.
  ReducedWord(std::uint32_t alphabet_size, std::vector<SignedLetter> letters);

  static ReducedWord empty(std::uint32_t alphabet_size) { return ReducedWord(alphabet_size, {}); }
  // "a b' c" (apostrophe marks an inverse; whitespace optional). Must be reduced.
  static ReducedWord parse(std::uint32_t alphabet_size, std::string_view text);

  std::uint32_t alphabet_size() const noexcept { return alphabet_; }
  std::uint32_t length() const noexcept { return static_cast<std::uint32_t>(letters_.size()); }
  bool is_empty() const noexcept { return letters_.empty(); }
  const std::vector<SignedLetter>& letters() const noexcept { return letters_; }
  SignedLetter first() const;
  SignedLetter last() const;
  ReducedWord inverse() const;
  std::string to_string() const;

  // Shortlex on letter indices.
  friend std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b);
  friend bool operator==(const ReducedWord& a, const ReducedWord& b) = default;

 private:
  std::uint32_t alphabet_ = 1;
  std::vector<SignedLetter> letters_;
};

// Parses a possibly unreduced letter sequence in the same syntax.
std::vector<SignedLetter> parse_letters(std::uint32_t alphabet_size, std::string_view text);

// Cancels adjacent inverse pairs until none remain.
ReducedWord reduce(std::uint32_t alphabet_size, std::span<const SignedLetter> letters);

// reduce(u v).
ReducedWord multiply(const ReducedWord& u, const ReducedWord& v);

// (2|A|)^-1 (2|A| - 1)^-(n-1) for n >= 1, and 1 for n = 0.
Rational group_mu(std::uint32_t alphabet_size, std::uint32_t length);
Rational group_mu(const ReducedWord& w);

// 2|A| (2|A| - 1)^(n-1) reduced words of length n >= 1.
BigInt reduced_count(std::uint32_t alphabet_size, std::uint32_t n);

// All reduced words of length n in shortlex order.
std::vector<ReducedWord> enumerate_layer(std::uint32_t alphabet_size, std::uint32_t n);

// F^{alpha beta}: reduced words starting with alpha and ending with beta.
class Subsemigroup {
 public:
  Subsemigroup(SignedLetter alpha, SignedLetter beta);
  SignedLetter alpha() const noexcept { return alpha_; }
  SignedLetter beta() const noexcept { return beta_; }
  bool contains(const ReducedWord& w) const;

 private:
  SignedLetter alpha_;
  SignedLetter beta_;
};

bool in_subsemigroup(const ReducedWord& w, SignedLetter alpha, SignedLetter beta);

// uv when no cancellation happens at the seam.
std::optional<ReducedWord> concat_no_cancel(const ReducedWord& u, const ReducedWord& v);

// {ab : a in X, b in Y, no seam cancellation, |ab| <= L}, sorted and unique.
std::vector<ReducedWord> product_no_cancel(const std::vector<ReducedWord>& x, const std::vector<ReducedWord>& y,
                                           std::uint32_t L);

// Labels on positive letters; an inverse letter carries the negated label.
struct GroupLabeling {
  std::uint32_t modulus = 1;
  std::vector<std::uint32_t> labels;
  std::vector<std::uint32_t> targets;

  GroupLabeling() = default;
  GroupLabeling(std::uint32_t modulus, std::vector<std::uint32_t> labels, std::vector<std::uint32_t> targets);

  std::uint32_t label(SignedLetter x) const;
  std::uint32_t residue(std::span<const SignedLetter> letters) const;
  std::uint32_t residue(const ReducedWord& w) const { return residue(w.letters()); }
  bool accepts(std::uint32_t residue) const;
};

// |{w reduced, |w| = n, residue(w) in targets, w in G}| by a recursion over
// (last letter, residue) states.
BigInt group_layer_count(std::uint32_t alphabet_size, const GroupLabeling& labeling,
                         const std::optional<Subsemigroup>& g, std::uint32_t n);
Rational group_layer_density(std::uint32_t alphabet_size, const GroupLabeling& labeling,
                             const std::optional<Subsemigroup>& g, std::uint32_t n);

// mu((CF cap G)(n)) for a finite prefix-free C inside G, counting reduced
// extensions of each c that end in beta.
Rational cone_measure(const std::vector<ReducedWord>& c, const Subsemigroup& g, std::uint32_t n);

struct ConeBoundCheck {
  Rational lhs;  // mu((CF cap G)(n))
  Rational rhs;  // mu(C) / (2|A| - 1)^2
  bool holds = false;
};

// Requires C prefix-free, inside G, and n >= max C + 2.
ConeBoundCheck cone_bound_check(const std::vector<ReducedWord>& c, const Subsemigroup& g, std::uint32_t n);

bool is_prefix_free(const std::vector<ReducedWord>& c);

// Either an explicit finite list or a labeled set, optionally cut down to G.
struct GroupSet {
  std::uint32_t alphabet_size = 1;
  std::optional<GroupLabeling> labeling;
  std::vector<ReducedWord> words;  // used when labeling is absent
  std::optional<Subsemigroup> restrict_to;

  static GroupSet explicit_words(std::uint32_t alphabet_size, std::vector<ReducedWord> words);
  static GroupSet labeled(std::uint32_t alphabet_size, GroupLabeling labeling);
  bool contains(const ReducedWord& w) const;
  // Members of length 1..L in shortlex order.
  std::vector<ReducedWord> members(std::uint32_t L) const;
};

struct GroupWitness {
  std::vector<ReducedWord> factors;
  ReducedWord product;
};

struct GroupFreeCheck {
  bool ok = true;
  std::uint32_t length_cap = 0;  // factors, partial products and products all have length <= cap
  std::optional<GroupWitness> witness;
};

// Searches products x_1 ... x_k (with cancellation) of members of length <= L
// whose partial products all reduce to length <= L. Violations found are
// genuine; "ok" only covers that regime.
GroupFreeCheck group_is_k_product_free(const GroupSet& s, std::uint32_t k, std::uint32_t L);

}  // namespace pfree::fg
