#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "pfree/bitmap.hpp"
#include "pfree/words.hpp"

namespace pfree {

// Letters carry residues mod m; a word's residue is the sum over its letters.
struct Labeling {
  std::uint32_t modulus = 1;
  std::vector<std::uint32_t> labels;   // one per letter
  std::vector<std::uint32_t> targets;  // sorted, unique, non-empty

  Labeling() = default;
  Labeling(std::uint32_t modulus, std::vector<std::uint32_t> labels, std::vector<std::uint32_t> targets);

  std::uint32_t residue(const Word& w) const;
  bool accepts(std::uint32_t residue) const;
  bool operator==(const Labeling&) const = default;
};

// A subset of the free semigroup. The empty word is never a member.
// Explicit and predicate sets are known only up to bound(); labeled sets are
// decidable at every length.
class WordSet {
 public:
  enum class Kind { Explicit, Labeled, Predicate };
  using Predicate = std::function<bool(const Word&)>;

  WordSet() = default;

  // layers[n] holds |A|^n bits for n = 0..L; bit 0 of layers[0] is ignored.
  static WordSet explicit_layers(std::uint32_t alphabet_size, std::vector<Bitmap> layers);
  static WordSet from_words(std::uint32_t alphabet_size, const std::vector<Word>& words, std::uint32_t bound);
  static WordSet empty(std::uint32_t alphabet_size, std::uint32_t bound);
  static WordSet labeled(std::uint32_t alphabet_size, Labeling labeling);
  static WordSet predicate(std::uint32_t alphabet_size, Predicate fn, std::uint32_t bound);

  Kind kind() const noexcept { return kind_; }
  std::uint32_t alphabet_size() const noexcept { return alphabet_; }
  // Largest length the set is known at; nullopt for labeled sets.
  std::optional<std::uint32_t> bound() const;
  const Labeling* labeling() const noexcept { return kind_ == Kind::Labeled ? &labeling_ : nullptr; }

  // Throws InvalidArgument for lengths past bound().
  bool contains(const Word& w) const;
  // Members of length n as a bitmap of |A|^n bits.
  Bitmap layer(std::uint32_t n) const;
  std::uint64_t layer_count(std::uint32_t n) const { return layer(n).count(); }
  // Explicit copy holding layers 0..L.
  WordSet materialize(std::uint32_t L) const;
  // Members up to length L in shortlex order.
  std::vector<Word> members(std::uint32_t L) const;
  // Shortest member length up to L, if any.
  std::optional<std::uint32_t> min_length(std::uint32_t L) const;

 private:
  void require_known(std::uint32_t n) const;

  Kind kind_ = Kind::Explicit;
  std::uint32_t alphabet_ = 1;
  std::uint32_t bound_ = 0;
  std::shared_ptr<const std::vector<Bitmap>> layers_;
  Labeling labeling_;
  Predicate predicate_;
};

// O_Gamma: words with an odd number of letters from gamma.
WordSet odd_occurrence(std::uint32_t alphabet_size, const std::vector<std::uint32_t>& gamma);

// Words whose label sum is 1 mod m. Requires target {1} and m >= 2.
WordSet labeled_T(std::uint32_t alphabet_size, const Labeling& labeling);

// {xy : x in X, y in Y} up to length L, by layer convolution.
WordSet product(const WordSet& x, const WordSet& y, std::uint32_t L, unsigned workers = 1);
WordSet power(const WordSet& s, std::uint32_t k, std::uint32_t L, unsigned workers = 1);
// powers[j] = S^j for j = 1..k (index 0 unused).
std::vector<WordSet> powers(const WordSet& s, std::uint32_t k, std::uint32_t L, unsigned workers = 1);

// Intersection of S^i over i in A, up to length L.
WordSet s_intersection(const WordSet& s, const std::vector<std::uint64_t>& a, std::uint32_t L, unsigned workers = 1);

WordSet intersection(const WordSet& x, const WordSet& y, std::uint32_t L);
WordSet set_union(const WordSet& x, const WordSet& y, std::uint32_t L);
WordSet reversed(const WordSet& s, std::uint32_t L);

struct Witness {
  std::vector<Word> factors;
  Word product;
};

struct ProductFreeCheck {
  bool ok = true;
  std::uint32_t verified_to = 0;
  std::optional<Witness> witness;
};

// S disjoint from S^k up to length L. A failure carries the shortest product
// (smallest rank among those) and its lexicographically smallest factorisation.
ProductFreeCheck is_k_product_free(const WordSet& s, std::uint32_t k, std::uint32_t L, unsigned workers = 1);

struct StrongCheck {
  bool ok = true;
  std::uint32_t verified_to = 0;
  std::optional<std::uint32_t> failing;  // smallest failing l
  std::optional<Witness> witness;
};

// l-product-free for every l = 2..k.
StrongCheck is_strongly_k_product_free(const WordSet& s, std::uint32_t k, std::uint32_t L, unsigned workers = 1);

// T_i = {a : S meets a S^(i+1)} for i = 0..k-1, decided for |a| + (i+1) minlen(S) <= L.
// Words in that range with no witness up to length L land in unknown[i].
struct ResidueClasses {
  std::vector<WordSet> found;
  std::vector<WordSet> unknown;
  std::vector<bool> empty_word;  // empty_word[i]: the empty word lies in T_i
};

ResidueClasses residue_classes(const WordSet& s, std::uint32_t k, std::uint32_t L, unsigned workers = 1);

// Odd words w where neither of x, w is a prefix or suffix of the other, plus
// every xwx (w possibly empty) of length 1 mod 3. Requires |x| even and >= 2.
WordSet t_prime(const Word& x, std::uint32_t L);

}  // namespace pfree
