#include "pfree/freegroup.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <unordered_map>

namespace pfree::fg {

namespace {

constexpr std::uint64_t kMaxEnumerated = std::uint64_t{1} << 24;

void require_alphabet(std::uint32_t a) { Alphabet{a}; }

bool reduced(std::span<const SignedLetter> letters) {
  for (std::size_t i = 0; i + 1 < letters.size(); ++i)
    if (letters[i + 1] == letters[i].inverse()) return false;
  return true;
}

// Counts reduced words of `steps` more letters after `last` (nullopt: no
// letter yet), ending in `end` when given.
BigInt extension_count(std::uint32_t a, std::optional<SignedLetter> last, std::uint32_t steps,
                       std::optional<SignedLetter> end) {
  const std::uint32_t s = 2 * a;
  if (steps == 0) return (!end || (last && *last == *end)) ? 1 : 0;
  std::vector<BigInt> v(s, 0), next(s);
  for (std::uint32_t x = 0; x < s; ++x)
    if (!last || x != last->inverse().index()) v[x] = 1;
  for (std::uint32_t step = 1; step < steps; ++step) {
    for (std::uint32_t y = 0; y < s; ++y) {
      next[y] = 0;
      for (std::uint32_t x = 0; x < s; ++x)
        if (y != (x ^ 1U)) next[y] += v[x];
    }
    v.swap(next);
  }
  if (end) return v[end->index()];
  BigInt total = 0;
  for (auto& c : v) total += c;
  return total;
}

// Reduced words packed as base-2^bits digits holding index + 1, first letter lowest.
struct Packer {
  std::uint32_t alphabet;
  unsigned bits;
  std::uint64_t mask;

  explicit Packer(std::uint32_t a, std::uint32_t L)
      : alphabet(a), bits(static_cast<unsigned>(std::bit_width(2 * a))), mask((std::uint64_t{1} << bits) - 1) {
    if (std::uint64_t{L} * bits > 64) throw CapExceeded("length bound too large for packed group search");
  }
  std::uint32_t length(std::uint64_t code) const {
    return static_cast<std::uint32_t>((std::bit_width(code) + bits - 1) / bits);
  }
  std::uint32_t digit(std::uint64_t code, std::uint32_t i) const {
    return static_cast<std::uint32_t>((code >> (bits * i)) & mask);
  }
  std::uint64_t low(std::uint32_t n) const {
    return std::uint64_t{n} * bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (bits * n)) - 1;
  }
  std::uint64_t pack(const ReducedWord& w) const {
    std::uint64_t c = 0;
    for (std::uint32_t i = 0; i < w.length(); ++i) c |= std::uint64_t{w.letters()[i].index() + 1} << (bits * i);
    return c;
  }
  ReducedWord unpack(std::uint64_t code) const {
    std::vector<SignedLetter> letters;
    for (std::uint32_t i = 0, n = length(code); i < n; ++i) letters.push_back(SignedLetter::from_index(digit(code, i) - 1));
    return ReducedWord(alphabet, std::move(letters));
  }
  // reduce(p s) if its length stays within L.
  std::optional<std::uint64_t> multiply(std::uint64_t p, std::uint64_t s, std::uint32_t L) const {
    const std::uint32_t lp = length(p), ls = length(s);
    std::uint32_t c = 0;
    while (c < lp && c < ls && ((digit(p, lp - 1 - c) - 1) ^ 1U) == digit(s, c) - 1) ++c;
    if (lp + ls - 2 * c > L) return std::nullopt;
    return (p & low(lp - c)) | ((s >> (bits * c)) << (bits * (lp - c)));
  }
};

}  // namespace

std::string SignedLetter::to_string() const {
  std::string s(1, static_cast<char>('a' + rank));
  if (inverted) s.push_back('\'');
  return s;
}

ReducedWord::ReducedWord(std::uint32_t alphabet_size, std::vector<SignedLetter> letters)
    : alphabet_(alphabet_size), letters_(std::move(letters)) {
  require_alphabet(alphabet_size);
  for (auto& l : letters_)
    if (l.rank >= alphabet_size) throw InvalidArgument("letter out of range");
  if (!reduced(letters_)) throw InvalidArgument("word is not reduced");
}

std::vector<SignedLetter> parse_letters(std::uint32_t alphabet_size, std::string_view text) {
  const Alphabet alphabet(alphabet_size);
  std::vector<SignedLetter> out;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '\'') {
      if (out.empty() || out.back().inverted) throw InvalidArgument("misplaced apostrophe in '" + std::string(text) + "'");
      out.back().inverted = true;
      continue;
    }
    out.push_back({alphabet.rank_of(c), false});
  }
  return out;
}

ReducedWord ReducedWord::parse(std::uint32_t alphabet_size, std::string_view text) {
  return ReducedWord(alphabet_size, parse_letters(alphabet_size, text));
}

SignedLetter ReducedWord::first() const {
  if (letters_.empty()) throw InvalidArgument("empty word has no first letter");
  return letters_.front();
}

SignedLetter ReducedWord::last() const {
  if (letters_.empty()) throw InvalidArgument("empty word has no last letter");
  return letters_.back();
}

ReducedWord ReducedWord::inverse() const {
  std::vector<SignedLetter> out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return ReducedWord(alphabet_, std::move(out));
}

std::string ReducedWord::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s.push_back(' ');
    s += letters_[i].to_string();
  }
  return s;
}

std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.letters_.size(); ++i)
    if (auto c = a.letters_[i].index() <=> b.letters_[i].index(); c != 0) return c;
  return a.alphabet_ <=> b.alphabet_;
}

ReducedWord reduce(std::uint32_t alphabet_size, std::span<const SignedLetter> letters) {
  std::vector<SignedLetter> stack;
  stack.reserve(letters.size());
  for (const auto& l : letters) {
    if (!stack.empty() && stack.back() == l.inverse())
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return ReducedWord(alphabet_size, std::move(stack));
}

ReducedWord multiply(const ReducedWord& u, const ReducedWord& v) {
  if (u.alphabet_size() != v.alphabet_size()) throw InvalidArgument("words over different alphabets");
  std::vector<SignedLetter> all = u.letters();
  all.insert(all.end(), v.letters().begin(), v.letters().end());
  return reduce(u.alphabet_size(), all);
}

Rational group_mu(std::uint32_t alphabet_size, std::uint32_t length) {
  require_alphabet(alphabet_size);
  if (length == 0) return 1;
  return Rational(BigInt(1), BigInt(2 * alphabet_size) * big_pow(2 * alphabet_size - 1, length - 1));
}

Rational group_mu(const ReducedWord& w) { return group_mu(w.alphabet_size(), w.length()); }

BigInt reduced_count(std::uint32_t alphabet_size, std::uint32_t n) {
  require_alphabet(alphabet_size);
  if (n == 0) return 1;
  return BigInt(2 * alphabet_size) * big_pow(2 * alphabet_size - 1, n - 1);
}

std::vector<ReducedWord> enumerate_layer(std::uint32_t alphabet_size, std::uint32_t n) {
  if (reduced_count(alphabet_size, n) > kMaxEnumerated) throw CapExceeded("reduced layer too large to enumerate");
  std::vector<ReducedWord> out;
  std::vector<SignedLetter> cur;
  const std::uint32_t s = 2 * alphabet_size;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == n) {
      out.emplace_back(alphabet_size, cur);
      return;
    }
    for (std::uint32_t x = 0; x < s; ++x) {
      const auto l = SignedLetter::from_index(x);
      if (!cur.empty() && cur.back() == l.inverse()) continue;
      cur.push_back(l);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

Subsemigroup::Subsemigroup(SignedLetter alpha, SignedLetter beta) : alpha_(alpha), beta_(beta) {
  if (alpha == beta.inverse()) throw InvalidArgument("F^{alpha beta} needs alpha != beta^-1");
}

bool Subsemigroup::contains(const ReducedWord& w) const {
  return !w.is_empty() && w.first() == alpha_ && w.last() == beta_;
}

bool in_subsemigroup(const ReducedWord& w, SignedLetter alpha, SignedLetter beta) {
  return Subsemigroup(alpha, beta).contains(w);
}

std::optional<ReducedWord> concat_no_cancel(const ReducedWord& u, const ReducedWord& v) {
  if (u.alphabet_size() != v.alphabet_size()) throw InvalidArgument("words over different alphabets");
  if (!u.is_empty() && !v.is_empty() && v.first() == u.last().inverse()) return std::nullopt;
  std::vector<SignedLetter> all = u.letters();
  all.insert(all.end(), v.letters().begin(), v.letters().end());
  return ReducedWord(u.alphabet_size(), std::move(all));
}

std::vector<ReducedWord> product_no_cancel(const std::vector<ReducedWord>& x, const std::vector<ReducedWord>& y,
                                           std::uint32_t L) {
  std::vector<ReducedWord> out;
  for (const auto& u : x)
    for (const auto& v : y) {
      if (u.length() + v.length() > L) continue;
      if (auto w = concat_no_cancel(u, v)) out.push_back(std::move(*w));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GroupLabeling::GroupLabeling(std::uint32_t m, std::vector<std::uint32_t> l, std::vector<std::uint32_t> t)
    : modulus(m), labels(std::move(l)), targets(std::move(t)) {
  if (modulus < 1) throw InvalidArgument("labeling modulus must be positive");
  if (labels.empty()) throw InvalidArgument("labeling needs one label per letter");
  for (auto v : labels)
    if (v >= modulus) throw InvalidArgument("label out of range");
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (targets.empty() || targets.back() >= modulus) throw InvalidArgument("targets must be non-empty residues");
}

std::uint32_t GroupLabeling::label(SignedLetter x) const {
  if (x.rank >= labels.size()) throw InvalidArgument("letter out of range for labeling");
  const std::uint32_t l = labels[x.rank] % modulus;
  return x.inverted ? (modulus - l) % modulus : l;
}

std::uint32_t GroupLabeling::residue(std::span<const SignedLetter> letters) const {
  std::uint64_t r = 0;
  for (const auto& x : letters) r += label(x);
  return static_cast<std::uint32_t>(r % modulus);
}

bool GroupLabeling::accepts(std::uint32_t residue) const {
  return std::binary_search(targets.begin(), targets.end(), residue);
}

BigInt group_layer_count(std::uint32_t alphabet_size, const GroupLabeling& labeling,
                         const std::optional<Subsemigroup>& g, std::uint32_t n) {
  require_alphabet(alphabet_size);
  if (labeling.labels.size() != alphabet_size) throw InvalidArgument("labeling does not match the alphabet");
  if (n == 0) return 0;
  const std::uint32_t s = 2 * alphabet_size;
  const std::uint32_t m = labeling.modulus;
  // v[x * m + r]: words ending in letter x with residue r.
  std::vector<BigInt> v(std::size_t{s} * m, 0), next(v.size());
  for (std::uint32_t x = 0; x < s; ++x) {
    const auto l = SignedLetter::from_index(x);
    if (g && l != g->alpha()) continue;
    v[std::size_t{x} * m + labeling.label(l)] += 1;
  }
  for (std::uint32_t step = 1; step < n; ++step) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (std::uint32_t x = 0; x < s; ++x)
      for (std::uint32_t r = 0; r < m; ++r) {
        const BigInt& c = v[std::size_t{x} * m + r];
        if (c == 0) continue;
        for (std::uint32_t y = 0; y < s; ++y) {
          if (y == (x ^ 1U)) continue;
          next[std::size_t{y} * m + (r + labeling.label(SignedLetter::from_index(y))) % m] += c;
        }
      }
    v.swap(next);
  }
  BigInt total = 0;
  for (std::uint32_t x = 0; x < s; ++x) {
    if (g && SignedLetter::from_index(x) != g->beta()) continue;
    for (auto t : labeling.targets) total += v[std::size_t{x} * m + t];
  }
  return total;
}

Rational group_layer_density(std::uint32_t alphabet_size, const GroupLabeling& labeling,
                             const std::optional<Subsemigroup>& g, std::uint32_t n) {
  return Rational(group_layer_count(alphabet_size, labeling, g, n)) * group_mu(alphabet_size, n);
}

bool is_prefix_free(const std::vector<ReducedWord>& c) {
  auto sorted = c;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& u : sorted)
    for (const auto& v : sorted)
      if (u.length() < v.length() && std::equal(u.letters().begin(), u.letters().end(), v.letters().begin()))
        return false;
  return true;
}

Rational cone_measure(const std::vector<ReducedWord>& c, const Subsemigroup& g, std::uint32_t n) {
  Rational total = 0;
  for (const auto& w : c) {
    if (w.length() > n || w.is_empty()) continue;
    const BigInt count = extension_count(w.alphabet_size(), w.last(), n - w.length(), g.beta());
    total += Rational(count) * group_mu(w.alphabet_size(), n);
  }
  return total;
}

ConeBoundCheck cone_bound_check(const std::vector<ReducedWord>& c, const Subsemigroup& g, std::uint32_t n) {
  if (c.empty()) throw InvalidArgument("cone bound needs a non-empty set");
  if (!is_prefix_free(c)) throw InvalidArgument("cone bound needs a prefix-free set");
  std::uint32_t longest = 0;
  Rational mass = 0;
  for (const auto& w : c) {
    if (!g.contains(w)) throw InvalidArgument("word '" + w.to_string() + "' is not in F^{alpha beta}");
    longest = std::max(longest, w.length());
    mass += group_mu(w);
  }
  if (n < longest + 2) throw InvalidArgument("cone bound needs n >= max C + 2");
  const std::uint32_t a = c.front().alphabet_size();
  ConeBoundCheck out;
  out.lhs = cone_measure(c, g, n);
  out.rhs = mass / Rational(BigInt(2 * a - 1) * (2 * a - 1));
  out.holds = out.lhs >= out.rhs;
  return out;
}

GroupSet GroupSet::explicit_words(std::uint32_t alphabet_size, std::vector<ReducedWord> words) {
  require_alphabet(alphabet_size);
  for (const auto& w : words) {
    if (w.alphabet_size() != alphabet_size) throw InvalidArgument("word over a different alphabet");
    if (w.is_empty()) throw InvalidArgument("the empty word cannot be a member");
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  GroupSet s;
  s.alphabet_size = alphabet_size;
  s.words = std::move(words);
  return s;
}

GroupSet GroupSet::labeled(std::uint32_t alphabet_size, GroupLabeling labeling) {
  require_alphabet(alphabet_size);
  if (labeling.labels.size() != alphabet_size) throw InvalidArgument("labeling does not match the alphabet");
  GroupSet s;
  s.alphabet_size = alphabet_size;
  s.labeling = std::move(labeling);
  return s;
}

bool GroupSet::contains(const ReducedWord& w) const {
  if (w.is_empty()) return false;
  if (restrict_to && !restrict_to->contains(w)) return false;
  if (labeling) return labeling->accepts(labeling->residue(w));
  return std::binary_search(words.begin(), words.end(), w);
}

std::vector<ReducedWord> GroupSet::members(std::uint32_t L) const {
  std::vector<ReducedWord> out;
  if (!labeling) {
    for (const auto& w : words)
      if (w.length() <= L && contains(w)) out.push_back(w);
    return out;
  }
  for (std::uint32_t n = 1; n <= L; ++n)
    for (auto& w : enumerate_layer(alphabet_size, n))
      if (contains(w)) out.push_back(std::move(w));
  return out;
}

GroupFreeCheck group_is_k_product_free(const GroupSet& s, std::uint32_t k, std::uint32_t L) {
  if (k < 2) throw InvalidArgument("k must be at least 2");
  const Packer pk(s.alphabet_size, L);
  const auto members = s.members(L);
  std::vector<std::uint64_t> codes;
  for (const auto& w : members) codes.push_back(pk.pack(w));

  // level[j][product] = (previous partial product, last factor), first found wins.
  struct Back {
    std::uint64_t prev;
    std::uint64_t factor;
  };
  std::vector<std::unordered_map<std::uint64_t, Back>> level(k + 1);
  std::vector<std::vector<std::uint64_t>> order(k + 1);
  for (auto c : codes)
    if (level[1].emplace(c, Back{0, c}).second) order[1].push_back(c);
  for (std::uint32_t j = 2; j <= k; ++j) {
    for (auto p : order[j - 1])
      for (auto c : codes)
        if (auto r = pk.multiply(p, c, L); r && level[j].emplace(*r, Back{p, c}).second) order[j].push_back(*r);
  }

  GroupFreeCheck out;
  out.length_cap = L;
  std::optional<ReducedWord> best;
  std::uint64_t best_code = 0;
  for (auto r : order[k]) {
    if (r == 0) continue;
    ReducedWord w = pk.unpack(r);
    if (!s.contains(w)) continue;
    if (!best || w < *best) {
      best = std::move(w);
      best_code = r;
    }
  }
  if (!best) return out;
  out.ok = false;
  GroupWitness wit;
  wit.product = *best;
  std::uint64_t cur = best_code;
  for (std::uint32_t j = k; j >= 1; --j) {
    const Back& b = level[j].at(cur);
    wit.factors.push_back(pk.unpack(b.factor));
    cur = b.prev;
  }
  std::reverse(wit.factors.begin(), wit.factors.end());
  out.witness = std::move(wit);
  return out;
}

}  // namespace pfree::fg
