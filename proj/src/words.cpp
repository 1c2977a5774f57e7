#include "pfree/words.hpp"

#include <algorithm>
#include <limits>

namespace pfree {

namespace {

using u128 = unsigned __int128;

void require_same_alphabet(const Word& u, const Word& v) {
  if (u.alphabet_size() != v.alphabet_size())
    throw InvalidArgument("words over different alphabets (" + std::to_string(u.alphabet_size()) +
                          " vs " + std::to_string(v.alphabet_size()) + ")");
}

// |A|^n as 128-bit, saturating at 2^127.
u128 pow128(std::uint32_t base, std::uint32_t n) {
  u128 r = 1;
  const u128 limit = u128(1) << 127;
  for (std::uint32_t i = 0; i < n && base > 1; ++i) {
    r *= base;
    if (r >= limit) return limit;
  }
  return r;
}

}  // namespace

Alphabet::Alphabet(std::uint32_t size) : size_(size) {
  if (size < 1 || size > kMaxSize)
    throw InvalidArgument("alphabet size must be in [1, 26], got " + std::to_string(size));
}

char Alphabet::letter(std::uint32_t rank) const {
  if (rank >= size_) throw InvalidArgument("letter rank out of range");
  return static_cast<char>('a' + rank);
}

std::uint32_t Alphabet::rank_of(char c) const {
  if (c < 'a' || static_cast<std::uint32_t>(c - 'a') >= size_)
    throw InvalidArgument(std::string("letter '") + c + "' not in alphabet of size " + std::to_string(size_));
  return static_cast<std::uint32_t>(c - 'a');
}

bool length_supported(std::uint32_t alphabet_size, std::uint32_t n) {
  return pow128(alphabet_size, n) - 1 <= std::numeric_limits<std::uint64_t>::max();
}

std::uint64_t layer_size(std::uint32_t alphabet_size, std::uint32_t n) {
  const u128 r = pow128(alphabet_size, n);
  if (r > std::numeric_limits<std::uint64_t>::max())
    throw CapExceeded("layer " + std::to_string(n) + " over alphabet " + std::to_string(alphabet_size) +
                      " has more than 2^64 words");
  return static_cast<std::uint64_t>(r);
}

Word::Word(std::uint32_t alphabet_size, std::uint32_t length, std::uint64_t rank)
    : alphabet_(alphabet_size), length_(length), rank_(rank) {
  Alphabet{alphabet_size};
  if (!length_supported(alphabet_size, length))
    throw CapExceeded("word length " + std::to_string(length) + " exceeds the 64-bit rank width");
  if (static_cast<u128>(rank) >= pow128(alphabet_size, length))
    throw InvalidArgument("rank out of range for word length " + std::to_string(length));
}

Word Word::from_letters(std::uint32_t alphabet_size, const std::vector<std::uint32_t>& letters) {
  if (!length_supported(alphabet_size, static_cast<std::uint32_t>(letters.size())))
    throw CapExceeded("word too long for the 64-bit rank width");
  std::uint64_t rank = 0;
  for (auto l : letters) {
    if (l >= alphabet_size) throw InvalidArgument("letter out of range");
    rank = rank * alphabet_size + l;
  }
  return Word(alphabet_size, static_cast<std::uint32_t>(letters.size()), rank);
}

Word Word::parse(std::uint32_t alphabet_size, std::string_view text) {
  const Alphabet alphabet(alphabet_size);
  std::vector<std::uint32_t> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(alphabet.rank_of(c));
  return from_letters(alphabet_size, letters);
}

std::uint32_t Word::letter(std::uint32_t i) const {
  if (i >= length_) throw InvalidArgument("letter index out of range");
  if (alphabet_ == 1) return 0;
  std::uint64_t r = rank_;
  for (std::uint32_t j = length_ - 1; j > i; --j) r /= alphabet_;
  return static_cast<std::uint32_t>(r % alphabet_);
}

std::vector<std::uint32_t> Word::letters() const {
  std::vector<std::uint32_t> out(length_);
  std::uint64_t r = rank_;
  for (std::uint32_t j = length_; j > 0; --j) {
    out[j - 1] = static_cast<std::uint32_t>(r % alphabet_);
    r /= alphabet_;
  }
  return out;
}

Word Word::prefix(std::uint32_t len) const {
  if (len > length_) throw InvalidArgument("prefix longer than word");
  std::uint64_t r = rank_;
  for (std::uint32_t j = len; j < length_ && alphabet_ > 1; ++j) r /= alphabet_;
  return Word(alphabet_, len, alphabet_ > 1 ? r : 0);
}

Word Word::suffix(std::uint32_t len) const {
  if (len > length_) throw InvalidArgument("suffix longer than word");
  if (alphabet_ == 1 || len == length_) return Word(alphabet_, len, alphabet_ == 1 ? 0 : rank_);
  return Word(alphabet_, len, rank_ % layer_size(alphabet_, len));
}

std::string Word::to_string() const {
  std::string s;
  s.reserve(length_);
  for (auto l : letters()) s.push_back(static_cast<char>('a' + l));
  return s;
}

Word concat(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  const std::uint32_t a = u.alphabet_size();
  const std::uint32_t len = u.length() + v.length();
  if (!length_supported(a, len)) throw CapExceeded("concatenation exceeds the 64-bit rank width");
  if (a == 1) return Word(a, len, 0);
  return Word(a, len, u.rank() * layer_size(a, v.length()) + v.rank());
}

bool is_prefix(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  return u.length() <= v.length() && v.prefix(u.length()) == u;
}

bool is_suffix(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  return u.length() <= v.length() && v.suffix(u.length()) == u;
}

Word reverse(const Word& w) {
  auto letters = w.letters();
  std::reverse(letters.begin(), letters.end());
  return Word::from_letters(w.alphabet_size(), letters);
}

Rational mu(std::uint32_t alphabet_size, std::uint32_t length) {
  return Rational(BigInt(1), big_pow(alphabet_size, length));
}

Rational mu(const Word& w) { return mu(w.alphabet_size(), w.length()); }

Rational total_mu(const std::vector<Word>& words) {
  Rational sum = 0;
  for (const auto& w : words) sum += mu(w);
  return sum;
}

std::vector<Word> layer_words(std::uint32_t alphabet_size, std::uint32_t n) {
  const std::uint64_t size = layer_size(alphabet_size, n);
  if (size > (std::uint64_t{1} << 28)) throw CapExceeded("layer too large to enumerate");
  std::vector<Word> out;
  out.reserve(size);
  for (std::uint64_t r = 0; r < size; ++r) out.emplace_back(alphabet_size, n, r);
  return out;
}

std::vector<Word> normalized(std::vector<Word> words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

bool is_prefix_free(const std::vector<Word>& words) {
  // In dictionary order every word lying between u and an extension of u also
  // extends u, so checking neighbours suffices.
  auto sorted = normalized(words);
  std::sort(sorted.begin(), sorted.end(), [](const Word& u, const Word& v) {
    const std::uint32_t m = std::min(u.length(), v.length());
    const auto pu = u.prefix(m).rank();
    const auto pv = v.prefix(m).rank();
    if (pu != pv) return pu < pv;
    return u.length() < v.length();
  });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (is_prefix(sorted[i], sorted[i + 1])) return false;
  return true;
}

std::uint32_t max_length(const std::vector<Word>& words) {
  std::uint32_t m = 0;
  for (const auto& w : words) m = std::max(m, w.length());
  return m;
}

std::uint32_t min_length(const std::vector<Word>& words) {
  if (words.empty()) return 0;
  std::uint32_t m = words.front().length();
  for (const auto& w : words) m = std::min(m, w.length());
  return m;
}

}  // namespace pfree
