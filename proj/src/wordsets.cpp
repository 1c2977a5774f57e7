#include "pfree/wordsets.hpp"

#include <algorithm>

#include "pfree/parallel.hpp"

namespace pfree {

namespace {

constexpr std::uint64_t kMaxLayerBits = std::uint64_t{1} << 32;

std::uint64_t checked_layer(std::uint32_t alphabet, std::uint32_t n) {
  const std::uint64_t size = layer_size(alphabet, n);
  if (size > kMaxLayerBits)
    throw CapExceeded("layer " + std::to_string(n) + " over alphabet " + std::to_string(alphabet) +
                      " exceeds the enumeration cap");
  return size;
}

void require_same_alphabet(const WordSet& x, const WordSet& y) {
  if (x.alphabet_size() != y.alphabet_size()) throw InvalidArgument("word sets over different alphabets");
}

void require_within(const WordSet& s, std::uint32_t L) {
  if (auto b = s.bound(); b && *b < L)
    throw InvalidArgument("set is only known to length " + std::to_string(*b) + ", requested " + std::to_string(L));
}

// Greedy split of w into j factors, the first in S and the rest in S^(j-1).
// Shortest first factor first, so the tuple is lexicographically smallest.
std::vector<Word> factorise(const Word& w, std::uint32_t j, const std::vector<WordSet>& pw) {
  std::vector<Word> out;
  Word rest = w;
  for (std::uint32_t left = j; left > 1; --left) {
    bool split = false;
    for (std::uint32_t p = 1; p + (left - 1) <= rest.length(); ++p) {
      const Word head = rest.prefix(p);
      const Word tail = rest.suffix(rest.length() - p);
      if (pw[1].contains(head) && pw[left - 1].contains(tail)) {
        out.push_back(head);
        rest = tail;
        split = true;
        break;
      }
    }
    if (!split) throw std::logic_error("product word has no factorisation");
  }
  out.push_back(rest);
  return out;
}

}  // namespace

Labeling::Labeling(std::uint32_t m, std::vector<std::uint32_t> l, std::vector<std::uint32_t> t)
    : modulus(m), labels(std::move(l)), targets(std::move(t)) {
  if (modulus < 1) throw InvalidArgument("labeling modulus must be positive");
  if (labels.empty()) throw InvalidArgument("labeling needs one label per letter");
  for (auto& v : labels)
    if (v >= modulus) throw InvalidArgument("label out of range mod " + std::to_string(modulus));
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (targets.empty()) throw InvalidArgument("labeling needs at least one target residue");
  if (targets.back() >= modulus) throw InvalidArgument("target out of range mod " + std::to_string(modulus));
}

std::uint32_t Labeling::residue(const Word& w) const {
  if (w.alphabet_size() != labels.size()) throw InvalidArgument("word alphabet does not match labeling");
  std::uint64_t r = 0;
  for (auto l : w.letters()) r += labels[l];
  return static_cast<std::uint32_t>(r % modulus);
}

bool Labeling::accepts(std::uint32_t residue) const {
  return std::binary_search(targets.begin(), targets.end(), residue);
}

// ---------------------------------------------------------------------------

WordSet WordSet::explicit_layers(std::uint32_t alphabet_size, std::vector<Bitmap> layers) {
  Alphabet{alphabet_size};
  if (layers.empty()) layers.emplace_back(1);
  for (std::uint32_t n = 0; n < layers.size(); ++n)
    if (layers[n].size() != layer_size(alphabet_size, n))
      throw InvalidArgument("layer " + std::to_string(n) + " has the wrong number of bits");
  layers[0] = Bitmap(1);
  WordSet s;
  s.kind_ = Kind::Explicit;
  s.alphabet_ = alphabet_size;
  s.bound_ = static_cast<std::uint32_t>(layers.size() - 1);
  s.layers_ = std::make_shared<const std::vector<Bitmap>>(std::move(layers));
  return s;
}

WordSet WordSet::empty(std::uint32_t alphabet_size, std::uint32_t bound) {
  std::vector<Bitmap> layers;
  for (std::uint32_t n = 0; n <= bound; ++n) layers.emplace_back(checked_layer(alphabet_size, n));
  return explicit_layers(alphabet_size, std::move(layers));
}

WordSet WordSet::from_words(std::uint32_t alphabet_size, const std::vector<Word>& words, std::uint32_t bound) {
  std::vector<Bitmap> layers;
  for (std::uint32_t n = 0; n <= bound; ++n) layers.emplace_back(checked_layer(alphabet_size, n));
  for (const auto& w : words) {
    if (w.alphabet_size() != alphabet_size) throw InvalidArgument("word over a different alphabet");
    if (w.length() > bound) throw InvalidArgument("word '" + w.to_string() + "' is longer than the bound");
    if (w.length() > 0) layers[w.length()].set(w.rank());
  }
  return explicit_layers(alphabet_size, std::move(layers));
}

WordSet WordSet::labeled(std::uint32_t alphabet_size, Labeling labeling) {
  Alphabet{alphabet_size};
  if (labeling.labels.size() != alphabet_size)
    throw InvalidArgument("labeling has " + std::to_string(labeling.labels.size()) + " labels for an alphabet of " +
                          std::to_string(alphabet_size));
  WordSet s;
  s.kind_ = Kind::Labeled;
  s.alphabet_ = alphabet_size;
  s.labeling_ = std::move(labeling);
  return s;
}

WordSet WordSet::predicate(std::uint32_t alphabet_size, Predicate fn, std::uint32_t bound) {
  Alphabet{alphabet_size};
  if (!fn) throw InvalidArgument("empty membership predicate");
  WordSet s;
  s.kind_ = Kind::Predicate;
  s.alphabet_ = alphabet_size;
  s.bound_ = bound;
  s.predicate_ = std::move(fn);
  return s;
}

std::optional<std::uint32_t> WordSet::bound() const {
  if (kind_ == Kind::Labeled) return std::nullopt;
  return bound_;
}

void WordSet::require_known(std::uint32_t n) const {
  if (kind_ != Kind::Labeled && n > bound_)
    throw InvalidArgument("length " + std::to_string(n) + " is past the set's bound " + std::to_string(bound_));
}

bool WordSet::contains(const Word& w) const {
  if (w.alphabet_size() != alphabet_) throw InvalidArgument("word over a different alphabet");
  if (w.is_empty()) return false;
  require_known(w.length());
  switch (kind_) {
    case Kind::Explicit:
      return (*layers_)[w.length()].test(w.rank());
    case Kind::Labeled:
      return labeling_.accepts(labeling_.residue(w));
    case Kind::Predicate:
      return predicate_(w);
  }
  return false;
}

Bitmap WordSet::layer(std::uint32_t n) const {
  require_known(n);
  if (kind_ == Kind::Explicit) return (*layers_)[n];
  Bitmap out(checked_layer(alphabet_, n));
  if (n == 0) return out;
  if (kind_ == Kind::Predicate) {
    for (std::uint64_t r = 0; r < out.size(); ++r)
      if (predicate_(Word(alphabet_, n, r))) out.set(r);
    return out;
  }
  // Odometer over ranks, carrying the residue along.
  const std::uint32_t m = labeling_.modulus;
  std::vector<bool> accept(m);
  for (std::uint32_t r = 0; r < m; ++r) accept[r] = labeling_.accepts(r);
  std::vector<std::uint32_t> digits(n, 0);
  std::uint32_t res = static_cast<std::uint32_t>((std::uint64_t{labeling_.labels[0]} * n) % m);
  const auto& lab = labeling_.labels;
  for (std::uint64_t r = 0;; ) {
    if (accept[res]) out.set(r);
    if (++r == out.size()) break;
    std::uint32_t pos = n;
    while (true) {
      --pos;
      const std::uint32_t old = digits[pos];
      if (old + 1 < alphabet_) {
        digits[pos] = old + 1;
        res = (res + m - lab[old] + lab[old + 1]) % m;
        break;
      }
      digits[pos] = 0;
      res = (res + m - lab[old] + lab[0]) % m;
    }
  }
  return out;
}

WordSet WordSet::materialize(std::uint32_t L) const {
  require_known(L);
  if (kind_ == Kind::Explicit && bound_ == L) return *this;
  std::vector<Bitmap> layers;
  layers.reserve(L + 1);
  for (std::uint32_t n = 0; n <= L; ++n) layers.push_back(layer(n));
  return explicit_layers(alphabet_, std::move(layers));
}

std::vector<Word> WordSet::members(std::uint32_t L) const {
  std::vector<Word> out;
  for (std::uint32_t n = 1; n <= L; ++n) layer(n).for_each_set([&](std::uint64_t r) { out.emplace_back(alphabet_, n, r); });
  return out;
}

std::optional<std::uint32_t> WordSet::min_length(std::uint32_t L) const {
  for (std::uint32_t n = 1; n <= L; ++n)
    if (layer(n).any()) return n;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

WordSet odd_occurrence(std::uint32_t alphabet_size, const std::vector<std::uint32_t>& gamma) {
  if (gamma.empty()) throw InvalidArgument("odd-occurrence set needs a non-empty letter subset");
  std::vector<std::uint32_t> labels(alphabet_size, 0);
  for (auto g : gamma) {
    if (g >= alphabet_size) throw InvalidArgument("letter out of range in gamma");
    labels[g] = 1;
  }
  return WordSet::labeled(alphabet_size, Labeling(2, std::move(labels), {1}));
}

WordSet labeled_T(std::uint32_t alphabet_size, const Labeling& labeling) {
  if (labeling.modulus < 2) throw InvalidArgument("labeled T needs modulus at least 2");
  if (labeling.targets != std::vector<std::uint32_t>{1}) throw InvalidArgument("labeled T uses the target {1}");
  return WordSet::labeled(alphabet_size, labeling);
}

WordSet product(const WordSet& x, const WordSet& y, std::uint32_t L, unsigned workers) {
  require_same_alphabet(x, y);
  require_within(x, L);
  require_within(y, L);
  const std::uint32_t a = x.alphabet_size();
  const WordSet xm = x.materialize(L);
  const WordSet ym = y.materialize(L);
  std::vector<Bitmap> xl(L + 1), yl(L + 1), out(L + 1);
  for (std::uint32_t n = 0; n <= L; ++n) {
    xl[n] = xm.layer(n);
    yl[n] = ym.layer(n);
  }
  parallel_for(L + 1, workers, [&](std::size_t idx) {
    const auto n = static_cast<std::uint32_t>(idx);
    Bitmap layer(checked_layer(a, n));
    for (std::uint32_t p = 1; p < n; ++p) {
      const std::uint32_t q = n - p;
      if (yl[q].none()) continue;
      const std::uint64_t scale = layer_size(a, q);
      xl[p].for_each_set([&](std::uint64_t u) { layer.or_at(u * scale, yl[q]); });
    }
    out[n] = std::move(layer);
  });
  return WordSet::explicit_layers(a, std::move(out));
}

std::vector<WordSet> powers(const WordSet& s, std::uint32_t k, std::uint32_t L, unsigned workers) {
  if (k < 1) throw InvalidArgument("power exponent must be at least 1");
  std::vector<WordSet> out(k + 1);
  out[1] = s.materialize(L);
  for (std::uint32_t j = 2; j <= k; ++j) {
    // S^j needs length >= j, so powers past L are empty.
    if (j > L || !out[j - 1].min_length(L)) {
      out[j] = WordSet::empty(s.alphabet_size(), L);
      continue;
    }
    out[j] = product(out[j - 1], out[1], L, workers);
  }
  return out;
}

WordSet power(const WordSet& s, std::uint32_t k, std::uint32_t L, unsigned workers) {
  return powers(s, k, L, workers)[k];
}

WordSet s_intersection(const WordSet& s, const std::vector<std::uint64_t>& a, std::uint32_t L, unsigned workers) {
  if (a.empty()) throw InvalidArgument("S_A needs a non-empty index set");
  const std::uint64_t top = *std::max_element(a.begin(), a.end());
  if (*std::min_element(a.begin(), a.end()) == 0) throw InvalidArgument("S_A indices must be positive");
  const std::uint32_t k = static_cast<std::uint32_t>(std::min<std::uint64_t>(top, L + 1));
  const auto pw = powers(s, k, L, workers);
  std::vector<Bitmap> layers;
  for (std::uint32_t n = 0; n <= L; ++n) {
    Bitmap acc(checked_layer(s.alphabet_size(), n));
    acc.fill();
    for (auto i : a) {
      if (i > L) {
        acc = Bitmap(acc.size());
        break;
      }
      acc &= pw[i].layer(n);
    }
    layers.push_back(std::move(acc));
  }
  return WordSet::explicit_layers(s.alphabet_size(), std::move(layers));
}

WordSet intersection(const WordSet& x, const WordSet& y, std::uint32_t L) {
  require_same_alphabet(x, y);
  std::vector<Bitmap> layers;
  for (std::uint32_t n = 0; n <= L; ++n) layers.push_back(x.layer(n) & y.layer(n));
  return WordSet::explicit_layers(x.alphabet_size(), std::move(layers));
}

WordSet set_union(const WordSet& x, const WordSet& y, std::uint32_t L) {
  require_same_alphabet(x, y);
  std::vector<Bitmap> layers;
  for (std::uint32_t n = 0; n <= L; ++n) layers.push_back(x.layer(n) | y.layer(n));
  return WordSet::explicit_layers(x.alphabet_size(), std::move(layers));
}

WordSet reversed(const WordSet& s, std::uint32_t L) {
  std::vector<Word> words;
  for (const auto& w : s.members(L)) words.push_back(reverse(w));
  return WordSet::from_words(s.alphabet_size(), words, L);
}

// ---------------------------------------------------------------------------

namespace {

std::optional<Witness> first_violation(const std::vector<WordSet>& pw, std::uint32_t j, std::uint32_t L) {
  for (std::uint32_t n = j; n <= L; ++n) {
    const Bitmap hit = pw[1].layer(n) & pw[j].layer(n);
    if (auto r = hit.find_first()) {
      const Word w(pw[1].alphabet_size(), n, *r);
      return Witness{factorise(w, j, pw), w};
    }
  }
  return std::nullopt;
}

}  // namespace

ProductFreeCheck is_k_product_free(const WordSet& s, std::uint32_t k, std::uint32_t L, unsigned workers) {
  if (k < 2) throw InvalidArgument("k must be at least 2");
  require_within(s, L);
  const auto pw = powers(s, k, L, workers);
  ProductFreeCheck out;
  out.verified_to = L;
  out.witness = first_violation(pw, k, L);
  out.ok = !out.witness;
  return out;
}

StrongCheck is_strongly_k_product_free(const WordSet& s, std::uint32_t k, std::uint32_t L, unsigned workers) {
  if (k < 2) throw InvalidArgument("k must be at least 2");
  require_within(s, L);
  const auto pw = powers(s, k, L, workers);
  StrongCheck out;
  out.verified_to = L;
  for (std::uint32_t l = 2; l <= k; ++l) {
    if (auto w = first_violation(pw, l, L)) {
      out.ok = false;
      out.failing = l;
      out.witness = std::move(w);
      break;
    }
  }
  return out;
}

ResidueClasses residue_classes(const WordSet& s, std::uint32_t k, std::uint32_t L, unsigned workers) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  require_within(s, L);
  const std::uint32_t a = s.alphabet_size();
  const auto pw = powers(s, k, L, workers);
  const auto minlen = s.min_length(L);
  std::vector<Bitmap> sl(L + 1);
  for (std::uint32_t n = 0; n <= L; ++n) sl[n] = pw[1].layer(n);

  ResidueClasses out;
  out.empty_word.assign(k, false);
  for (std::uint32_t i = 0; i < k; ++i) {
    std::vector<Bitmap> found, unknown;
    for (std::uint32_t n = 0; n <= L; ++n) {
      found.emplace_back(checked_layer(a, n));
      unknown.emplace_back(checked_layer(a, n));
    }
    const std::uint64_t need = minlen ? std::uint64_t{*minlen} * (i + 1) : std::uint64_t{L} + 1;
    const WordSet& p = pw[i + 1];
    std::vector<Bitmap> pl(L + 1);
    for (std::uint32_t q = 0; q <= L; ++q) pl[q] = p.layer(q);
    for (std::uint32_t len = 0; len + need <= L; ++len) {
      Bitmap& f = found[len];
      Bitmap& u = unknown[len];
      std::vector<char> hit(f.size(), 0);
      parallel_for(f.size(), f.size() >= 256 ? workers : 1, [&](std::size_t r) {
        for (std::uint32_t n = static_cast<std::uint32_t>(len + need); n <= L; ++n) {
          const std::uint32_t q = n - len;
          if (pl[q].any() && sl[n].intersects_at(r * layer_size(a, q), pl[q])) {
            hit[r] = 1;
            return;
          }
        }
      });
      if (len == 0) {
        out.empty_word[i] = hit[0] != 0;
        continue;
      }
      for (std::uint64_t r = 0; r < f.size(); ++r) hit[r] ? f.set(r) : u.set(r);
    }
    out.found.push_back(WordSet::explicit_layers(a, std::move(found)));
    out.unknown.push_back(WordSet::explicit_layers(a, std::move(unknown)));
  }
  return out;
}

WordSet t_prime(const Word& x, std::uint32_t L) {
  if (x.length() < 2 || x.length() % 2 != 0) throw InvalidArgument("x must have even length at least 2");
  const std::uint32_t lx = x.length();
  auto member = [x, lx](const Word& w) {
    const std::uint32_t n = w.length();
    if (n % 2 == 1 && !is_prefix(x, w) && !is_suffix(x, w) && !is_prefix(w, x) && !is_suffix(w, x)) return true;
    return n % 3 == 1 && n >= 2 * lx && w.prefix(lx) == x && w.suffix(lx) == x;
  };
  return WordSet::predicate(x.alphabet_size(), member, L).materialize(L);
}

}  // namespace pfree
