#include "pfree/steeple.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace pfree {

namespace {

constexpr std::uint64_t kMaxCaptureWords = std::uint64_t{1} << 27;

using Key = std::pair<std::uint32_t, std::uint64_t>;  // (length, rank)

bool has_proper_prefix_in(const Word& x, const std::set<Key>& keys) {
  for (std::uint32_t len = 1; len < x.length(); ++len)
    if (keys.count({len, x.prefix(len).rank()})) return true;
  return false;
}

// Mark every child of a set bit in `parent` inside `child`.
void expand_into(const Bitmap& parent, Bitmap& child, std::uint32_t a) {
  parent.for_each_set([&](std::uint64_t r) {
    for (std::uint32_t l = 0; l < a; ++l) child.set(r * a + l);
  });
}

}  // namespace

std::uint32_t headcount(const WordSet& b, const Word& x) {
  std::uint32_t h = 0;
  for (std::uint32_t len = 1; len <= x.length(); ++len)
    if (b.contains(x.prefix(len))) ++h;
  return h;
}

Rational stage_mu(const std::vector<Word>& stage) { return total_mu(stage); }

Steeplechase capture(const WordSet& b, const Rational& eps, std::uint32_t L) {
  if (eps <= 0) throw InvalidArgument("epsilon must be positive");
  if (L < 1) throw InvalidArgument("length bound must be at least 1");
  const std::uint32_t a = b.alphabet_size();
  std::uint64_t total = 0;
  for (std::uint32_t n = 1; n <= L; ++n) {
    total += layer_size(a, n);
    if (total > kMaxCaptureWords) throw CapExceeded("capture bound covers too many words");
  }

  std::vector<Bitmap> member(L + 1), alive(L + 1);
  std::vector<std::vector<std::uint16_t>> hc(L + 1);
  hc[0].assign(1, 0);
  for (std::uint32_t n = 1; n <= L; ++n) {
    member[n] = b.layer(n);
    alive[n] = Bitmap(member[n].size());
    alive[n].fill();
    hc[n].resize(member[n].size());
    for (std::uint64_t r = 0; r < member[n].size(); ++r)
      hc[n][r] = static_cast<std::uint16_t>(hc[n - 1][r / a] + (member[n].test(r) ? 1 : 0));
  }

  Steeplechase out;
  out.alphabet_size = a;
  out.epsilon = eps;
  out.bound = L;
  out.truncated = member[L].any();

  Rational budget = eps;
  for (std::uint32_t k = 1;; ++k) {
    budget /= 2;
    std::vector<Bitmap> dk(L + 1);
    bool any = false;
    for (std::uint32_t n = 1; n <= L; ++n) {
      dk[n] = Bitmap(member[n].size());
      Bitmap cand = member[n] & alive[n];
      cand.for_each_set([&](std::uint64_t r) {
        if (hc[n][r] == k) dk[n].set(r);
      });
      any = any || dk[n].any();
    }
    if (!any) break;

    // Smallest cutoff whose tail mass is within budget.
    std::uint32_t cutoff = L;
    Rational tail = 0;
    for (std::uint32_t n = L; n >= 1; --n) {
      tail += Rational(BigInt(dk[n].count()), big_pow(a, n));
      if (tail > budget) break;
      cutoff = n - 1;
    }

    std::vector<Word> stage;
    for (std::uint32_t n = 1; n <= cutoff; ++n) dk[n].for_each_set([&](std::uint64_t r) { stage.emplace_back(a, n, r); });
    if (stage.empty()) {
      if (k == 1) throw InvalidArgument("length bound too small to produce a first stage");
      break;
    }
    out.stages.push_back(std::move(stage));
    out.cutoffs.push_back(cutoff);
    out.indices.push_back(k);

    // Remove (D_k \ C_k)F.
    Bitmap dead(1);
    for (std::uint32_t n = 1; n <= L; ++n) {
      Bitmap next(member[n].size());
      expand_into(dead, next, a);
      if (n > cutoff) next |= dk[n];
      alive[n].subtract(next);
      dead = std::move(next);
    }
  }
  if (out.stages.empty()) throw InvalidArgument("set has no members up to the length bound");

  out.spread = true;
  for (std::size_t i = 0; i + 1 < out.stages.size(); ++i)
    if (max_length(out.stages[i]) >= min_length(out.stages[i + 1])) out.spread = false;
  Rational hi = stage_mu(out.stages.front()), lo = hi;
  for (const auto& st : out.stages) {
    const Rational m = stage_mu(st);
    hi = std::max(hi, m);
    lo = std::min(lo, m);
  }
  out.tight = hi - lo <= eps;
  return out;
}

std::vector<std::string> validate(const Steeplechase& s) {
  std::vector<std::string> errors;
  const auto name = [](std::size_t i) { return "stage " + std::to_string(i + 1); };
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    if (s.stages[i].empty()) errors.push_back(name(i) + " is empty");
    if (!is_prefix_free(s.stages[i])) errors.push_back(name(i) + " is not prefix-free");
  }
  for (std::size_t i = 0; i + 1 < s.stages.size(); ++i) {
    std::set<Key> keys;
    for (const auto& w : s.stages[i]) keys.insert({w.length(), w.rank()});
    for (const auto& w : s.stages[i + 1])
      if (!has_proper_prefix_in(w, keys)) {
        errors.push_back(name(i + 1) + " word '" + w.to_string() + "' has no proper prefix in " + name(i));
        break;
      }
    if (s.spread && !s.stages[i].empty() && !s.stages[i + 1].empty() &&
        max_length(s.stages[i]) >= min_length(s.stages[i + 1]))
      errors.push_back("spread fails between " + name(i) + " and " + name(i + 1));
  }
  if (s.tight && !s.stages.empty()) {
    Rational hi = stage_mu(s.stages.front()), lo = hi;
    for (const auto& st : s.stages) {
      hi = std::max(hi, stage_mu(st));
      lo = std::min(lo, stage_mu(st));
    }
    if (hi - lo > s.epsilon) errors.push_back("stage masses differ by more than epsilon");
  }
  return errors;
}

Steeplechase make_spread(const Steeplechase& s) {
  if (s.stages.size() < 2) throw InvalidArgument("need at least two stages to extract a spread subsequence");
  Steeplechase out = s;
  out.stages.clear();
  out.cutoffs.clear();
  out.indices.clear();
  std::size_t i = 0;
  while (i < s.stages.size()) {
    out.stages.push_back(s.stages[i]);
    out.cutoffs.push_back(s.cutoffs[i]);
    out.indices.push_back(s.indices[i]);
    // Next pick: the stage with original index max C + 1 (min C_k >= k keeps it spread).
    const std::size_t next = max_length(s.stages[i]) + std::size_t{1};
    while (i < s.stages.size() && s.indices[i] < next) ++i;
  }
  out.spread = true;
  if (auto errors = validate(out); !errors.empty()) throw std::logic_error("spread extraction broke: " + errors.front());
  return out;
}

Steeplechase make_tight(const Steeplechase& s) {
  Steeplechase out = s;
  std::size_t start = 0;
  for (; start < s.stages.size(); ++start) {
    Rational hi = stage_mu(s.stages[start]), lo = hi;
    for (std::size_t j = start; j < s.stages.size(); ++j) {
      hi = std::max(hi, stage_mu(s.stages[j]));
      lo = std::min(lo, stage_mu(s.stages[j]));
    }
    if (hi - lo <= s.epsilon) break;
  }
  out.stages.assign(s.stages.begin() + static_cast<std::ptrdiff_t>(start), s.stages.end());
  out.cutoffs.assign(s.cutoffs.begin() + static_cast<std::ptrdiff_t>(start), s.cutoffs.end());
  out.indices.assign(s.indices.begin() + static_cast<std::ptrdiff_t>(start), s.indices.end());
  out.tight = true;
  return out;
}

CoverageBound coverage_bound(std::uint32_t alphabet_size, std::uint32_t word_length, const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw InvalidArgument("epsilon must lie in (0, 1)");
  if (word_length < 1) throw InvalidArgument("word length must be at least 1");
  Alphabet{alphabet_size};
  const Rational miss = 1 - mu(alphabet_size, word_length);
  Rational p = miss;
  std::uint64_t r = 1;
  while (p > eps) {
    p *= miss;
    ++r;
    if (r > 100'000'000) throw CapExceeded("coverage bound needs too many checks");
  }
  return {r, r * word_length + 1};
}

std::uint64_t simulate_spelling_checks(const Word& w, std::uint64_t checks, std::uint64_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> letter(0, w.alphabet_size() - 1);
  const auto target = w.letters();
  std::uint64_t misses = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    bool hit = false;
    for (std::uint64_t c = 0; c < checks && !hit; ++c) {
      bool spelled = true;
      // Draw every letter so each check consumes exactly |w| fresh letters.
      for (auto l : target) spelled = (letter(rng) == l) && spelled;
      hit = spelled;
    }
    if (!hit) ++misses;
  }
  return misses;
}

std::vector<Word> greedy_prefix_free(const std::vector<Word>& c, const Word& w) {
  auto order = normalized(c);
  std::set<Key> kept_keys;
  std::vector<Word> kept;
  for (const auto& x : order) {
    const Word xw = concat(x, w);
    bool covered = kept_keys.count({xw.length(), xw.rank()}) > 0;
    for (std::uint32_t len = 1; len < xw.length() && !covered; ++len)
      covered = kept_keys.count({len, xw.prefix(len).rank()}) > 0;
    if (covered) continue;
    kept.push_back(x);
    kept_keys.insert({xw.length(), xw.rank()});
  }
  return kept;
}

Bitmap cone_layer(std::uint32_t alphabet_size, const std::vector<Word>& c, std::uint32_t n) {
  Bitmap out(layer_size(alphabet_size, n));
  for (const auto& x : c) {
    if (x.alphabet_size() != alphabet_size) throw InvalidArgument("word over a different alphabet");
    if (x.length() > n) continue;
    const std::uint64_t span = layer_size(alphabet_size, n - x.length());
    Bitmap block(span);
    block.fill();
    out.or_at(x.rank() * span, block);
  }
  return out;
}

}  // namespace pfree
