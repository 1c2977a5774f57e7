#include "pfree/density.hpp"

#include <numeric>
#include <sstream>

namespace pfree {

namespace {

// Sum over n in [lo, hi] of |B(n) cap wF| * |A|^(hi - n), i.e. the numerator
// of sum mu(B(n) cap wF) over the common denominator |A|^hi.
BigInt scaled_sum(const WordSet& b, const Word& w, std::uint32_t lo, std::uint32_t hi) {
  const auto counts = subtree_counts(b, w, lo, hi);
  BigInt acc = 0;
  const BigInt a = b.alphabet_size();
  for (std::size_t i = 0; i < counts.size(); ++i) acc = acc * a + counts[i];
  return acc;
}

// |I| * |A|^-|w| * d^I_{wF}(B) without the convention on short intervals;
// lo may be 0 here.
Rational relative_sum(const WordSet& b, const Word& w, std::uint32_t lo, std::uint32_t hi) {
  return Rational(scaled_sum(b, w, lo, hi), big_pow(b.alphabet_size(), hi)) /
         Rational(BigInt(1), big_pow(b.alphabet_size(), w.length()));
}

}  // namespace

Interval::Interval(std::uint32_t l, std::uint32_t h) : lo(l), hi(h) {
  if (lo < 1 || lo > hi)
    throw InvalidArgument("interval needs 1 <= lo <= hi, got [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::vector<BigInt> residue_counts(const Labeling& labeling, std::uint32_t n) {
  const std::uint32_t m = labeling.modulus;
  std::vector<BigInt> v(m, 0), next(m);
  v[0] = 1;
  for (std::uint32_t step = 0; step < n; ++step) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (std::uint32_t r = 0; r < m; ++r) {
      if (v[r] == 0) continue;
      for (auto l : labeling.labels) next[(r + l) % m] += v[r];
    }
    v.swap(next);
  }
  return v;
}

std::vector<BigInt> subtree_counts(const WordSet& b, const Word& w, std::uint32_t lo, std::uint32_t hi) {
  if (w.alphabet_size() != b.alphabet_size()) throw InvalidArgument("word over a different alphabet");
  if (lo > hi) throw InvalidArgument("empty length range");
  std::vector<BigInt> out;
  out.reserve(hi - lo + 1);
  const std::uint32_t lw = w.length();
  if (const Labeling* lab = b.labeling()) {
    const std::uint32_t m = lab->modulus;
    const std::uint32_t base = lab->residue(w);
    std::vector<BigInt> v(m, 0), next(m);
    v[0] = 1;
    std::uint32_t have = 0;  // v counts suffixes of length `have`
    for (std::uint32_t n = lo; n <= hi; ++n) {
      if (n < lw || n == 0) {
        out.emplace_back(0);
        continue;
      }
      while (have < n - lw) {
        std::fill(next.begin(), next.end(), BigInt(0));
        for (std::uint32_t r = 0; r < m; ++r) {
          if (v[r] == 0) continue;
          for (auto l : lab->labels) next[(r + l) % m] += v[r];
        }
        v.swap(next);
        ++have;
      }
      BigInt c = 0;
      for (auto t : lab->targets) c += v[(t + m - base) % m];
      out.push_back(std::move(c));
    }
    return out;
  }
  for (std::uint32_t n = lo; n <= hi; ++n) {
    if (n < lw || n == 0) {
      out.emplace_back(0);
      continue;
    }
    const Bitmap layer = b.layer(n);
    const std::uint64_t span = layer_size(b.alphabet_size(), n - lw);
    out.emplace_back(layer.count_range(w.rank() * span, span));
  }
  return out;
}

Rational layer_density(const WordSet& b, std::uint32_t n) {
  const auto c = subtree_counts(b, Word::empty(b.alphabet_size()), n, n);
  return Rational(c[0], big_pow(b.alphabet_size(), n));
}

Rational interval_density(const WordSet& b, const Interval& I) {
  return relative_sum(b, Word::empty(b.alphabet_size()), I.lo, I.hi) / I.length();
}

Rational relative_density(const WordSet& b, const Word& w, const Interval& I) {
  if (I.lo < w.length()) return 0;
  return relative_sum(b, w, I.lo, I.hi) / I.length();
}

StripPrefixCheck strip_prefix_bound_check(const WordSet& b, const Word& w, const Word& v, const Interval& I) {
  const std::uint32_t lw = w.length();
  if (I.lo < lw + v.length())
    throw InvalidArgument("strip-prefix check needs min I >= |wv|");
  // d^I_{wvF}(wB) equals the relative density of B in vF on I - |w|.
  const Rational shifted = relative_sum(b, v, I.lo - lw, I.hi - lw);
  const Rational plain = relative_sum(b, v, I.lo, I.hi);
  StripPrefixCheck out;
  const Rational diff = shifted - plain;
  out.lhs = (diff < 0 ? Rational(-diff) : diff) / I.length();
  out.bound = Rational(BigInt(lw) * big_pow(b.alphabet_size(), v.length()), BigInt(I.length()));
  out.holds = out.lhs <= out.bound;
  return out;
}

PartitionCheck partition_identity_check(const WordSet& b, std::uint32_t l, const Interval& I) {
  if (I.lo <= l) throw InvalidArgument("partition identity needs min I > l");
  const std::uint64_t roots = layer_size(b.alphabet_size(), l);
  if (roots > (std::uint64_t{1} << 20)) throw CapExceeded("too many subtree roots");
  PartitionCheck out;
  out.lhs = interval_density(b, I);
  out.rhs = 0;
  for (std::uint64_t r = 0; r < roots; ++r) {
    const Word w(b.alphabet_size(), l, r);
    out.rhs += mu(w) * relative_density(b, w, I);
  }
  out.holds = out.lhs == out.rhs;
  return out;
}

ChainAnalysis analyze_chain(const Labeling& labeling) {
  const std::uint32_t m = labeling.modulus;
  ChainAnalysis out;
  out.modulus = m;
  out.step.assign(m, Rational(0));
  const auto letters = static_cast<std::uint32_t>(labeling.labels.size());
  for (auto l : labeling.labels) out.step[l % m] += Rational(1, letters);

  std::vector<bool> seen(m, false);
  std::vector<std::uint32_t> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto l : labeling.labels) {
      const std::uint32_t s = (queue[i] + l) % m;
      if (!seen[s]) {
        seen[s] = true;
        queue.push_back(s);
      }
    }
  for (std::uint32_t s = 0; s < m; ++s)
    if (seen[s]) out.reachable.push_back(s);
  out.irreducible = out.reachable.size() == m;

  // After n steps the walk sits in n*g + H, H generated by label differences.
  std::uint32_t h = m;
  const std::uint32_t g = labeling.labels.front() % m;
  for (auto l : labeling.labels) h = std::gcd(h, (l + m - g) % m);
  out.period = h / std::gcd(g % h, h);

  if (out.irreducible) out.stationary = std::vector<Rational>(m, Rational(1, m));
  return out;
}

WindowEstimate banach_density_estimate(const WordSet& b, std::uint32_t window_len, std::uint32_t max_n) {
  if (window_len == 0) throw InvalidArgument("window length must be positive");
  if (window_len > max_n) throw InvalidArgument("window length exceeds max_n");
  if (2 * window_len - 1 > max_n) throw InvalidArgument("no window of that length starts at or after its length");
  const auto counts = subtree_counts(b, Word::empty(b.alphabet_size()), 1, max_n);
  const BigInt a = b.alphabet_size();
  // scaled[n] = |B(n)| * |A|^(max_n - n); prefix sums compare windows exactly.
  std::vector<BigInt> prefix(max_n + 1, 0);
  std::vector<BigInt> scale(max_n + 1);
  scale[max_n] = 1;
  for (std::uint32_t n = max_n; n > 1; --n) scale[n - 1] = scale[n] * a;
  for (std::uint32_t n = 1; n <= max_n; ++n) prefix[n] = prefix[n - 1] + counts[n - 1] * scale[n];
  BigInt best = -1;
  std::uint32_t best_lo = window_len;
  for (std::uint32_t lo = window_len; lo + window_len - 1 <= max_n; ++lo) {
    const BigInt sum = prefix[lo + window_len - 1] - prefix[lo - 1];
    if (sum > best) {
      best = sum;
      best_lo = lo;
    }
  }
  WindowEstimate out;
  out.window = Interval(best_lo, best_lo + window_len - 1);
  out.estimate = Rational(best, big_pow(b.alphabet_size(), max_n) * window_len);
  return out;
}

SubtreeEstimate sup_relative_density_proxy(const WordSet& b, std::uint32_t depth, const Interval& I) {
  SubtreeEstimate out{Rational(-1), Word::empty(b.alphabet_size())};
  for (std::uint32_t l = 0; l <= depth; ++l) {
    const std::uint64_t roots = layer_size(b.alphabet_size(), l);
    if (roots > (std::uint64_t{1} << 20)) throw CapExceeded("too many subtree roots");
    for (std::uint64_t r = 0; r < roots; ++r) {
      const Word w(b.alphabet_size(), l, r);
      const Rational d = relative_density(b, w, I);
      if (d > out.value) out = {d, w};
    }
  }
  return out;
}

LayerDensitySeries layer_density_series(const WordSet& b, std::uint32_t lo, std::uint32_t hi) {
  LayerDensitySeries out;
  out.alphabet_size = b.alphabet_size();
  out.first = lo;
  out.provenance = b.labeling() ? "transfer-matrix" : "explicit";
  const auto counts = subtree_counts(b, Word::empty(b.alphabet_size()), lo, hi);
  for (std::uint32_t n = lo; n <= hi; ++n) out.values.emplace_back(counts[n - lo], big_pow(b.alphabet_size(), n));
  return out;
}

std::string to_csv(const LayerDensitySeries& series) {
  std::ostringstream os;
  os << "n,numerator,denominator,decimal\n";
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    const auto& q = series.values[i];
    os << series.first + i << ',' << numerator_of(q) << ',' << denominator_of(q) << ',' << to_decimal(q, 15) << '\n';
  }
  return os.str();
}

}  // namespace pfree
