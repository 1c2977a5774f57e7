#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfree/rational.hpp"
#include "pfree/wordsets.hpp"

namespace pfree {

struct Interval {
  std::uint32_t lo = 1;
  std::uint32_t hi = 1;

  Interval() = default;
  Interval(std::uint32_t lo, std::uint32_t hi);
  std::uint32_t length() const noexcept { return hi - lo + 1; }
  bool operator==(const Interval&) const = default;
};

// Words of each residue at length n: counts[r] for r in Z/m.
std::vector<BigInt> residue_counts(const Labeling& labeling, std::uint32_t n);

// |B(n) cap wF| for n = lo..hi. Labeled sets use the residue recursion; the
// others count bits in the subtree's block of the layer.
std::vector<BigInt> subtree_counts(const WordSet& b, const Word& w, std::uint32_t lo, std::uint32_t hi);

Rational layer_density(const WordSet& b, std::uint32_t n);
Rational interval_density(const WordSet& b, const Interval& I);

// mu(B(I) cap wF) / (|I| mu(w)), or 0 when min I < |w|.
Rational relative_density(const WordSet& b, const Word& w, const Interval& I);

struct StripPrefixCheck {
  Rational lhs;
  Rational bound;
  bool holds = false;
};

// |d^I_{wvF}(wB) - d^I_{vF}(B)| against |w| / (|I| mu(v)). Requires min I >= |wv|.
StripPrefixCheck strip_prefix_bound_check(const WordSet& b, const Word& w, const Word& v, const Interval& I);

struct PartitionCheck {
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

// d^I(B) against the sum over w of length l of mu(w) d^I_{wF}(B). Requires min I > l.
PartitionCheck partition_identity_check(const WordSet& b, std::uint32_t l, const Interval& I);

struct ChainAnalysis {
  std::uint32_t modulus = 1;
  std::vector<Rational> step;  // P(step = r)
  bool irreducible = false;
  std::uint32_t period = 1;
  std::optional<std::vector<Rational>> stationary;  // absent when not irreducible
  std::vector<std::uint32_t> reachable;             // states reachable from 0
};

ChainAnalysis analyze_chain(const Labeling& labeling);

struct WindowEstimate {
  Rational estimate;
  Interval window;
};

// Largest interval density over windows [lo, lo + len - 1] inside [1, max_n]
// with lo >= len. A finite lower proxy for the upper Banach density.
WindowEstimate banach_density_estimate(const WordSet& b, std::uint32_t window_len, std::uint32_t max_n);

struct SubtreeEstimate {
  Rational value;
  Word root;
};

// Largest relative density over subtree roots of length <= depth. A heuristic
// finite stand-in for the sup density; no relation to it is claimed.
SubtreeEstimate sup_relative_density_proxy(const WordSet& b, std::uint32_t depth, const Interval& I);

struct LayerDensitySeries {
  std::uint32_t alphabet_size = 1;
  std::uint32_t first = 1;
  std::vector<Rational> values;  // values[i] is the density at layer first + i
  std::string provenance;        // "transfer-matrix" or "explicit"
};

LayerDensitySeries layer_density_series(const WordSet& b, std::uint32_t lo, std::uint32_t hi);

// Columns n, numerator, denominator, decimal (15 digits).
std::string to_csv(const LayerDensitySeries& series);

}  // namespace pfree
