#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfree/rational.hpp"
#include "pfree/wordsets.hpp"

namespace pfree {

// Finite prefix of a steeplechase C_1, ..., C_N.
struct Steeplechase {
  std::uint32_t alphabet_size = 1;
  std::vector<std::vector<Word>> stages;  // each stage in shortlex order
  std::vector<std::uint32_t> cutoffs;     // l_k per stage
  std::vector<std::size_t> indices;       // 1-based index of each stage in the original chase
  Rational epsilon = 0;
  bool spread = false;
  bool tight = false;
  bool truncated = false;  // the source set had members at the length bound
  std::uint32_t bound = 0;
};

// Number of prefixes of x (x included, the empty word excluded) lying in B.
std::uint32_t headcount(const WordSet& b, const Word& x);

// Headcount construction: D_k = members of headcount k, l_k the smallest
// cutoff leaving mass <= eps / 2^k of D_k above it (layers past L count as
// empty), C_k = D_k up to l_k, then (D_k \ C_k)F leaves B. Stops at the first
// empty D_k or C_k.
Steeplechase capture(const WordSet& b, const Rational& eps, std::uint32_t L);

// Empty when every invariant holds; otherwise one message per violation.
std::vector<std::string> validate(const Steeplechase& s);

Rational stage_mu(const std::vector<Word>& stage);

// Stages 1, l_1 + 1, l_2 + 1, ... with l_j the longest word of the last pick.
Steeplechase make_spread(const Steeplechase& s);

// Drops leading stages until every pair of remaining masses is within eps.
Steeplechase make_tight(const Steeplechase& s);

struct CoverageBound {
  std::uint64_t checks = 0;  // K + 1
  std::uint64_t n = 0;       // N = (K + 1) |w| + 1
};

// Smallest N with (1 - |A|^-|w|)^(K+1) <= eps where K = floor((N - |w| - 1) / |w|).
CoverageBound coverage_bound(std::uint32_t alphabet_size, std::uint32_t word_length, const Rational& eps);

// Runs `trials` rounds of `checks` independent attempts to spell w with fresh
// random letters; returns how many rounds failed every attempt.
std::uint64_t simulate_spelling_checks(const Word& w, std::uint64_t checks, std::uint64_t trials, std::uint64_t seed);

// C~ subset of C, scanned by (length, rank), keeping c unless some kept c'w is a
// prefix of cw. C~w is prefix-free and C~wF = CwF.
std::vector<Word> greedy_prefix_free(const std::vector<Word>& c, const Word& w);

// (CF)(n) as a bitmap over the layer.
Bitmap cone_layer(std::uint32_t alphabet_size, const std::vector<Word>& c, std::uint32_t n);

}  // namespace pfree
