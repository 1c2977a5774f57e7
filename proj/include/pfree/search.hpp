#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfree/rational.hpp"
#include "pfree/wordsets.hpp"

namespace pfree {

// Thrown when an instance is too large for the exact solver.
class ExactInfeasible : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

// Maximize sum_{n <= L} mu(S(n)) over k-product-free S inside F(1..L).
// With |A| = 1 this is the integer interval [1, L] and mu counts members.
struct SearchInstance {
  std::uint32_t alphabet_size = 1;
  std::uint32_t k = 2;
  std::uint32_t L = 1;

  SearchInstance() = default;
  SearchInstance(std::uint32_t alphabet_size, std::uint32_t k, std::uint32_t L);
  std::uint64_t word_count() const;
};

enum class Certificate { Exhaustive, BranchAndBound, Heuristic };
const char* to_string(Certificate c);

struct ContainmentReport {
  std::uint64_t rho = 0;
  std::uint64_t tried = 0;
  std::vector<Labeling> containing;  // every labeling whose T holds all of S
};

struct SearchResult {
  SearchInstance instance;
  Rational value = 0;
  std::vector<Word> members;  // shortlex
  Certificate certificate = Certificate::Heuristic;
  std::uint64_t nodes = 0;               // search nodes or heuristic moves
  std::vector<std::string> bound_log;    // one line per pruned node when requested
  bool bound_log_truncated = false;
  std::optional<std::uint64_t> seed;
  ContainmentReport containment;
  std::string caveat;
};

struct ExactOptions {
  std::uint64_t exhaustive_cap = 30;
  std::uint64_t branch_and_bound_cap = 62;
  unsigned workers = 1;
  bool log_bounds = false;
  std::uint64_t max_log_lines = 1'000'000;
};

// Provably optimal set. Ties go to the lexicographically largest membership
// vector over words in shortlex order, independent of the worker count.
SearchResult solve_exact(const SearchInstance& inst, const ExactOptions& opts = {});

struct HeuristicOptions {
  std::uint64_t seed = 1;
  std::uint64_t budget = 100'000;  // moves
  bool warm_start = true;          // start from the labeled set mod rho(k)
};

// Randomized local search; every reported set is re-checked for freeness.
SearchResult heuristic_search(const SearchInstance& inst, const HeuristicOptions& opts = {});

// Labelings Z/rho (target {1}) whose labeled set contains every member of s
// up to its bound; with rho = 3 also Z/6 with targets {1, 2}.
ContainmentReport certify_containment(const WordSet& s, std::uint64_t rho);

// Membership of a result as an explicit set known up to inst.L.
WordSet result_set(const SearchResult& r);

}  // namespace pfree
