#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pfree::arith {

// Smallest positive integer that does not divide k - 1. Requires k >= 2.
std::uint64_t rho(std::uint64_t k);

bool is_prime_power(std::uint64_t n);
bool rho_is_prime_power(std::uint64_t k);

// rho(k) <= 2 log2(k) + 2, decided exactly as 2^(rho-2) <= k^2.
bool lev_bound_holds(std::uint64_t k);

// {a + b : a in A, b in B} as a sorted vector.
std::vector<std::uint64_t> pairwise_sumset(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// d-fold sumset dA by iterated pairwise sumsets.
std::vector<std::uint64_t> sumset(std::uint64_t d, std::span<const std::uint64_t> a);

struct RhoInequality {
  bool holds = false;
  std::uint64_t rho = 0;
  std::uint64_t max_value = 0;        // max over t of (rho - t) t (t + 1)
  std::uint64_t argmax = 0;           // smallest maximising t
  std::optional<std::uint64_t> witness;  // argmax, set only when the inequality fails
};

// Checks k - 1 >= max{(rho - t) t (t + 1) : 1 <= t <= rho - 1}. Requires k >= 3.
RhoInequality check_rho_inequality(std::uint64_t k);

// Finite set of positive integers held as a sorted list of arithmetic runs.
// Runs never interleave: every element of run i is smaller than every element
// of run i + 1. A single-run set is closed under d-fold sumsets, which keeps
// the sequences used for large k cheap to store and to verify.
class ProgressionSet {
 public:
  struct Run {
    std::uint64_t start = 0;
    std::uint64_t step = 1;
    std::uint64_t count = 1;
    std::uint64_t last() const noexcept { return start + step * (count - 1); }
    friend bool operator==(const Run&, const Run&) = default;
  };

  ProgressionSet() = default;
  static ProgressionSet progression(std::uint64_t start, std::uint64_t step, std::uint64_t count);
  static ProgressionSet from_values(std::vector<std::uint64_t> values);

  bool empty() const noexcept { return runs_.empty(); }
  std::uint64_t size() const noexcept;
  std::uint64_t min() const;
  std::uint64_t max() const;
  bool contains(std::uint64_t x) const;
  const std::vector<Run>& runs() const noexcept { return runs_; }
  std::vector<std::uint64_t> values() const;

  ProgressionSet sumset(std::uint64_t d) const;
  ProgressionSet shifted(std::uint64_t offset) const;

  // Smallest element different from 1, or 1 for the set {1}.
  std::uint64_t key() const;

  // Is this subset of {1} (when `with_one`) union `other`?
  bool is_subset_of(const ProgressionSet& other, bool with_one = false) const;

  friend bool operator==(const ProgressionSet& a, const ProgressionSet& b) { return a.values() == b.values(); }

 private:
  std::vector<Run> runs_;
};

struct ASequence {
  std::uint64_t k = 2;
  std::vector<ProgressionSet> sets;
  std::vector<std::vector<std::uint64_t>> widths;  // widths[l] has rho(k) - 1 entries
};

struct SequenceFailure {
  std::size_t set_index = 0;  // 1-based l
  std::size_t i = 0;          // 1-based
  std::size_t j = 0;          // 1-based
  friend bool operator==(const SequenceFailure&, const SequenceFailure&) = default;
};

struct SequenceCheck {
  bool ok = false;
  std::optional<SequenceFailure> failure;
};

// Throws InvalidArgument on malformed input (width counts, last set not {1},
// sets without 1, non-positive entries).
void validate(const ASequence& seq);

// For every l and 1 <= i <= j <= rho - 1 with c = d_i + ... + d_j:
// k in {1} + (1 + cA_l), or some earlier A_l' lies inside that set.
// Reports the lexicographically first failing (l, i, j).
SequenceCheck verify_asequence(const ASequence& seq);

// Hard-coded lists for k in {2, 3, 5, 7, 13}; otherwise every B_{d,t} =
// {1, d+1, ..., td+1} for 1 <= d <= rho-1 and 1 <= t < (k-1)/d (d descending,
// then t descending) followed by {1}.
ASequence construct_asequence(std::uint64_t k);

}  // namespace pfree::arith
