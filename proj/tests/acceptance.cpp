// Acceptance gate: runs the full battery, then an independent check per
// criterion using the string and set oracles. One line per criterion.

#include <cstdio>
#include <iostream>
#include <random>

#include "oracles.hpp"
#include "pfree/arith.hpp"
#include "pfree/density.hpp"
#include "pfree/freegroup.hpp"
#include "pfree/parallel.hpp"
#include "pfree/search.hpp"
#include "pfree/steeple.hpp"
#include "pfree/suite.hpp"

using namespace pfree;

namespace {

struct Check {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

Check oracle_rho() {
  Check c;
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> table{{2, 2}, {3, 3}, {4, 2}, {7, 4}, {13, 5}, {61, 7}};
  for (auto [k, r] : table)
    if (oracle::rho(k) != r || arith::rho(k) != r) c.fail("rho(" + std::to_string(k) + ")");
  return c;
}

Check oracle_battery() {
  Check c;
  for (std::uint64_t k = 3; k <= 200000; ++k) {
    const auto r = oracle::rho(k);
    if (arith::rho(k) != r) c.fail("rho mismatch at " + std::to_string(k));
    if (!oracle::prime_power(r)) c.fail("rho not a prime power at " + std::to_string(k));
    std::uint64_t best = 0;
    for (std::uint64_t t = 1; t < r; ++t) best = std::max(best, (r - t) * t * (t + 1));
    if ((k - 1 >= best) != arith::check_rho_inequality(k).holds) c.fail("inequality mismatch at " + std::to_string(k));
  }
  return c;
}

Check oracle_asequences() {
  Check c;
  for (std::uint64_t k = 2; k <= 150; ++k) {
    const auto seq = arith::construct_asequence(k);
    std::vector<std::set<std::uint64_t>> sets;
    for (const auto& s : seq.sets) {
      const auto v = s.values();
      sets.emplace_back(v.begin(), v.end());
    }
    if (!oracle::asequence_ok(k, sets, seq.widths)) c.fail("oracle rejects k = " + std::to_string(k));
  }
  return c;
}

Check oracle_measures() {
  Check c;
  std::mt19937_64 rng(101);
  for (int t = 0; t < 50; ++t) {
    std::set<std::string> s;
    std::vector<Word> ws;
    for (const auto& w : oracle::words_up_to(2, 8))
      if (rng() % 3 == 0) {
        s.insert(w);
        ws.push_back(Word::parse(2, w));
      }
    const auto b = WordSet::from_words(2, ws, 8);
    // Interval density by counting strings.
    Rational want = 0;
    for (std::uint32_t n = 2; n <= 8; ++n) {
      std::uint64_t cnt = 0;
      for (const auto& x : s)
        if (x.size() == n) ++cnt;
      want += Rational(cnt, std::uint64_t{1} << n);
    }
    want /= 7;
    if (interval_density(b, Interval(2, 8)) != want) c.fail("interval density");
    if (!partition_identity_check(b, 1, Interval(2, 8)).holds) c.fail("partition identity");
  }
  return c;
}

Check oracle_window() {
  Check c;
  for (std::uint64_t k = 2; k <= 12; ++k) {
    const auto m = static_cast<std::uint32_t>(oracle::rho(k));
    const auto t = labeled_T(2, Labeling(m, {1, 1}, {1}));
    // A 60-length window holds ceil(60 / m) lengths that are 1 mod m at best.
    const Rational want((60 + m - 1) / m, 60);
    if (banach_density_estimate(t, 60, 240).estimate != want) c.fail("window estimate at k = " + std::to_string(k));
  }
  return c;
}

Check oracle_freeness() {
  Check c;
  for (std::uint64_t k = 2; k <= 5; ++k) {
    const auto m = static_cast<unsigned>(oracle::rho(k));
    std::set<std::string> s;
    for (const auto& w : oracle::words_up_to(2, 8))
      if (oracle::label_sum(w, {1, 1}, m) == 1) s.insert(w);
    if (oracle::first_witness(s, static_cast<unsigned>(k))) c.fail("string oracle finds a product at k = " + std::to_string(k));
  }
  return c;
}

Check oracle_steeple() {
  Check c;
  // The headcount of x in the odd set is ceil(|x| / 2), so stage k is layer 2k - 1.
  const auto s = capture(odd_occurrence(2, {0, 1}), Rational(1, 4), 11);
  for (std::size_t i = 0; i < s.stages.size(); ++i)
    if (s.stages[i].size() != (std::size_t{1} << (2 * i + 1))) c.fail("stage size");
  if (s.stages.size() != 6) c.fail("stage count");
  return c;
}

Check oracle_group() {
  Check c;
  std::mt19937_64 rng(103);
  const auto words = oracle::reduced_words(2, 3);
  for (int t = 0; t < 5000; ++t) {
    const auto& u = words[rng() % words.size()];
    const auto& v = words[rng() % words.size()];
    auto to_word = [](const std::string& s) {
      std::vector<fg::SignedLetter> ls;
      for (char ch : s) ls.push_back({static_cast<std::uint32_t>(std::tolower(ch) - 'a'), std::isupper(static_cast<unsigned char>(ch)) != 0});
      return fg::ReducedWord(2, ls);
    };
    const auto p = fg::multiply(to_word(u), to_word(v));
    if (oracle::from_signed(p.to_string()) != oracle::reduce_group(u + v)) c.fail("reduction of " + u + v);
  }
  for (std::uint32_t n = 1; n <= 7; ++n)
    if (fg::reduced_count(2, n) != oracle::reduced_words(2, n).size()) c.fail("layer size");
  return c;
}

Check oracle_search() {
  Check c;
  for (std::uint32_t n = 2; n <= 16; ++n)
    for (std::uint32_t k : {2U, 3U}) {
      const auto want = oracle::best_interval_set(n, k);
      const auto got = solve_exact(SearchInstance(1, k, n));
      std::set<unsigned> members;
      for (const auto& w : got.members) members.insert(w.length());
      if (members != want) c.fail("interval [1, " + std::to_string(n) + "] k = " + std::to_string(k));
    }
  if (solve_exact(SearchInstance(2, 2, 3)).value != Rational(BigInt(oracle::best_word_weight(2, 2, 3)), 8))
    c.fail("binary words up to length 3");
  return c;
}

}  // namespace

int main() {
  SuiteOptions opts;
  opts.workers = default_workers();
  const std::vector<Check (*)()> oracles{oracle_rho,      oracle_battery, oracle_asequences, oracle_measures, oracle_window,
                                         oracle_freeness, oracle_steeple, oracle_group,      oracle_search};
  int failed = 0;
  for (int id = 1; id <= 9; ++id) {
    auto r = run_criterion(id, opts);
    const Check o = oracles[static_cast<std::size_t>(id - 1)]();
    if (!o.ok) {
      r.passed = false;
      r.detail += "; oracle disagreement: " + o.note;
    } else {
      r.detail += "; oracle agrees";
    }
    if (!r.passed) ++failed;
    std::cout << format_line(r) << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
