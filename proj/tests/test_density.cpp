#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pfree/density.hpp"

using namespace pfree;

namespace {

std::set<std::string> random_set(std::mt19937_64& rng, std::uint32_t a, std::uint32_t L, double p) {
  std::bernoulli_distribution coin(p);
  std::set<std::string> s;
  for (const auto& w : oracle::words_up_to(a, L))
    if (coin(rng)) s.insert(w);
  return s;
}

WordSet from_strings(std::uint32_t a, const std::set<std::string>& s, std::uint32_t L) {
  std::vector<Word> words;
  for (const auto& x : s) words.push_back(Word::parse(a, x));
  return WordSet::from_words(a, words, L);
}

Word random_word(std::mt19937_64& rng, std::uint32_t a, std::uint32_t len) {
  std::vector<std::uint32_t> ls(len);
  for (auto& l : ls) l = static_cast<std::uint32_t>(rng() % a);
  return Word::from_letters(a, ls);
}

}  // namespace

TEST_CASE("residue counts match direct enumeration") {
  const Labeling lab(5, {1, 3, 4}, {1});
  for (std::uint32_t n = 0; n <= 6; ++n) {
    std::vector<BigInt> want(5, 0);
    for (const auto& w : oracle::all_words(3, n)) want[oracle::label_sum(w, {1, 3, 4}, 5)] += 1;
    CHECK(residue_counts(lab, n) == want);
  }
}

TEST_CASE("alternating layer densities mod 2") {
  const auto t = labeled_T(2, Labeling(2, {1, 1}, {1}));
  for (std::uint32_t n = 1; n <= 30; ++n) CHECK(layer_density(t, n) == (n % 2 == 1 ? 1 : 0));
  CHECK(interval_density(t, Interval(1, 10)) == Rational(1, 2));
  CHECK(interval_density(t, Interval(1, 9)) == Rational(5, 9));
}

TEST_CASE("subtree counts match direct enumeration") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const auto s = random_set(rng, 2, 8, 0.3);
    const auto ws = from_strings(2, s, 8);
    const Word w = random_word(rng, 2, static_cast<std::uint32_t>(rng() % 4));
    const auto counts = subtree_counts(ws, w, 1, 8);
    for (std::uint32_t n = 1; n <= 8; ++n) {
      std::uint64_t want = 0;
      for (const auto& x : s)
        if (x.size() == n && oracle::is_prefix(w.to_string(), x)) ++want;
      CHECK(counts[n - 1] == want);
    }
  }
  const Labeling lab(3, {1, 2}, {1, 2});
  const auto ls = WordSet::labeled(2, lab);
  const Word w = Word::parse(2, "ab");
  const auto counts = subtree_counts(ls, w, 2, 9);
  for (std::uint32_t n = 2; n <= 9; ++n) {
    std::uint64_t want = 0;
    for (const auto& x : oracle::all_words(2, n))
      if (oracle::is_prefix("ab", x) && oracle::label_sum(x, {1, 2}, 3) != 0) ++want;
    CHECK(counts[n - 2] == want);
  }
}

TEST_CASE("relative density") {
  const auto t = labeled_T(2, Labeling(2, {1, 1}, {1}));
  CHECK(relative_density(t, Word::parse(2, "ab"), Interval(3, 6)) == Rational(1, 2));
  CHECK(relative_density(t, Word::parse(2, "abb"), Interval(2, 6)) == 0);
}

TEST_CASE("strip-prefix bound on random explicit sets") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t a = 2 + static_cast<std::uint32_t>(rng() % 2);
    const std::uint32_t L = a == 2 ? 9 : 6;
    const auto b = from_strings(a, random_set(rng, a, L, 0.4), L);
    const Word w = random_word(rng, a, 1 + static_cast<std::uint32_t>(rng() % 2));
    const Word v = random_word(rng, a, static_cast<std::uint32_t>(rng() % 2));
    const std::uint32_t lo = w.length() + v.length() + static_cast<std::uint32_t>(rng() % 2);
    const std::uint32_t hi = lo + static_cast<std::uint32_t>(rng() % (L - lo + 1));
    // wB is known up to L + |w|; the restriction only needs lengths <= L there.
    const auto r = strip_prefix_bound_check(b, w, v, Interval(lo, std::min(hi, L)));
    CHECK(r.holds);
    CHECK(r.lhs <= r.bound);
  }
  const auto b = WordSet::labeled(2, Labeling(2, {1, 1}, {1}));
  CHECK_THROWS_AS(strip_prefix_bound_check(b, Word::parse(2, "ab"), Word::parse(2, "a"), Interval(2, 5)),
                  InvalidArgument);
}

TEST_CASE("partition identity is an equality") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const auto b = from_strings(2, random_set(rng, 2, 9, 0.5), 9);
    const std::uint32_t l = 1 + static_cast<std::uint32_t>(rng() % 3);
    const auto r = partition_identity_check(b, l, Interval(l + 1, 9));
    CHECK(r.holds);
    CHECK(r.lhs == r.rhs);
  }
  const auto lab = WordSet::labeled(3, Labeling(4, {1, 2, 3}, {1, 3}));
  const auto r = partition_identity_check(lab, 2, Interval(3, 40));
  CHECK(r.lhs == r.rhs);
}

TEST_CASE("chain analysis") {
  const auto c1 = analyze_chain(Labeling(2, {1, 0}, {1}));
  CHECK(c1.irreducible);
  CHECK(c1.period == 1);
  REQUIRE(c1.stationary);
  CHECK((*c1.stationary)[0] == Rational(1, 2));

  const auto c2 = analyze_chain(Labeling(2, {1, 1}, {1}));
  CHECK(c2.irreducible);
  CHECK(c2.period == 2);

  const auto c3 = analyze_chain(Labeling(4, {2, 2}, {1}));
  CHECK_FALSE(c3.irreducible);
  CHECK_FALSE(c3.stationary);
  CHECK(c3.reachable == std::vector<std::uint32_t>{0, 2});
}

TEST_CASE("window estimate for residue 1 mod m") {
  for (std::uint32_t m = 2; m <= 7; ++m) {
    const auto t = labeled_T(2, Labeling(m, {1, 1}, {1}));
    const auto e = banach_density_estimate(t, 60, 240);
    // Each window of 60 lengths holds ceil or floor of 60 / m lengths that are 1 mod m.
    CHECK(e.estimate == Rational((60 + m - 1) / m, 60));
    CHECK(e.window.length() == 60);
    CHECK(e.window.lo >= 60);
  }
  const auto t = labeled_T(2, Labeling(2, {1, 1}, {1}));
  CHECK_THROWS_AS(banach_density_estimate(t, 0, 10), InvalidArgument);
  CHECK_THROWS_AS(banach_density_estimate(t, 10, 15), InvalidArgument);
}

TEST_CASE("sup proxy picks a root") {
  const auto b = WordSet::from_words(2, {Word::parse(2, "aa"), Word::parse(2, "aaa"), Word::parse(2, "ab")}, 3);
  const auto p = sup_relative_density_proxy(b, 2, Interval(2, 3));
  CHECK(p.value >= relative_density(b, Word::parse(2, "aa"), Interval(2, 3)));
  CHECK(p.root.length() <= 2);
}

TEST_CASE("layer density series and csv") {
  const auto t = labeled_T(2, Labeling(3, {1, 1}, {1}));
  const auto s = layer_density_series(t, 1, 4);
  CHECK(s.provenance == "transfer-matrix");
  REQUIRE(s.values.size() == 4);
  CHECK(s.values[0] == 1);
  CHECK(s.values[3] == 1);
  CHECK(s.values[1] == 0);
  const auto csv = to_csv(s);
  CHECK(csv.rfind("n,numerator,denominator,decimal\n1,1,1,1.000000000000000\n", 0) == 0);
  const auto e = layer_density_series(t.materialize(4), 1, 4);
  CHECK(e.provenance == "explicit");
  CHECK(e.values == s.values);
}
