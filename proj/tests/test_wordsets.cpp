#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pfree/wordsets.hpp"

using namespace pfree;

namespace {

std::vector<Word> parse_all(std::uint32_t a, const std::vector<std::string>& xs) {
  std::vector<Word> out;
  for (const auto& x : xs) out.push_back(Word::parse(a, x));
  return out;
}

std::set<std::string> strings(const WordSet& s, std::uint32_t L) {
  std::set<std::string> out;
  for (const auto& w : s.members(L)) out.insert(w.to_string());
  return out;
}

std::set<std::string> random_set(std::mt19937_64& rng, std::uint32_t a, std::uint32_t L, double p) {
  std::bernoulli_distribution coin(p);
  std::set<std::string> s;
  for (const auto& w : oracle::words_up_to(a, L))
    if (coin(rng)) s.insert(w);
  return s;
}

WordSet from_strings(std::uint32_t a, const std::set<std::string>& s, std::uint32_t L) {
  return WordSet::from_words(a, parse_all(a, {s.begin(), s.end()}), L);
}

}  // namespace

TEST_CASE("square of a two-word set") {
  const auto s = WordSet::from_words(2, parse_all(2, {"a", "ba"}), 4);
  CHECK(strings(power(s, 2, 4), 4) == std::set<std::string>{"aa", "aba", "baa", "baba"});
}

TEST_CASE("a set holding a and aa is not 2-free") {
  const auto s = WordSet::from_words(2, parse_all(2, {"a", "aa"}), 4);
  const auto r = is_k_product_free(s, 2, 4);
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness);
  CHECK(r.witness->product.to_string() == "aa");
  REQUIRE(r.witness->factors.size() == 2);
  CHECK(r.witness->factors[0].to_string() == "a");
  CHECK(r.witness->factors[1].to_string() == "a");
}

TEST_CASE("odd-length words") {
  const auto odd = odd_occurrence(2, {0, 1});
  const auto r3 = is_k_product_free(odd, 3, 9);
  CHECK_FALSE(r3.ok);
  REQUIRE(r3.witness);
  CHECK(r3.witness->product.to_string() == "aaa");
  CHECK(is_k_product_free(odd, 4, 12).ok);
  CHECK(is_k_product_free(odd, 2, 12).ok);
  CHECK(odd.layer_count(5) == 32);
  CHECK(odd.layer_count(4) == 0);
}

TEST_CASE("labeled set with no word of residue 1") {
  const auto s = WordSet::labeled(2, Labeling(4, {2, 2}, {1}));
  for (std::uint32_t n = 1; n <= 12; ++n) CHECK(s.layer_count(n) == 0);
  CHECK(is_k_product_free(s, 3, 12).ok);
}

TEST_CASE("labeled sets match a label-sum filter") {
  const Labeling lab(3, {1, 2, 0}, {1});
  const auto s = labeled_T(3, lab);
  for (std::uint32_t n = 1; n <= 6; ++n)
    for (const auto& w : oracle::all_words(3, n))
      CHECK(s.contains(Word::parse(3, w)) == (oracle::label_sum(w, {1, 2, 0}, 3) == 1));
}

TEST_CASE("labeled T modulo rho is k-free at moderate lengths") {
  for (std::uint32_t k = 2; k <= 8; ++k) {
    const auto r = static_cast<std::uint32_t>(oracle::rho(k));
    const auto s = labeled_T(2, Labeling(r, {1, 1}, {1}));
    CHECK(is_k_product_free(s, k, 12).ok);
  }
  // T mod k is free for every l <= k.
  for (std::uint32_t k = 2; k <= 6; ++k) {
    const auto s = labeled_T(2, Labeling(k, {1, 1}, {1}));
    CHECK(is_strongly_k_product_free(s, k, 12).ok);
  }
}

TEST_CASE("freeness and witnesses agree with a string oracle on random sets") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t a = 1 + static_cast<std::uint32_t>(rng() % 3);
    const std::uint32_t L = a == 1 ? 14 : (a == 2 ? 7 : 5);
    const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng() % 3);
    const auto s = random_set(rng, a, L, 0.08 + 0.1 * static_cast<double>(rng() % 3));
    const auto ws = from_strings(a, s, L);
    const auto got = is_k_product_free(ws, k, L);
    const auto want = oracle::first_witness(s, k);
    REQUIRE(got.ok == !want.has_value());
    if (want) {
      REQUIRE(got.witness);
      CHECK(got.witness->product.to_string() == want->product);
      std::vector<std::string> f;
      for (const auto& x : got.witness->factors) f.push_back(x.to_string());
      CHECK(f == want->factors);
    }
  }
}

TEST_CASE("powers and intersections agree with a string oracle") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const std::uint32_t L = 7;
    const auto s = random_set(rng, 2, 4, 0.2);
    const auto ws = from_strings(2, s, L);
    const auto p3 = power(ws, 3, L);
    for (const auto& w : oracle::words_up_to(2, L)) CHECK(p3.contains(Word::parse(2, w)) == oracle::splits(w, 3, s));
    const auto inter = s_intersection(ws, {2, 3}, L);
    for (const auto& w : oracle::words_up_to(2, L))
      CHECK(inter.contains(Word::parse(2, w)) == (oracle::splits(w, 2, s) && oracle::splits(w, 3, s)));
  }
}

TEST_CASE("products are the same for any worker count") {
  std::mt19937_64 rng(9);
  const auto s = from_strings(2, random_set(rng, 2, 6, 0.3), 12);
  const auto one = power(s, 3, 12, 1);
  const auto four = power(s, 3, 12, 4);
  for (std::uint32_t n = 0; n <= 12; ++n) CHECK(one.layer(n) == four.layer(n));
}

TEST_CASE("union, intersection and reversal") {
  const auto x = WordSet::from_words(2, parse_all(2, {"a", "ab", "bba"}), 4);
  const auto y = WordSet::from_words(2, parse_all(2, {"ab", "b"}), 4);
  CHECK(strings(set_union(x, y, 4), 4) == std::set<std::string>{"a", "b", "ab", "bba"});
  CHECK(strings(intersection(x, y, 4), 4) == std::set<std::string>{"ab"});
  CHECK(strings(reversed(x, 4), 4) == std::set<std::string>{"a", "ba", "abb"});
}

TEST_CASE("residue classes agree with a string oracle") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    const std::uint32_t L = 8;
    const auto s = random_set(rng, 2, L, 0.15);
    const auto ws = from_strings(2, s, L);
    const auto rc = residue_classes(ws, 3, L);
    for (unsigned i = 0; i < 3; ++i) {
      auto want = oracle::residue_class(s, i);
      CHECK(rc.empty_word[i] == (want.count("") > 0));
      want.erase("");
      CHECK(strings(rc.found[i], L) == want);
      // found and unknown never overlap
      CHECK(intersection(rc.found[i], rc.unknown[i], L).members(L).empty());
    }
  }
}

TEST_CASE("residue classes of a finite odd-length set") {
  // S = odd words up to length 9: T_0 holds the even words, T_1 the odd ones.
  const auto s = odd_occurrence(2, {0, 1}).materialize(9);
  const auto rc = residue_classes(s, 2, 9);
  CHECK(rc.empty_word[0]);
  CHECK_FALSE(rc.empty_word[1]);
  for (const auto& w : rc.found[0].members(9)) CHECK(w.length() % 2 == 0);
  for (const auto& w : rc.found[1].members(9)) CHECK(w.length() % 2 == 1);
  CHECK(rc.found[0].layer_count(2) == 4);
  CHECK(rc.found[1].layer_count(1) == 2);
}

TEST_CASE("the modified odd set for x = aa") {
  const Word x = Word::parse(2, "aa");
  const auto t = t_prime(x, 12);
  CHECK(is_k_product_free(t, 2, 12).ok);
  CHECK(t.contains(Word::parse(2, "bab")));
  CHECK_FALSE(t.contains(Word::parse(2, "aab")));
  CHECK_FALSE(t.contains(Word::parse(2, "a")));
  CHECK(t.contains(Word::parse(2, "aaaa")));     // xx, the empty middle
  CHECK(t.contains(Word::parse(2, "aabbbbaa")) == false);  // length 8 is not 1 mod 3
  CHECK(t.contains(Word::parse(2, "aabbbaa")));  // length 7
  CHECK_THROWS_AS(t_prime(Word::parse(2, "a"), 8), InvalidArgument);
}

TEST_CASE("bounds are enforced") {
  const auto s = WordSet::from_words(2, parse_all(2, {"a"}), 3);
  CHECK_THROWS_AS(s.contains(Word::parse(2, "aaaa")), InvalidArgument);
  CHECK_THROWS_AS(is_k_product_free(s, 2, 5), InvalidArgument);
  CHECK_THROWS_AS(Labeling(3, {1}, {1}).residue(Word::parse(2, "ab")), InvalidArgument);
}
