#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pfree/density.hpp"
#include "pfree/steeple.hpp"

using namespace pfree;

namespace {

std::vector<Word> parse_all(std::uint32_t a, const std::vector<std::string>& xs) {
  std::vector<Word> out;
  for (const auto& x : xs) out.push_back(Word::parse(a, x));
  return out;
}

}  // namespace

TEST_CASE("unary chase takes one word per stage") {
  const auto all = WordSet::predicate(1, [](const Word&) { return true; }, 10);
  const auto s = capture(all, Rational(1, 4), 10);
  REQUIRE(s.stages.size() == 10);
  for (std::size_t k = 1; k <= 10; ++k) {
    REQUIRE(s.stages[k - 1].size() == 1);
    CHECK(s.stages[k - 1][0].length() == k);
    CHECK(s.cutoffs[k - 1] == k);
  }
  CHECK(s.truncated);
  CHECK(validate(s).empty());
}

TEST_CASE("odd words: stage k is the layer of length 2k - 1") {
  const auto odd = odd_occurrence(2, {0, 1});
  const auto s = capture(odd, Rational(1, 4), 12);
  CHECK(validate(s).empty());
  REQUIRE(s.stages.size() == 6);
  for (std::size_t k = 1; k <= 6; ++k) {
    CHECK(stage_mu(s.stages[k - 1]) == 1);
    for (const auto& w : s.stages[k - 1]) CHECK(w.length() == 2 * k - 1);
  }
  const auto spread = make_spread(s);
  CHECK(spread.spread);
  CHECK(validate(spread).empty());
  const auto tight = make_tight(s);
  CHECK(tight.tight);
  CHECK(tight.stages.size() == s.stages.size());
}

TEST_CASE("stages are prefix-free, disjoint and inside the set") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 30; ++t) {
    std::vector<Word> ws;
    std::bernoulli_distribution coin(0.35);
    for (std::uint32_t n = 1; n <= 9; ++n)
      for (const auto& w : layer_words(2, n))
        if (coin(rng)) ws.push_back(w);
    const auto b = WordSet::from_words(2, ws, 9);
    Steeplechase s;
    try {
      s = capture(b, Rational(1, 2), 9);
    } catch (const InvalidArgument&) {
      continue;  // no first stage within the bound
    }
    CHECK(validate(s).empty());
    for (const auto& st : s.stages) {
      CHECK(is_prefix_free(st));
      for (const auto& w : st) CHECK(b.contains(w));
    }
    // Stage k words all have headcount k.
    for (std::size_t i = 0; i < s.stages.size(); ++i)
      for (const auto& w : s.stages[i]) CHECK(headcount(b, w) == s.indices[i]);
  }
}

TEST_CASE("first stage mass tracks the window density") {
  const auto t = labeled_T(2, Labeling(3, {1, 1}, {1}));
  const Rational eps(1, 4);
  const auto s = capture(t, eps, 12);
  REQUIRE(!s.stages.empty());
  const auto d = banach_density_estimate(t, 3, 12).estimate;
  for (const auto& st : s.stages) CHECK(stage_mu(st) >= d - eps);
}

TEST_CASE("validation flags broken chases") {
  Steeplechase s;
  s.alphabet_size = 2;
  s.epsilon = Rational(1, 4);
  s.bound = 4;
  s.stages = {parse_all(2, {"a", "ab"}), parse_all(2, {"b"})};
  s.cutoffs = {2, 1};
  s.indices = {1, 2};
  CHECK_FALSE(validate(s).empty());
}

TEST_CASE("headcount") {
  const auto b = WordSet::from_words(2, parse_all(2, {"a", "aba", "ab"}), 4);
  CHECK(headcount(b, Word::parse(2, "abab")) == 3);
  CHECK(headcount(b, Word::parse(2, "b")) == 0);
}

TEST_CASE("coverage bounds") {
  const auto c = coverage_bound(2, 2, Rational(1, 10));
  CHECK(c.checks == 9);
  CHECK(c.n == 19);
  const auto one = coverage_bound(2, 1, Rational(1, 2));
  CHECK(one.checks == 1);
  CHECK(one.n == 2);
  for (std::uint32_t a = 2; a <= 4; ++a)
    for (std::uint32_t len = 1; len <= 3; ++len) {
      const Rational eps(1, 20);
      const auto r = coverage_bound(a, len, eps);
      const double miss = 1.0 - std::pow(static_cast<double>(a), -static_cast<double>(len));
      CHECK(std::pow(miss, static_cast<double>(r.checks)) <= 0.05 + 1e-12);
      CHECK(std::pow(miss, static_cast<double>(r.checks - 1)) > 0.05);
      CHECK(r.n == r.checks * len + 1);
    }
  CHECK_THROWS_AS(coverage_bound(2, 1, 0), InvalidArgument);
}

TEST_CASE("spelling simulation is seeded and near its expectation") {
  const Word w = Word::parse(2, "ab");
  const auto m1 = simulate_spelling_checks(w, 4, 20000, 5);
  CHECK(m1 == simulate_spelling_checks(w, 4, 20000, 5));
  const double p = std::pow(0.75, 4), sd = std::sqrt(20000 * p * (1 - p));
  CHECK(std::abs(static_cast<double>(m1) - 20000 * p) <= 4 * sd);
}

TEST_CASE("greedy prefix-free subfamily") {
  const auto g = greedy_prefix_free(parse_all(2, {"a", "ab"}), Word::parse(2, "b"));
  REQUIRE(g.size() == 1);
  CHECK(g[0].to_string() == "a");

  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    std::vector<Word> c;
    for (std::uint32_t n = 1; n <= 4; ++n)
      for (const auto& w : layer_words(2, n))
        if (rng() % 5 == 0) c.push_back(w);
    if (c.empty()) continue;
    const Word w = layer_words(2, 1 + static_cast<std::uint32_t>(rng() % 2))[rng() % 2];
    const auto g = greedy_prefix_free(c, w);
    std::vector<Word> cw, gw;
    for (const auto& x : c) cw.push_back(concat(x, w));
    for (const auto& x : g) gw.push_back(concat(x, w));
    CHECK(is_prefix_free(gw));
    for (std::uint32_t n = 1; n <= 8; ++n) CHECK(cone_layer(2, cw, n) == cone_layer(2, gw, n));
  }
}
