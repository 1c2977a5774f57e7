#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pfree/bitmap.hpp"
#include "pfree/words.hpp"

using namespace pfree;

TEST_CASE("concat and reverse on small words") {
  CHECK(concat(Word::parse(2, "ab"), Word::parse(2, "a")).to_string() == "aba");
  CHECK(reverse(Word::parse(2, "aab")).to_string() == "baa");
  CHECK(mu(Word::parse(2, "aba")) == Rational(1, 8));
  CHECK(mu(Word::empty(3)) == 1);
}

TEST_CASE("rank encoding puts the first letter in the top digit") {
  const Word w = Word::parse(3, "bca");
  CHECK(w.rank() == 1 * 9 + 2 * 3 + 0);
  CHECK(w.letter(0) == 1);
  CHECK(w.letters() == std::vector<std::uint32_t>{1, 2, 0});
  CHECK(Word(3, 3, w.rank()) == w);
  CHECK(Word::from_letters(3, {1, 2, 0}) == w);
}

TEST_CASE("prefix and suffix agree with string slicing") {
  for (const auto& s : oracle::words_up_to(2, 5))
    for (const auto& t : oracle::words_up_to(2, 5)) {
      const Word u = Word::parse(2, s), v = Word::parse(2, t);
      CHECK(is_prefix(u, v) == oracle::is_prefix(s, t));
      CHECK(is_suffix(u, v) == oracle::is_suffix(s, t));
    }
}

TEST_CASE("layer words come out in lexicographic order") {
  const auto words = layer_words(3, 4);
  const auto strs = oracle::all_words(3, 4);
  REQUIRE(words.size() == strs.size());
  for (std::size_t i = 0; i < words.size(); ++i) CHECK(words[i].to_string() == strs[i]);
}

TEST_CASE("concatenation properties hold on random words") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const std::uint32_t a = 1 + rng() % 4;
    auto rnd = [&](std::uint32_t len) {
      std::vector<std::uint32_t> ls(len);
      for (auto& l : ls) l = static_cast<std::uint32_t>(rng() % a);
      return Word::from_letters(a, ls);
    };
    const Word u = rnd(rng() % 8), v = rnd(rng() % 8), w = rnd(rng() % 8);
    CHECK(concat(concat(u, v), w) == concat(u, concat(v, w)));
    CHECK(mu(concat(u, v)) == mu(u) * mu(v));
    CHECK(concat(u, v).length() == u.length() + v.length());
    CHECK(reverse(concat(u, v)) == concat(reverse(v), reverse(u)));
    CHECK(concat(Word::empty(a), u) == u);
    CHECK(is_prefix(u, concat(u, v)));
    CHECK(is_suffix(v, concat(u, v)));
  }
}

TEST_CASE("shortlex ordering") {
  CHECK(Word::parse(2, "b") < Word::parse(2, "aa"));
  CHECK(Word::parse(2, "ab") < Word::parse(2, "ba"));
  const auto n = normalized({Word::parse(2, "ba"), Word::parse(2, "b"), Word::parse(2, "ba")});
  REQUIRE(n.size() == 2);
  CHECK(n[0].to_string() == "b");
}

TEST_CASE("prefix-free detection") {
  CHECK(is_prefix_free({Word::parse(2, "ab"), Word::parse(2, "b")}));
  CHECK_FALSE(is_prefix_free({Word::parse(2, "a"), Word::parse(2, "ab")}));
  CHECK(total_mu({Word::parse(2, "a"), Word::parse(2, "ba")}) == Rational(3, 4));
}

TEST_CASE("invalid input is rejected") {
  CHECK_THROWS_AS(Word::parse(2, "abc"), InvalidArgument);
  CHECK_THROWS_AS(Alphabet(0), InvalidArgument);
  CHECK_THROWS_AS(Alphabet(27), InvalidArgument);
  CHECK_THROWS_AS(concat(Word::parse(2, "a"), Word::parse(3, "a")), InvalidArgument);
  CHECK_THROWS_AS(layer_size(2, 70), CapExceeded);
  CHECK_THROWS_AS(Word::parse(2, "a").prefix(2), InvalidArgument);
}

TEST_CASE("rational helpers") {
  CHECK(to_string(Rational(3, 6)) == "1/2");
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("3/9") == Rational(1, 3));
  CHECK(to_decimal(Rational(1, 3), 4) == "0.3333");
  CHECK(big_pow(2, 70) == BigInt(1) << 70);
}

TEST_CASE("bitmap shifted operations") {
  Bitmap a(200), b(10);
  b.set(0);
  b.set(9);
  a.or_at(63, b);
  CHECK(a.test(63));
  CHECK(a.test(72));
  CHECK(a.count() == 2);
  CHECK(a.intersects_at(63, b));
  CHECK_FALSE(a.intersects_at(64, b));
  CHECK(a.slice(60, 20).count() == 2);
  CHECK(a.count_range(64, 9) == 1);
  CHECK(a.find_next(64) == std::optional<std::uint64_t>(72));
}
