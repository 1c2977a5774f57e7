#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pfree/serialize.hpp"

using namespace pfree;

TEST_CASE("base64 test vectors") {
  const std::vector<std::pair<std::string, std::string>> vectors{
      {"", ""}, {"f", "Zg=="}, {"fo", "Zm8="}, {"foo", "Zm9v"}, {"foob", "Zm9vYg=="}, {"fooba", "Zm9vYmE="}, {"foobar", "Zm9vYmFy"}};
  for (const auto& [plain, enc] : vectors) {
    CHECK(base64_encode(plain) == enc);
    CHECK(base64_decode(enc) == plain);
  }
  CHECK_THROWS_AS(base64_decode("Zm9"), InvalidArgument);
}

TEST_CASE("bitmaps round trip") {
  std::mt19937_64 rng(47);
  for (std::uint64_t size : {1ULL, 7ULL, 8ULL, 63ULL, 64ULL, 65ULL, 200ULL, 1024ULL}) {
    Bitmap b(size);
    for (std::uint64_t i = 0; i < size; ++i)
      if (rng() % 3 == 0) b.set(i);
    CHECK(decode_bitmap(size, encode_bitmap(b)) == b);
  }
  CHECK_THROWS_AS(decode_bitmap(16, encode_bitmap(Bitmap(8))), InvalidArgument);
}

TEST_CASE("rationals") {
  CHECK(rational_json(Rational(3, 4)).dump() == "[3,4]");
  const Rational big(BigInt(1) << 80, 3);
  CHECK(rational_json(big)[0].is_string());
  CHECK(rational_from_json(rational_json(big)) == big);
  CHECK(rational_from_json(Json("0.125")) == Rational(1, 8));
  CHECK_THROWS_AS(rational_from_json(Json::array({1, 0})), InvalidArgument);
}

TEST_CASE("A-sequences round trip") {
  for (std::uint64_t k : {2ULL, 13ULL, 61ULL, 1000ULL}) {
    const auto seq = arith::construct_asequence(k);
    const auto back = asequence_from_json(to_json(seq));
    CHECK(back.k == seq.k);
    CHECK(back.sets == seq.sets);
    CHECK(back.widths == seq.widths);
  }
  CHECK_THROWS_AS(asequence_from_json(Json::parse(R"({"k": 5, "sets": [[1, 2]], "widths": [[1, 1]]})")),
                  InvalidArgument);
}

TEST_CASE("word sets round trip") {
  const auto lab = WordSet::labeled(3, Labeling(4, {1, 2, 3}, {1, 3}));
  const auto j = to_json(lab, 5);
  CHECK(j["repr"] == "labeled");
  const auto back = wordset_from_json(j);
  REQUIRE(back.labeling());
  CHECK(*back.labeling() == *lab.labeling());

  const auto ex = WordSet::from_words(2, {Word::parse(2, "ab"), Word::parse(2, "b"), Word::parse(2, "aaab")}, 6);
  const auto je = to_json(ex, 6);
  CHECK(je["repr"] == "explicit");
  CHECK(je["layers"].size() == 6);
  const auto eb = wordset_from_json(je);
  CHECK(eb.members(6) == ex.members(6));
  CHECK(eb.bound() == std::optional<std::uint32_t>(6));

  const auto odd = WordSet::predicate(2, [](const Word& w) { return w.length() % 2 == 1; }, 4);
  const auto jo = to_json(odd, 4);
  CHECK(jo["repr"] == "predicate");
  CHECK(wordset_from_json(jo).members(4) == odd.members(4));

  CHECK_THROWS_AS(wordset_from_json(Json::parse(R"({"alphabet": 2, "repr": "other"})")), InvalidArgument);
  CHECK_THROWS_AS(wordset_from_json(Json::parse(R"({"alphabet": 2})")), InvalidArgument);
}

TEST_CASE("group sets round trip") {
  auto s = fg::GroupSet::explicit_words(2, {fg::ReducedWord::parse(2, "a b'"), fg::ReducedWord::parse(2, "b")});
  s.restrict_to = fg::Subsemigroup({0, false}, {1, true});
  const auto j = to_json(s);
  CHECK(j["signed"] == true);
  const auto back = group_set_from_json(j);
  CHECK(back.words == s.words);
  REQUIRE(back.restrict_to);
  CHECK(back.restrict_to->beta() == s.restrict_to->beta());

  const auto lab = fg::GroupSet::labeled(2, fg::GroupLabeling(3, {1, 1}, {1}));
  const auto lb = group_set_from_json(to_json(lab));
  REQUIRE(lb.labeling);
  CHECK(lb.labeling->modulus == 3);
  CHECK_THROWS_AS(group_set_from_json(Json::parse(R"({"alphabet": 2, "repr": "labeled"})")), InvalidArgument);
}

TEST_CASE("search results serialize their certificate") {
  const auto r = solve_exact(SearchInstance(1, 2, 6));
  const auto j = to_json(r);
  CHECK(j["certificate"] == "exhaustive");
  CHECK(j["value"].dump() == "[3,1]");
  CHECK(j["members"].size() == 3);
  CHECK(j["containment"]["rho"] == 2);
}
