#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pfree/search.hpp"

using namespace pfree;

namespace {

std::set<unsigned> as_integers(const SearchResult& r) {
  std::set<unsigned> out;
  for (const auto& w : r.members) out.insert(w.length());
  return out;
}

}  // namespace

TEST_CASE("integer intervals match subset enumeration") {
  for (std::uint32_t k = 2; k <= 4; ++k)
    for (std::uint32_t n = 1; n <= 14; ++n) {
      const auto r = solve_exact(SearchInstance(1, k, n));
      const auto want = oracle::best_interval_set(n, k);
      CHECK(r.value == want.size());
      CHECK(as_integers(r) == want);
      CHECK(r.certificate == Certificate::Exhaustive);
    }
}

TEST_CASE("sum-free maximum on [1, 10] is the odd numbers") {
  const auto r = solve_exact(SearchInstance(1, 2, 10));
  CHECK(r.value == 5);
  CHECK(as_integers(r) == std::set<unsigned>{1, 3, 5, 7, 9});
  REQUIRE(!r.containment.containing.empty());
  CHECK(r.containment.rho == 2);
  CHECK(r.containment.containing.front() == Labeling(2, {1}, {1}));
}

TEST_CASE("small word instances match subset enumeration") {
  struct Case {
    std::uint32_t a, k, L;
  };
  for (auto c : {Case{2, 2, 3}, Case{2, 3, 3}, Case{3, 2, 2}, Case{3, 3, 2}, Case{2, 4, 3}}) {
    const auto r = solve_exact(SearchInstance(c.a, c.k, c.L));
    const auto pw = big_pow(c.a, c.L);
    CHECK(r.value == Rational(BigInt(oracle::best_word_weight(c.a, c.k, c.L)), pw));
    CHECK(total_mu(r.members) == r.value);
  }
}

TEST_CASE("known value for binary words up to length 4") {
  const auto r = solve_exact(SearchInstance(2, 2, 4));
  CHECK(r.value == Rational(9, 4));
  CHECK(is_k_product_free(result_set(r), 2, 4).ok);
}

TEST_CASE("results do not depend on the worker count") {
  for (auto inst : {SearchInstance(1, 3, 20), SearchInstance(2, 2, 4), SearchInstance(3, 2, 3)}) {
    ExactOptions one, many;
    one.log_bounds = many.log_bounds = true;
    many.workers = 8;
    const auto a = solve_exact(inst, one);
    const auto b = solve_exact(inst, many);
    CHECK(a.value == b.value);
    CHECK(a.members == b.members);
    CHECK(a.nodes == b.nodes);
    CHECK(a.bound_log == b.bound_log);
  }
}

TEST_CASE("branch and bound above the exhaustive cap") {
  ExactOptions opts;
  opts.exhaustive_cap = 10;
  opts.log_bounds = true;
  const auto r = solve_exact(SearchInstance(1, 2, 16), opts);
  CHECK(r.certificate == Certificate::BranchAndBound);
  CHECK(r.value == oracle::best_interval_set(16, 2).size());
  CHECK_FALSE(r.bound_log.empty());
}

TEST_CASE("oversized instances are refused") {
  CHECK_THROWS_AS(solve_exact(SearchInstance(2, 2, 6)), ExactInfeasible);
  CHECK_THROWS_AS(solve_exact(SearchInstance(2, 2, 6)), CapExceeded);
  CHECK_THROWS_AS(SearchInstance(2, 1, 4), InvalidArgument);
}

TEST_CASE("heuristic search is seeded and sound") {
  HeuristicOptions opts;
  opts.seed = 99;
  opts.budget = 5000;
  const auto a = heuristic_search(SearchInstance(2, 2, 7), opts);
  const auto b = heuristic_search(SearchInstance(2, 2, 7), opts);
  CHECK(a.value == b.value);
  CHECK(a.members == b.members);
  CHECK(a.seed == std::optional<std::uint64_t>(99));
  CHECK(a.certificate == Certificate::Heuristic);
  CHECK(is_k_product_free(result_set(a), 2, 7).ok);

  // Never above the proven optimum.
  const auto exact = solve_exact(SearchInstance(2, 3, 4));
  opts.budget = 2000;
  const auto h = heuristic_search(SearchInstance(2, 3, 4), opts);
  CHECK(h.value <= exact.value);
  // The warm start is the length-1-mod-rho set, which has mu 2 here.
  CHECK(h.value >= 2);
}

TEST_CASE("containment certification") {
  const auto odd = odd_occurrence(2, {0, 1}).materialize(6);
  const auto rep = certify_containment(odd, 2);
  CHECK(rep.rho == 2);
  CHECK(rep.tried == 4);
  REQUIRE(rep.containing.size() == 1);
  CHECK(rep.containing[0] == Labeling(2, {1, 1}, {1}));

  const auto t3 = labeled_T(2, Labeling(3, {1, 2}, {1})).materialize(5);
  const auto rep3 = certify_containment(t3, 3);
  CHECK(rep3.tried == 9 + 36);
  CHECK(std::find(rep3.containing.begin(), rep3.containing.end(), Labeling(3, {1, 2}, {1})) != rep3.containing.end());
}

TEST_CASE("certificate names") {
  CHECK(std::string(to_string(Certificate::Exhaustive)) == "exhaustive");
  CHECK(std::string(to_string(Certificate::BranchAndBound)) == "branch-and-bound");
  CHECK(std::string(to_string(Certificate::Heuristic)) == "heuristic");
}
