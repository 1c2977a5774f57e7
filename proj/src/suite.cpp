#include "pfree/suite.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "pfree/arith.hpp"
#include "pfree/density.hpp"
#include "pfree/freegroup.hpp"
#include "pfree/search.hpp"
#include "pfree/steeple.hpp"
#include "pfree/wordsets.hpp"

namespace pfree {

namespace {

using Rng = std::mt19937_64;

// Collects the first failure; later ones only bump the count.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  bool ok() const { return failures_ == 0; }
  std::string summary(const std::string& good) const {
    if (ok()) return good;
    return std::to_string(failures_) + " of " + std::to_string(checks_) + " checks failed; first: " + first_;
  }

 private:
  std::uint64_t checks_ = 0;
  std::uint64_t failures_ = 0;
  std::string first_;
};

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

Word random_word(Rng& rng, std::uint32_t a, std::uint32_t len) {
  return Word(a, len, uniform(rng, 0, layer_size(a, len) - 1));
}

WordSet random_set(Rng& rng, std::uint32_t a, std::uint32_t L) {
  if (uniform(rng, 0, 3) == 0) {
    const auto m = static_cast<std::uint32_t>(uniform(rng, 2, 5));
    std::vector<std::uint32_t> labels(a);
    for (auto& l : labels) l = static_cast<std::uint32_t>(uniform(rng, 0, m - 1));
    return WordSet::labeled(a, Labeling(m, labels, {static_cast<std::uint32_t>(uniform(rng, 0, m - 1))}));
  }
  const double p = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
  std::bernoulli_distribution bit(p);
  std::vector<Bitmap> layers{Bitmap(1)};
  for (std::uint32_t n = 1; n <= L; ++n) {
    Bitmap b(layer_size(a, n));
    for (std::uint64_t r = 0; r < b.size(); ++r)
      if (bit(rng)) b.set(r);
    layers.push_back(std::move(b));
  }
  return WordSet::explicit_layers(a, std::move(layers));
}

std::vector<Word> random_prefix_free(Rng& rng, std::uint32_t a, std::uint32_t max_len) {
  std::vector<Word> pool;
  const auto count = uniform(rng, 1, 12);
  for (std::uint64_t i = 0; i < count; ++i)
    pool.push_back(random_word(rng, a, static_cast<std::uint32_t>(uniform(rng, 1, max_len))));
  std::vector<Word> kept;
  for (const auto& w : normalized(pool))
    if (std::none_of(kept.begin(), kept.end(), [&](const Word& c) { return is_prefix(c, w); })) kept.push_back(w);
  return kept;
}

fg::SignedLetter random_letter(Rng& rng, std::uint32_t a) {
  return fg::SignedLetter::from_index(static_cast<std::uint32_t>(uniform(rng, 0, 2 * a - 1)));
}

// Random reduced word of the given length from alpha to beta, by rejection.
std::optional<fg::ReducedWord> random_in_g(Rng& rng, std::uint32_t a, std::uint32_t len, const fg::Subsemigroup& g) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<fg::SignedLetter> letters{g.alpha()};
    while (letters.size() < len) {
      auto x = random_letter(rng, a);
      if (x != letters.back().inverse()) letters.push_back(x);
    }
    if (letters.back() == g.beta()) return fg::ReducedWord(a, std::move(letters));
  }
  return std::nullopt;
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s;
  return os.str();
}

// ---- criteria -----------------------------------------------------------

std::pair<bool, std::string> rho_table(const SuiteOptions&) {
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> table{{4, 2},   {3, 3},   {5, 3},   {7, 4},
                                                                   {13, 5}, {61, 7}, {421, 8}, {841, 9}};
  Tally t;
  for (auto [k, r] : table)
    t.expect(arith::rho(k) == r, "rho(" + std::to_string(k) + ") = " + std::to_string(arith::rho(k)));
  return {t.ok(), t.summary("8 table entries match")};
}

std::pair<bool, std::string> rho_battery(const SuiteOptions& opts) {
  const std::uint64_t top = opts.quick ? 10'000 : 1'000'000;
  Tally t;
  std::vector<std::uint64_t> failing;
  for (std::uint64_t k = 3; k <= top; ++k) {
    if (!arith::check_rho_inequality(k).holds) failing.push_back(k);
    t.expect(arith::rho_is_prime_power(k), "rho(" + std::to_string(k) + ") is not a prime power");
    t.expect(arith::lev_bound_holds(k), "Lev bound fails at k = " + std::to_string(k));
  }
  t.expect(failing == std::vector<std::uint64_t>{3, 5, 7, 13}, "inequality fails on an unexpected set of k");
  return {t.ok(), t.summary("k in [3, " + std::to_string(top) + "]: inequality fails exactly at 3, 5, 7, 13")};
}

std::pair<bool, std::string> asequences(const SuiteOptions& opts) {
  const std::uint64_t top = opts.quick ? 500 : 10'000;
  Tally t;
  for (std::uint64_t k = 2; k <= top; ++k) {
    const auto check = arith::verify_asequence(arith::construct_asequence(k));
    t.expect(check.ok, "construction fails verification at k = " + std::to_string(k));
  }
  return {t.ok(), t.summary("k in [2, " + std::to_string(top) + "] verified")};
}

std::pair<bool, std::string> measure_identities(const SuiteOptions& opts) {
  Rng rng(opts.seed);
  Tally t;
  const WordSet all = WordSet::labeled(2, Labeling(1, {0, 0}, {0}));
  for (std::uint32_t n = 1; n <= 20; ++n) t.expect(layer_density(all, n) == 1, "mu(F(" + std::to_string(n) + ")) != 1");
  for (std::uint32_t n = 1; n <= (opts.quick ? 10U : 16U); ++n)
    t.expect(total_mu(layer_words(2, n)) == 1, "explicit sum of mu over F(" + std::to_string(n) + ") != 1");

  for (int i = 0; i < 100; ++i) {
    const auto a = static_cast<std::uint32_t>(uniform(rng, 2, 3));
    const auto c = random_prefix_free(rng, a, 6);
    const Rational m = total_mu(c);
    t.expect(m <= 1, "prefix-free set with mass above 1");
    for (std::uint32_t n = max_length(c); n <= max_length(c) + 3; ++n)
      t.expect(Rational(BigInt(cone_layer(a, c, n).count()), big_pow(a, n)) == m, "mu((CF)(n)) != mu(C)");
  }

  const int instances = opts.quick ? 100 : 1000;
  const std::uint32_t L = 10;
  for (int i = 0; i < instances; ++i) {
    const auto a = static_cast<std::uint32_t>(uniform(rng, 2, 3));
    const WordSet b = random_set(rng, a, L);
    const Word w = random_word(rng, a, static_cast<std::uint32_t>(uniform(rng, 0, 3)));
    const Word v = random_word(rng, a, static_cast<std::uint32_t>(uniform(rng, 0, 3)));
    const auto lo = static_cast<std::uint32_t>(uniform(rng, std::max<std::uint32_t>(1, w.length() + v.length()), L));
    const Interval I(lo, static_cast<std::uint32_t>(uniform(rng, lo, L)));
    const auto check = strip_prefix_bound_check(b, w, v, I);
    t.expect(check.holds, "strip-prefix bound fails for w = '" + w.to_string() + "', v = '" + v.to_string() + "'");
  }
  for (int i = 0; i < instances; ++i) {
    const auto a = static_cast<std::uint32_t>(uniform(rng, 2, 3));
    const WordSet b = random_set(rng, a, L);
    const auto l = static_cast<std::uint32_t>(uniform(rng, 0, 3));
    const auto lo = static_cast<std::uint32_t>(uniform(rng, l + 1, L));
    const Interval I(lo, static_cast<std::uint32_t>(uniform(rng, lo, L)));
    t.expect(partition_identity_check(b, l, I).holds, "partition identity fails at l = " + std::to_string(l));
  }
  return {t.ok(), t.summary("layer masses, prefix-free cones, " + std::to_string(instances) +
                            " strip-prefix and partition instances exact")};
}

std::pair<bool, std::string> window_density(const SuiteOptions&) {
  Tally t;
  std::ostringstream detail;
  for (std::uint64_t k = 2; k <= 12; ++k) {
    const auto m = static_cast<std::uint32_t>(arith::rho(k));
    const WordSet T = labeled_T(2, Labeling(m, {1, 1}, {1}));
    const auto est = banach_density_estimate(T, 60, 240);
    Rational diff = est.estimate - Rational(1, m);
    if (diff < 0) diff = -diff;
    t.expect(diff <= Rational(1, 60), "k = " + std::to_string(k) + ": estimate " + to_string(est.estimate));
    detail << (k == 2 ? "" : " ") << k << ":" << to_decimal(est.estimate, 4);
  }
  return {t.ok(), t.summary("window estimates " + detail.str())};
}

std::pair<bool, std::string> constructions(const SuiteOptions& opts) {
  Tally t;
  const std::uint32_t L = opts.quick ? 12 : 15;
  const std::uint32_t top = opts.quick ? 6 : 10;
  for (std::uint32_t k = 2; k <= top; ++k) {
    const auto m = static_cast<std::uint32_t>(arith::rho(k));
    const WordSet T = labeled_T(2, Labeling(m, {1, 1}, {1}));
    t.expect(is_k_product_free(T, k, L, opts.workers).ok, "labeled T mod rho not free at k = " + std::to_string(k));
    const WordSet Tk = labeled_T(2, Labeling(k, {1, 1}, {1}));
    t.expect(is_strongly_k_product_free(Tk, k, L, opts.workers).ok,
             "labeled T mod k not strongly free at k = " + std::to_string(k));
  }
  const Word x = Word::parse(2, "aa");
  const WordSet tp = t_prime(x, 12);
  t.expect(is_k_product_free(tp, 2, 12, opts.workers).ok, "T' is not product-free");
  const Rational floor = Rational(1, 2) - 2 * mu(x);
  for (std::uint32_t n = 5; n <= 12; n += 2)
    t.expect(layer_density(tp, n) >= floor, "T' layer " + std::to_string(n) + " below 1/2 - 2 mu(x)");
  t.expect(certify_containment(tp, 2).containing.empty(), "T' sits inside a mod-2 labeled set");
  return {t.ok(), t.summary("k <= " + std::to_string(top) + " at L = " + std::to_string(L) +
                            ": no witnesses; T' free, dense on odd layers, in no mod-2 labeled set")};
}

std::pair<bool, std::string> steeplechase(const SuiteOptions& opts) {
  Tally t;
  const WordSet odd = odd_occurrence(2, {0, 1});
  const auto s = capture(odd, Rational(1, 4), 12);
  t.expect(s.stages.size() >= 2, "capture produced fewer than two stages");
  for (std::size_t i = 0; i < s.stages.size(); ++i)
    t.expect(stage_mu(s.stages[i]) == 1, "stage " + std::to_string(i + 1) + " has mass " + to_string(stage_mu(s.stages[i])));
  for (const auto& e : validate(s)) t.expect(false, e);
  if (s.stages.size() >= 2)
    for (const auto& e : validate(make_spread(s))) t.expect(false, "spread: " + e);

  const auto cb = coverage_bound(2, 1, Rational(1, 100));
  t.expect(cb.checks == 7, "coverage bound gives K + 1 = " + std::to_string(cb.checks));
  const std::uint64_t trials = opts.quick ? 10'000 : 100'000;
  const double p = std::pow(0.5, static_cast<double>(cb.checks));
  const auto misses = simulate_spelling_checks(Word::parse(2, "a"), cb.checks, trials, opts.seed);
  const double mean = p * static_cast<double>(trials);
  const double sigma = std::sqrt(mean * (1 - p));
  t.expect(std::abs(static_cast<double>(misses) - mean) <= 3 * sigma,
           "simulation missed " + std::to_string(misses) + " times, expected about " + std::to_string(mean));
  return {t.ok(), t.summary(std::to_string(s.stages.size()) + " stages of mass 1; K + 1 = " + std::to_string(cb.checks) +
                            ", simulated misses " + std::to_string(misses) + " of " + std::to_string(trials))};
}

std::pair<bool, std::string> free_group(const SuiteOptions& opts) {
  Rng rng(opts.seed + 8);
  Tally t;
  for (std::uint32_t n = 0; n <= 8; ++n) {
    Rational total = 0;
    for (const auto& w : fg::enumerate_layer(2, n)) total += fg::group_mu(w);
    t.expect(total == 1, "reduced layer " + std::to_string(n) + " has mass " + to_string(total));
  }
  int bound_checks = 0;
  while (bound_checks < 100) {
    const std::uint32_t a = 2;
    const auto alpha = random_letter(rng, a);
    auto beta = random_letter(rng, a);
    if (alpha == beta.inverse()) continue;
    const fg::Subsemigroup g(alpha, beta);
    std::vector<fg::ReducedWord> pool;
    const auto count = uniform(rng, 1, 8);
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto len = static_cast<std::uint32_t>(uniform(rng, alpha == beta ? 1 : 2, 5));
      if (auto w = random_in_g(rng, a, len, g)) pool.push_back(std::move(*w));
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::vector<fg::ReducedWord> c;
    for (const auto& w : pool)
      if (std::none_of(c.begin(), c.end(), [&](const fg::ReducedWord& u) {
            return u.length() <= w.length() && std::equal(u.letters().begin(), u.letters().end(), w.letters().begin());
          }))
        c.push_back(w);
    if (c.empty()) continue;
    std::uint32_t longest = 0;
    for (const auto& w : c) longest = std::max(longest, w.length());
    const auto n = longest + 2 + static_cast<std::uint32_t>(uniform(rng, 0, 2));
    t.expect(fg::cone_bound_check(c, g, n).holds, "cone bound fails at n = " + std::to_string(n));
    ++bound_checks;
  }
  for (int i = 0; i < 10'000; ++i) {
    const std::uint32_t a = 3;
    const auto m = static_cast<std::uint32_t>(uniform(rng, 2, 7));
    std::vector<std::uint32_t> labels(a);
    for (auto& l : labels) l = static_cast<std::uint32_t>(uniform(rng, 0, m - 1));
    const fg::GroupLabeling lab(m, labels, {0});
    std::vector<fg::SignedLetter> seq;
    const auto len = uniform(rng, 0, 20);
    for (std::uint64_t j = 0; j < len; ++j) {
      // Bias toward cancellation so reduction has work to do.
      if (!seq.empty() && uniform(rng, 0, 2) == 0)
        seq.push_back(seq.back().inverse());
      else
        seq.push_back(random_letter(rng, a));
    }
    t.expect(lab.residue(seq) == lab.residue(fg::reduce(a, seq)), "label sum changes under reduction");
  }
  return {t.ok(), t.summary("layer masses n <= 8, 100 cone bounds, 10^4 reductions exact")};
}

// Independent 2^N enumeration over subsets of [1, N]; ties go to the
// lexicographically largest indicator vector (1 first).
std::uint64_t brute_force_interval(std::uint32_t N, std::uint32_t k) {
  const std::uint64_t full = (std::uint64_t{1} << N) - 1;
  std::uint64_t best = 0;
  int best_count = -1;
  for (std::uint64_t s = 0; s <= full; ++s) {
    // Bit i stands for the integer i + 1; sums of j members sit at bit (total - 1).
    std::uint64_t sums = s;
    for (std::uint32_t j = 2; j <= k; ++j) {
      std::uint64_t next = 0;
      for (std::uint32_t x = 0; x < N; ++x)
        if ((s >> x) & 1U) next |= (sums << (x + 1)) & full;
      sums = next;
    }
    if (sums & s) continue;
    const int c = std::popcount(s);
    if (c > best_count) {
      best_count = c;
      best = s;
    } else if (c == best_count) {
      const std::uint64_t diff = s ^ best;
      if ((s & diff & (~diff + 1)) != 0) best = s;
    }
  }
  return best;
}

std::pair<bool, std::string> search_oracle(const SuiteOptions& opts) {
  Tally t;
  const std::uint32_t top = opts.quick ? 12 : 16;
  for (std::uint32_t N = 2; N <= top; ++N) {
    const auto r = solve_exact(SearchInstance(1, 2, N));
    std::uint64_t mask = 0;
    for (const auto& w : r.members) mask |= std::uint64_t{1} << (w.length() - 1);
    const std::uint64_t oracle = brute_force_interval(N, 2);
    t.expect(mask == oracle, "N = " + std::to_string(N) + ": solver and brute force disagree");
    t.expect(r.value == std::popcount(oracle), "N = " + std::to_string(N) + ": optimum value mismatch");
    // Re-verify freeness directly on integers.
    for (std::uint32_t x = 1; x <= N; ++x)
      for (std::uint32_t y = 1; x + y <= N; ++y)
        if (((mask >> (x - 1)) & 1U) && ((mask >> (y - 1)) & 1U))
          t.expect(!((mask >> (x + y - 1)) & 1U), "N = " + std::to_string(N) + ": reported set is not sum-free");
  }
  const std::vector<SearchInstance> det{{2, 2, 4}, {1, 3, 24}, {2, 3, 5}, {3, 2, 3}};
  for (const auto& inst : det) {
    ExactOptions one;
    one.log_bounds = true;
    ExactOptions many = one;
    many.workers = 8;
    const auto r1 = solve_exact(inst, one);
    const auto r8 = solve_exact(inst, many);
    const std::string name = std::to_string(inst.alphabet_size) + "/" + std::to_string(inst.k) + "/" + std::to_string(inst.L);
    t.expect(r1.members == r8.members && r1.value == r8.value && r1.bound_log == r8.bound_log,
             "instance " + name + " depends on the worker count");
    t.expect(is_k_product_free(result_set(r1), inst.k, inst.L).ok, "instance " + name + " result not free");
  }
  return {t.ok(), t.summary("N <= " + std::to_string(top) + " match brute force; 1 vs 8 workers identical")};
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& opts) {
  struct Entry {
    const char* title;
    std::pair<bool, std::string> (*fn)(const SuiteOptions&);
    double limit;  // seconds, 0 for none
  };
  static const Entry entries[] = {
      {"rho table", rho_table, 1},
      {"rho inequality battery", rho_battery, 60},
      {"A-sequence battery", asequences, 300},
      {"exact measure identities", measure_identities, 0},
      {"window density of labeled sets", window_density, 30},
      {"freeness of constructions", constructions, 0},
      {"steeplechase and coverage", steeplechase, 0},
      {"free group identities", free_group, 0},
      {"search oracle equivalence", search_oracle, 0},
  };
  if (id < 1 || id > 9) throw InvalidArgument("criterion id must be in 1..9");
  const Entry& e = entries[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = e.title;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto [ok, detail] = e.fn(opts);
    r.passed = ok;
    r.detail = std::move(detail);
  } catch (const std::exception& ex) {
    r.passed = false;
    r.detail = std::string("error: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!opts.quick && e.limit > 0 && r.seconds > e.limit) {
    r.passed = false;
    r.detail += "; over the " + fmt_seconds(e.limit) + " s limit";
  }
  return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opts, const std::function<void(const CriterionResult&)>& progress) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) {
    out.push_back(run_criterion(id, opts));
    if (progress) progress(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + " (" +
         fmt_seconds(r.seconds) + " s): " + r.detail;
}

}  // namespace pfree
