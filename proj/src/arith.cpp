#include "pfree/arith.hpp"

#include <algorithm>
#include <map>

#include "pfree/words.hpp"

namespace pfree::arith {

namespace {

constexpr std::uint64_t kMaxExpanded = std::uint64_t{1} << 26;

void require_k(std::uint64_t k, std::uint64_t min) {
  if (k < min) throw InvalidArgument("k must be at least " + std::to_string(min) + ", got " + std::to_string(k));
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw CapExceeded("integer overflow in sumset");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw CapExceeded("integer overflow in sumset");
  return r;
}

}  // namespace

std::uint64_t rho(std::uint64_t k) {
  require_k(k, 2);
  std::uint64_t l = 2;
  while ((k - 1) % l == 0) ++l;
  return l;
}

bool is_prime_power(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    return n == 1;
  }
  return true;
}

bool rho_is_prime_power(std::uint64_t k) { return is_prime_power(rho(k)); }

bool lev_bound_holds(std::uint64_t k) {
  const std::uint64_t r = rho(k);
  if (r <= 2) return true;
  // rho stays below 64 for every 64-bit k, so 2^(rho-2) fits.
  const unsigned __int128 lhs = static_cast<unsigned __int128>(1) << (r - 2);
  const unsigned __int128 rhs = static_cast<unsigned __int128>(k) * k;
  return lhs <= rhs;
}

std::vector<std::uint64_t> pairwise_sumset(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() * b.size() > kMaxExpanded) throw CapExceeded("pairwise sumset too large");
  std::vector<std::uint64_t> out;
  out.reserve(a.size() * b.size());
  for (auto x : a)
    for (auto y : b) out.push_back(checked_add(x, y));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint64_t> sumset(std::uint64_t d, std::span<const std::uint64_t> a) {
  if (d == 0) throw InvalidArgument("sumset multiplicity must be positive");
  if (a.empty()) throw InvalidArgument("sumset of an empty set");
  std::vector<std::uint64_t> base(a.begin(), a.end());
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  std::vector<std::uint64_t> acc = base;
  for (std::uint64_t i = 1; i < d; ++i) acc = pairwise_sumset(acc, base);
  return acc;
}

RhoInequality check_rho_inequality(std::uint64_t k) {
  require_k(k, 3);
  RhoInequality r;
  r.rho = rho(k);
  for (std::uint64_t t = 1; t < r.rho; ++t) {
    const std::uint64_t v = (r.rho - t) * t * (t + 1);
    if (v > r.max_value) {
      r.max_value = v;
      r.argmax = t;
    }
  }
  r.holds = k - 1 >= r.max_value;
  if (!r.holds) r.witness = r.argmax;
  return r;
}

// ---------------------------------------------------------------------------

ProgressionSet ProgressionSet::progression(std::uint64_t start, std::uint64_t step, std::uint64_t count) {
  if (count == 0) return {};
  if (start == 0) throw InvalidArgument("progression sets hold positive integers");
  if (count > 1 && step == 0) throw InvalidArgument("progression step must be positive");
  checked_add(start, checked_mul(step, count - 1));
  ProgressionSet s;
  s.runs_.push_back({start, count == 1 ? 1 : step, count});
  return s;
}

ProgressionSet ProgressionSet::from_values(std::vector<std::uint64_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (!values.empty() && values.front() == 0) throw InvalidArgument("progression sets hold positive integers");
  ProgressionSet s;
  std::size_t i = 0;
  while (i < values.size()) {
    Run r{values[i], 1, 1};
    if (i + 1 < values.size()) {
      r.step = values[i + 1] - values[i];
      r.count = 2;
      while (i + r.count < values.size() && values[i + r.count] - values[i + r.count - 1] == r.step) ++r.count;
    }
    s.runs_.push_back(r);
    i += r.count;
  }
  return s;
}

std::uint64_t ProgressionSet::size() const noexcept {
  std::uint64_t n = 0;
  for (const auto& r : runs_) n += r.count;
  return n;
}

std::uint64_t ProgressionSet::min() const {
  if (runs_.empty()) throw InvalidArgument("min of an empty set");
  return runs_.front().start;
}

std::uint64_t ProgressionSet::max() const {
  if (runs_.empty()) throw InvalidArgument("max of an empty set");
  return runs_.back().last();
}

bool ProgressionSet::contains(std::uint64_t x) const {
  auto it = std::upper_bound(runs_.begin(), runs_.end(), x, [](std::uint64_t v, const Run& r) { return v < r.start; });
  if (it == runs_.begin()) return false;
  const Run& r = *std::prev(it);
  return x <= r.last() && (x - r.start) % r.step == 0;
}

std::vector<std::uint64_t> ProgressionSet::values() const {
  if (size() > kMaxExpanded) throw CapExceeded("set too large to expand");
  std::vector<std::uint64_t> out;
  out.reserve(size());
  for (const auto& r : runs_)
    for (std::uint64_t i = 0; i < r.count; ++i) out.push_back(r.start + i * r.step);
  return out;
}

ProgressionSet ProgressionSet::sumset(std::uint64_t d) const {
  if (d == 0) throw InvalidArgument("sumset multiplicity must be positive");
  if (runs_.empty()) throw InvalidArgument("sumset of an empty set");
  if (runs_.size() == 1) {
    const Run& r = runs_.front();
    if (r.count == 1) return progression(checked_mul(d, r.start), 1, 1);
    return progression(checked_mul(d, r.start), r.step, checked_add(checked_mul(d, r.count - 1), 1));
  }
  const auto v = values();
  return from_values(arith::sumset(d, v));
}

ProgressionSet ProgressionSet::shifted(std::uint64_t offset) const {
  ProgressionSet s = *this;
  if (!s.runs_.empty()) checked_add(max(), offset);
  for (auto& r : s.runs_) r.start += offset;
  return s;
}

std::uint64_t ProgressionSet::key() const {
  if (runs_.empty()) throw InvalidArgument("key of an empty set");
  const Run& r = runs_.front();
  if (r.start != 1) return r.start;
  if (r.count > 1) return r.start + r.step;
  return runs_.size() > 1 ? runs_[1].start : 1;
}

bool ProgressionSet::is_subset_of(const ProgressionSet& other, bool with_one) const {
  for (Run r : runs_) {
    if (with_one && r.start == 1) {
      if (r.count == 1) continue;
      r.start += r.step;
      --r.count;
    }
    if (other.runs_.size() == 1) {
      const Run& o = other.runs_.front();
      if (r.start < o.start || r.last() > o.last()) return false;
      if ((r.start - o.start) % o.step != 0) return false;
      if (r.count > 1 && r.step % o.step != 0) return false;
      continue;
    }
    if (r.count > kMaxExpanded) throw CapExceeded("subset test too large");
    for (std::uint64_t i = 0; i < r.count; ++i)
      if (!other.contains(r.start + i * r.step)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

void validate(const ASequence& seq) {
  require_k(seq.k, 2);
  const std::uint64_t r = rho(seq.k);
  if (seq.sets.empty()) throw InvalidArgument("sequence has no sets");
  if (seq.widths.size() != seq.sets.size())
    throw InvalidArgument("expected one width list per set, got " + std::to_string(seq.widths.size()) + " for " +
                          std::to_string(seq.sets.size()) + " sets");
  for (std::size_t l = 0; l < seq.sets.size(); ++l) {
    const auto& a = seq.sets[l];
    if (a.empty() || !a.contains(1)) throw InvalidArgument("set " + std::to_string(l + 1) + " does not contain 1");
    if (seq.widths[l].size() != r - 1)
      throw InvalidArgument("set " + std::to_string(l + 1) + " has " + std::to_string(seq.widths[l].size()) +
                            " widths, expected " + std::to_string(r - 1));
    for (auto d : seq.widths[l])
      if (d == 0) throw InvalidArgument("widths must be positive");
  }
  if (seq.sets.back().size() != 1) throw InvalidArgument("last set must be {1}");
}

SequenceCheck verify_asequence(const ASequence& seq) {
  validate(seq);
  const std::uint64_t r = rho(seq.k);
  const std::size_t widths = r - 1;

  // Earlier sets bucketed by key; a set can only lie inside U when its key does.
  std::map<std::uint64_t, std::vector<std::size_t>> buckets;

  for (std::size_t l = 0; l < seq.sets.size(); ++l) {
    const auto& a = seq.sets[l];
    const auto& d = seq.widths[l];
    for (std::size_t i = 0; i < widths; ++i) {
      std::uint64_t c = 0;
      for (std::size_t j = i; j < widths; ++j) {
        c = checked_add(c, d[j]);
        const ProgressionSet u = a.sumset(c).shifted(1);  // U = {1} + u
        bool ok = u.contains(seq.k);
        for (auto it = buckets.begin(); !ok && it != buckets.end(); ++it) {
          if (it->first != 1 && !u.contains(it->first)) continue;
          for (auto p = it->second.rbegin(); p != it->second.rend(); ++p) {
            if (seq.sets[*p].is_subset_of(u, true)) {
              ok = true;
              break;
            }
          }
        }
        if (!ok) return {false, SequenceFailure{l + 1, i + 1, j + 1}};
      }
    }
    buckets[a.key()].push_back(l);
  }
  return {true, std::nullopt};
}

namespace {

ASequence special_case(std::uint64_t k) {
  auto set = [](std::vector<std::uint64_t> v) { return ProgressionSet::from_values(std::move(v)); };
  auto rep = [&](std::uint64_t d) { return std::vector<std::uint64_t>(rho(k) - 1, d); };
  ASequence s;
  s.k = k;
  switch (k) {
    case 2:
      s.sets = {set({1})};
      s.widths = {rep(1)};
      break;
    case 3:
      s.sets = {set({1, 2}), set({1})};
      s.widths = {rep(1), rep(1)};
      break;
    case 5:
      s.sets = {set({1, 3}), set({1})};
      s.widths = {rep(2), rep(2)};
      break;
    case 7:
      s.sets = {set({1, 3}), set({1, 2}), set({1, 4}), set({1})};
      s.widths = {rep(2), rep(1), rep(1), rep(1)};
      break;
    case 13:
      s.sets = {set({1, 4}), set({1, 2}), set({1, 3, 5, 7}), set({1, 3}), set({1, 5}), set({1})};
      s.widths = {rep(3), rep(3), rep(1), rep(1), rep(1), rep(1)};
      break;
    default:
      throw InvalidArgument("no special-case sequence for k = " + std::to_string(k));
  }
  return s;
}

}  // namespace

ASequence construct_asequence(std::uint64_t k) {
  require_k(k, 2);
  if (k == 2 || k == 3 || k == 5 || k == 7 || k == 13) return special_case(k);
  const std::uint64_t r = rho(k);
  ASequence seq;
  seq.k = k;
  for (std::uint64_t d = r - 1; d >= 1; --d) {
    const std::uint64_t s = (r - 1) / d;
    const std::uint64_t alpha = (k - 1 + d * (d + 1) - 1) / (d * (d + 1));
    std::vector<std::uint64_t> widths(r - 1);
    for (std::uint64_t i = 1; i <= r - 1; ++i) widths[i - 1] = (i % (s + 1) == 0 && alpha != 2) ? alpha * d : d;
    // t < (k - 1) / d
    const std::uint64_t tmax = (k - 1) % d == 0 ? (k - 1) / d - 1 : (k - 1) / d;
    for (std::uint64_t t = tmax; t >= 1; --t) {
      seq.sets.push_back(ProgressionSet::progression(1, d, t + 1));
      seq.widths.push_back(widths);
    }
  }
  seq.sets.push_back(ProgressionSet::progression(1, 1, 1));
  seq.widths.emplace_back(r - 1, 1);
  return seq;
}

}  // namespace pfree::arith
