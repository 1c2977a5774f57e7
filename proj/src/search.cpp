#include "pfree/search.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "pfree/arith.hpp"
#include "pfree/parallel.hpp"

namespace pfree {

namespace {

constexpr std::uint64_t kMaxHeuristicWords = std::uint64_t{1} << 22;
constexpr std::uint64_t kMaxConstraintEntries = std::uint64_t{1} << 26;
constexpr std::uint64_t kMaxLabelings = std::uint64_t{1} << 20;
constexpr std::uint32_t kSplitDepth = 10;

const char* const kCaveat =
    "finite truncation: optima on lengths 1..L can exceed the asymptotic 1/rho(k) density because of tail effects";

// Words of lengths 1..L in shortlex order with the k-fold factorisations of
// each word as sorted, deduplicated index lists.
struct Model {
  std::uint32_t a = 1;
  std::uint32_t k = 2;
  std::uint32_t L = 1;
  std::vector<Word> words;
  std::vector<std::uint64_t> offset;  // offset[n] = index of the first word of length n
  std::vector<std::uint64_t> weight;  // |A|^(L - n)
  std::vector<std::vector<std::vector<std::uint32_t>>> pieces;  // per target

  std::uint64_t index(const Word& w) const { return offset[w.length()] + w.rank(); }
};

void compositions(std::uint32_t n, std::uint32_t k, std::vector<std::uint32_t>& cur,
                  const std::function<void(const std::vector<std::uint32_t>&)>& f) {
  if (k == 1) {
    cur.push_back(n);
    f(cur);
    cur.pop_back();
    return;
  }
  for (std::uint32_t c = 1; c + (k - 1) <= n; ++c) {
    cur.push_back(c);
    compositions(n - c, k - 1, cur, f);
    cur.pop_back();
  }
}

Model build_model(const SearchInstance& inst, std::uint64_t word_cap) {
  Model m;
  m.a = inst.alphabet_size;
  m.k = inst.k;
  m.L = inst.L;
  if (inst.word_count() > word_cap) throw CapExceeded("too many words for the search");
  m.offset.assign(inst.L + 2, 0);
  for (std::uint32_t n = 1; n <= inst.L; ++n) {
    m.offset[n + 1] = m.offset[n] + layer_size(m.a, n);
    for (auto& w : layer_words(m.a, n)) {
      m.words.push_back(w);
      m.weight.push_back(layer_size(m.a, inst.L - n));
    }
  }
  m.pieces.resize(m.words.size());
  std::uint64_t entries = 0;
  std::vector<std::uint32_t> cur;
  for (std::size_t t = 0; t < m.words.size(); ++t) {
    const Word& w = m.words[t];
    auto& out = m.pieces[t];
    compositions(w.length(), inst.k, cur, [&](const std::vector<std::uint32_t>& parts) {
      std::vector<std::uint32_t> idx;
      std::uint32_t pos = 0;
      for (auto c : parts) {
        const std::uint64_t r = (w.rank() / layer_size(m.a, w.length() - pos - c)) % layer_size(m.a, c);
        idx.push_back(static_cast<std::uint32_t>(m.offset[c] + r));
        pos += c;
      }
      std::sort(idx.begin(), idx.end());
      idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
      out.push_back(std::move(idx));
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (const auto& p : out) entries += p.size() + 1;
    if (entries > kMaxConstraintEntries) throw CapExceeded("too many factorisation constraints");
  }
  return m;
}

std::vector<Word> members_of(const Model& m, const std::vector<char>& in) {
  std::vector<Word> out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(m.words[i]);
  return out;
}

void verify_result(const SearchResult& r) {
  const auto check = is_k_product_free(result_set(r), r.instance.k, r.instance.L);
  if (!check.ok) throw std::logic_error("search produced a set that is not k-product-free");
}

// ---- exact --------------------------------------------------------------

struct Node {
  std::uint32_t i = 0;
  std::uint64_t in = 0;
  std::uint64_t forbidden = 0;
  std::uint64_t weight = 0;
};

struct Outcome {
  bool found = false;
  std::uint64_t weight = 0;
  std::uint64_t in = 0;
  std::uint64_t nodes = 0;
  std::vector<std::string> log;
  bool log_truncated = false;
};

class Exact {
 public:
  Exact(const Model& m, bool prune, bool log, std::uint64_t max_log)
      : m_(m), n_(static_cast<std::uint32_t>(m.words.size())), prune_(prune), log_(log), max_log_(max_log) {
    touching_.resize(n_);
    for (std::uint32_t t = 0; t < n_; ++t)
      for (const auto& p : m.pieces[t]) {
        std::uint64_t mask = 0;
        for (auto i : p) mask |= std::uint64_t{1} << i;
        for (auto i : p) touching_[i].push_back({t, mask});
      }
    for (std::uint32_t n = 1; n <= m.L; ++n) {
      std::uint64_t mask = 0;
      for (auto i = m.offset[n]; i < m.offset[n + 1]; ++i) mask |= std::uint64_t{1} << i;
      layers_.push_back({mask, layer_size(m.a, m.L - n)});
    }
    all_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  std::uint32_t size() const { return n_; }

  Node include(const Node& s) const {
    Node c{s.i + 1, s.in | (std::uint64_t{1} << s.i), s.forbidden, s.weight + m_.weight[s.i]};
    for (const auto& [t, mask] : touching_[s.i])
      if ((c.in & mask) == mask) c.forbidden |= std::uint64_t{1} << t;
    return c;
  }
  Node exclude(const Node& s) const { return {s.i + 1, s.in, s.forbidden, s.weight}; }
  bool allowed(const Node& s) const { return !((s.forbidden >> s.i) & 1U); }

  // Deterministic feasible start: take every word not yet forbidden.
  std::uint64_t greedy() const {
    Node s;
    while (s.i < n_) s = allowed(s) ? include(s) : exclude(s);
    return s.weight;
  }

  // Frontier at depth d in include-first order.
  std::vector<Node> split(std::uint32_t d) const {
    std::vector<Node> out;
    auto rec = [&](auto&& self, const Node& s) -> void {
      if (s.i == d) {
        out.push_back(s);
        return;
      }
      if (allowed(s)) self(self, include(s));
      self(self, exclude(s));
    };
    rec(rec, Node{});
    return out;
  }

  Outcome run(const Node& start, std::uint64_t floor) const {
    Outcome o;
    dfs(start, floor, o);
    return o;
  }

 private:
  std::uint64_t remaining(const Node& s) const {
    const std::uint64_t avail = all_ & ~((std::uint64_t{1} << s.i) - 1) & ~s.forbidden;
    std::uint64_t r = 0;
    for (const auto& [mask, w] : layers_) r += static_cast<std::uint64_t>(std::popcount(avail & mask)) * w;
    return r;
  }

  void dfs(const Node& s, std::uint64_t floor, Outcome& o) const {
    ++o.nodes;
    if (s.i == n_) {
      if (!o.found || s.weight > o.weight) {
        o.found = true;
        o.weight = s.weight;
        o.in = s.in;
      }
      return;
    }
    if (prune_) {
      const std::uint64_t ub = s.weight + remaining(s);
      if (ub < floor || (o.found && ub <= o.weight)) {
        if (log_) {
          if (o.log.size() < max_log_) {
            std::ostringstream line;
            line << "prune depth=" << s.i << " members=0x" << std::hex << s.in << std::dec << " weight=" << s.weight
                 << " remaining=" << ub - s.weight << " bound=" << ub << " incumbent="
                 << (o.found ? std::max(o.weight, floor) : floor);
            o.log.push_back(line.str());
          } else {
            o.log_truncated = true;
          }
        }
        return;
      }
    }
    if (allowed(s)) dfs(include(s), floor, o);
    dfs(exclude(s), floor, o);
  }

  const Model& m_;
  std::uint32_t n_;
  bool prune_;
  bool log_;
  std::uint64_t max_log_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> touching_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> layers_;
  std::uint64_t all_ = 0;
};

// ---- heuristic ----------------------------------------------------------

class LocalSearch {
 public:
  explicit LocalSearch(const Model& m) : m_(m), in_(m.words.size(), 0), occ_(m.words.size()) {
    for (std::uint32_t t = 0; t < m.words.size(); ++t)
      for (const auto& p : m.pieces[t]) {
        const auto id = static_cast<std::uint32_t>(members_.size());
        std::vector<std::uint32_t> all = p;
        if (!std::binary_search(all.begin(), all.end(), t)) all.push_back(t);
        for (auto i : all) occ_[i].push_back(id);
        members_.push_back(std::move(all));
      }
    count_.assign(members_.size(), 0);
  }

  void set(std::uint32_t i, bool on) {
    if (static_cast<bool>(in_[i]) == on) return;
    in_[i] = on;
    if (on) {
      weight_ += m_.weight[i];
      for (auto c : occ(i)) ++count_[c];
    } else {
      weight_ -= m_.weight[i];
      for (auto c : occ(i)) --count_[c];
    }
  }

  bool violated(std::uint32_t c) const { return count_[c] == members_[c].size(); }
  const std::vector<std::uint32_t>& occ(std::uint32_t i) const { return occ_[i]; }
  const std::vector<std::uint32_t>& constraint(std::uint32_t c) const { return members_[c]; }
  bool has(std::uint32_t i) const { return in_[i] != 0; }
  std::uint64_t weight() const { return weight_; }
  const std::vector<char>& membership() const { return in_; }

 private:
  const Model& m_;
  std::vector<char> in_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<std::vector<std::uint32_t>> occ_;
  std::vector<std::uint32_t> count_;
  std::uint64_t weight_ = 0;
};

}  // namespace

SearchInstance::SearchInstance(std::uint32_t a, std::uint32_t k_, std::uint32_t L_) : alphabet_size(a), k(k_), L(L_) {
  Alphabet{a};
  if (k < 2) throw InvalidArgument("k must be at least 2");
  if (L < 1) throw InvalidArgument("length bound must be at least 1");
  if (!length_supported(a, L)) throw CapExceeded("length bound too large for the alphabet");
}

std::uint64_t SearchInstance::word_count() const {
  std::uint64_t total = 0;
  for (std::uint32_t n = 1; n <= L; ++n) {
    const std::uint64_t s = layer_size(alphabet_size, n);
    if (total > ~std::uint64_t{0} - s) return ~std::uint64_t{0};
    total += s;
  }
  return total;
}

const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::Exhaustive:
      return "exhaustive";
    case Certificate::BranchAndBound:
      return "branch-and-bound";
    case Certificate::Heuristic:
      return "heuristic";
  }
  return "unknown";
}

WordSet result_set(const SearchResult& r) {
  return WordSet::from_words(r.instance.alphabet_size, r.members, r.instance.L);
}

SearchResult solve_exact(const SearchInstance& inst, const ExactOptions& opts) {
  const std::uint64_t count = inst.word_count();
  const std::uint64_t cap = std::min<std::uint64_t>(std::max(opts.exhaustive_cap, opts.branch_and_bound_cap), 64);
  if (count > cap)
    throw ExactInfeasible("exact infeasible: " + std::to_string(count) + " words exceed the cap of " +
                          std::to_string(cap));
  const bool exhaustive = count <= opts.exhaustive_cap;
  const Model m = build_model(inst, cap);
  const Exact ex(m, !exhaustive, opts.log_bounds, opts.max_log_lines);

  const std::uint64_t floor = exhaustive ? 0 : ex.greedy();
  const auto tasks = ex.split(std::min(kSplitDepth, ex.size()));
  std::vector<Outcome> results(tasks.size());
  parallel_for(tasks.size(), opts.workers, [&](std::size_t t) { results[t] = ex.run(tasks[t], floor); });

  SearchResult r;
  r.instance = inst;
  r.certificate = exhaustive ? Certificate::Exhaustive : Certificate::BranchAndBound;
  r.caveat = kCaveat;
  const Outcome* best = nullptr;
  for (const auto& o : results) {
    r.nodes += o.nodes;
    if (o.found && (!best || o.weight > best->weight)) best = &o;
    for (const auto& line : o.log) {
      if (r.bound_log.size() < opts.max_log_lines)
        r.bound_log.push_back(line);
      else
        r.bound_log_truncated = true;
    }
    r.bound_log_truncated = r.bound_log_truncated || o.log_truncated;
  }
  if (!best) throw std::logic_error("exact search found no feasible set");
  std::vector<char> in(m.words.size());
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = static_cast<char>((best->in >> i) & 1U);
  r.members = members_of(m, in);
  r.value = Rational(BigInt(best->weight), big_pow(inst.alphabet_size, inst.L));
  verify_result(r);
  r.containment = certify_containment(result_set(r), arith::rho(inst.k));
  return r;
}

SearchResult heuristic_search(const SearchInstance& inst, const HeuristicOptions& opts) {
  const Model m = build_model(inst, kMaxHeuristicWords);
  LocalSearch ls(m);
  const auto n = static_cast<std::uint32_t>(m.words.size());
  if (opts.warm_start) {
    const std::uint64_t r = arith::rho(inst.k);
    for (std::uint32_t i = 0; i < n; ++i)
      if (m.words[i].length() % r == 1 % r) ls.set(i, true);
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<char> best = ls.membership();
  std::uint64_t best_weight = ls.weight();
  std::vector<std::uint32_t> removed;

  for (std::uint64_t move = 0; move < opts.budget; ++move) {
    const std::uint32_t x = pick(rng);
    if (ls.has(x)) {
      // Occasional removal keeps the walk from freezing.
      if (coin(rng) < 0.05) ls.set(x, false);
      continue;
    }
    const std::uint64_t before = ls.weight();
    ls.set(x, true);
    removed.clear();
    for (auto c : ls.occ(x)) {
      if (!ls.violated(c)) continue;
      std::vector<std::uint32_t> options;
      for (auto y : ls.constraint(c))
        if (y != x) options.push_back(y);
      const std::uint32_t y = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      ls.set(y, false);
      removed.push_back(y);
    }
    if (ls.weight() < before && coin(rng) >= 0.02) {
      ls.set(x, false);
      for (auto y : removed) ls.set(y, true);
      continue;
    }
    if (ls.weight() > best_weight) {
      best_weight = ls.weight();
      best = ls.membership();
    }
  }

  SearchResult r;
  r.instance = inst;
  r.certificate = Certificate::Heuristic;
  r.nodes = opts.budget;
  r.seed = opts.seed;
  r.caveat = kCaveat;
  r.members = members_of(m, best);
  r.value = Rational(BigInt(best_weight), big_pow(inst.alphabet_size, inst.L));
  verify_result(r);
  r.containment = certify_containment(result_set(r), arith::rho(inst.k));
  return r;
}

ContainmentReport certify_containment(const WordSet& s, std::uint64_t rho) {
  if (rho < 2) throw InvalidArgument("rho must be at least 2");
  const auto bound = s.bound();
  if (!bound) throw InvalidArgument("containment needs a set known up to a finite bound");
  const std::uint32_t a = s.alphabet_size();
  const auto members = s.members(*bound);

  ContainmentReport out;
  out.rho = rho;
  auto scan = [&](std::uint32_t m, std::vector<std::uint32_t> targets) {
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < a; ++i) {
      total *= m;
      if (total > kMaxLabelings) throw CapExceeded("too many labelings to enumerate");
    }
    std::vector<std::uint32_t> labels(a, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (std::uint32_t i = a; i-- > 0;) {
        labels[i] = static_cast<std::uint32_t>(c % m);
        c /= m;
      }
      const Labeling lab(m, labels, targets);
      ++out.tried;
      if (std::all_of(members.begin(), members.end(), [&](const Word& w) { return lab.accepts(lab.residue(w)); }))
        out.containing.push_back(lab);
    }
  };
  if (rho > std::numeric_limits<std::uint32_t>::max()) throw CapExceeded("rho too large");
  scan(static_cast<std::uint32_t>(rho), {1});
  if (rho == 3) scan(6, {1, 2});
  return out;
}

}  // namespace pfree
