#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pfree/arith.hpp"
#include "pfree/density.hpp"
#include "pfree/freegroup.hpp"
#include "pfree/parallel.hpp"
#include "pfree/search.hpp"
#include "pfree/serialize.hpp"
#include "pfree/steeple.hpp"
#include "pfree/suite.hpp"
#include "pfree/version.hpp"
#include "pfree/wordsets.hpp"

namespace pfree::cli {

namespace {

// Options naming a semigroup set: a JSON file, a labeling, or a word list.
struct SetArgs {
  std::string file;
  std::uint32_t a = 0;
  std::uint32_t m = 0;
  std::vector<std::uint32_t> labels;
  std::vector<std::uint32_t> targets{1};
  std::vector<std::string> words;
};

struct Args {
  std::string out;
  unsigned workers = 1;
  std::string format = "json";
  SetArgs set;
  std::uint64_t k = 2;
  std::uint32_t L = 10;
  std::uint32_t lo = 1, hi = 10, window = 60, max_n = 240, depth = 2, n = 1;
  std::string mode;
  std::string eps = "1/4";
  std::string in;
  bool strong = false, spread = false, tight = false, quick = false, no_warm_start = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = 100'000, trials = 0, rho = 0, max_list = 1000;
  std::uint64_t exhaustive_cap = 30, bnb_cap = 62;
  std::uint32_t w_length = 1;
  std::string word, alpha, beta, log;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("malformed JSON in '" + path + "': " + e.what());
  }
}

void add_set_options(CLI::App* sub, SetArgs& s) {
  sub->add_option("--set", s.file, "set as a JSON file");
  sub->add_option("--a", s.a, "alphabet size");
  sub->add_option("--m", s.m, "labeling modulus");
  sub->add_option("--labels", s.labels, "letter labels, comma separated")->delimiter(',');
  sub->add_option("--targets", s.targets, "target residues, comma separated")->delimiter(',')->capture_default_str();
  sub->add_option("--words", s.words, "explicit members, comma separated")->delimiter(',');
}

WordSet build_set(const SetArgs& s, std::uint32_t L) {
  if (!s.file.empty()) return wordset_from_json(read_json_file(s.file));
  if (!s.labels.empty()) {
    if (s.a != 0 && s.a != s.labels.size()) throw InvalidArgument("--a does not match the number of labels");
    if (s.m == 0) throw InvalidArgument("--m is required with --labels");
    return WordSet::labeled(static_cast<std::uint32_t>(s.labels.size()), Labeling(s.m, s.labels, s.targets));
  }
  if (!s.words.empty()) {
    if (s.a == 0) throw InvalidArgument("--a is required with --words");
    std::vector<Word> words;
    for (const auto& w : s.words) words.push_back(Word::parse(s.a, w));
    return WordSet::from_words(s.a, words, L);
  }
  throw InvalidArgument("a set is required: --set, --labels or --words");
}

// Every option that shapes the result; output path and worker count are left
// out so reports compare equal across them.
Json config_of(const CLI::App& sub) {
  Json c;
  c["command"] = sub.get_name();
  for (const CLI::Option* o : sub.get_options()) {
    const auto& names = o->get_lnames();
    if (names.empty() || names.front() == "help" || names.front() == "out" || names.front() == "workers") continue;
    std::string value;
    if (o->count() > 0) {
      const auto& r = o->results();
      for (std::size_t i = 0; i < r.size(); ++i) value += (i ? "," : "") + r[i];
    } else {
      value = o->get_default_str();
      // CLI11 renders vector defaults as "[x,y]".
      if (value.size() >= 2 && value.front() == '[' && value.back() == ']') value = value.substr(1, value.size() - 2);
    }
    if (!value.empty()) c[names.front()] = value;
  }
  return c;
}

void write_report(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

std::string dump(Json body, const Json& config) {
  body["config"] = config;
  body["version"] = kVersion;
  return body.dump(2) + "\n";
}

Rational parse_eps(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse epsilon '" + text + "'");
  }
}

fg::SignedLetter parse_signed_letter(std::uint32_t a, const std::string& text, const char* what) {
  const auto letters = fg::parse_letters(a, text);
  if (letters.size() != 1) throw InvalidArgument(std::string(what) + " must be a single letter");
  return letters.front();
}

Json words_array(const std::vector<Word>& words) {
  Json arr = Json::array();
  for (const auto& w : words) arr.push_back(w.to_string());
  return arr;
}

// ---- commands -----------------------------------------------------------

int cmd_rho(const Args& a, Json& body) {
  if (a.k < 2) throw InvalidArgument("--k must be at least 2");
  body["k"] = a.k;
  body["rho"] = arith::rho(a.k);
  return kOk;
}

int cmd_aseq(const Args& a, Json& body) {
  const arith::ASequence seq = a.in.empty() ? arith::construct_asequence(a.k) : asequence_from_json(read_json_file(a.in));
  const auto check = arith::verify_asequence(seq);
  body["k"] = seq.k;
  body["verified"] = check.ok;
  if (check.failure) body["failure"] = {{"set", check.failure->set_index}, {"i", check.failure->i}, {"j", check.failure->j}};
  body["sequence"] = to_json(seq);
  return check.ok ? kOk : kVerificationFailed;
}

int cmd_density(const Args& a, Json& body, std::string& csv) {
  const std::uint32_t top = a.mode == "window" ? a.max_n : a.hi;
  const WordSet b = build_set(a.set, top);
  if (a.mode == "layer") {
    if (a.lo > a.hi) throw InvalidArgument("--lo must not exceed --hi");
    const auto series = layer_density_series(b, a.lo, a.hi);
    if (a.format == "csv") {
      csv = to_csv(series);
      return kOk;
    }
    body["provenance"] = series.provenance;
    Json values = Json::array();
    for (std::size_t i = 0; i < series.values.size(); ++i)
      values.push_back({{"n", series.first + i}, {"value", rational_json(series.values[i])},
                        {"decimal", to_decimal(series.values[i], 15)}});
    body["layers"] = std::move(values);
    return kOk;
  }
  if (a.format == "csv") throw InvalidArgument("CSV output is only available for --mode layer");
  if (a.mode == "interval") {
    const Interval I(a.lo, a.hi);
    const Rational d = interval_density(b, I);
    body["interval"] = {I.lo, I.hi};
    body["density"] = rational_json(d);
    body["decimal"] = to_decimal(d, 15);
  } else if (a.mode == "window") {
    const auto est = banach_density_estimate(b, a.window, a.max_n);
    body["window"] = {est.window.lo, est.window.hi};
    body["estimate"] = rational_json(est.estimate);
    body["decimal"] = to_decimal(est.estimate, 15);
  } else if (a.mode == "subtree") {
    const Interval I(a.lo, a.hi);
    const auto est = sup_relative_density_proxy(b, a.depth, I);
    body["interval"] = {I.lo, I.hi};
    body["root"] = est.root.to_string();
    body["value"] = rational_json(est.value);
    body["decimal"] = to_decimal(est.value, 15);
  } else {
    throw InvalidArgument("unknown density mode '" + a.mode + "'");
  }
  return kOk;
}

int cmd_chain(const Args& a, Json& body) {
  if (a.set.m == 0 || a.set.labels.empty()) throw InvalidArgument("--m and --labels are required");
  const auto c = analyze_chain(Labeling(a.set.m, a.set.labels, a.set.targets));
  body["modulus"] = c.modulus;
  Json step = Json::array();
  for (const auto& p : c.step) step.push_back(rational_json(p));
  body["step"] = std::move(step);
  body["irreducible"] = c.irreducible;
  body["period"] = c.period;
  body["reachable"] = c.reachable;
  if (c.stationary) {
    Json pi = Json::array();
    for (const auto& p : *c.stationary) pi.push_back(rational_json(p));
    body["stationary"] = std::move(pi);
  } else {
    body["stationary"] = nullptr;
  }
  return kOk;
}

int cmd_check_free(const Args& a, Json& body) {
  const WordSet s = build_set(a.set, a.L);
  const auto k = static_cast<std::uint32_t>(a.k);
  body["k"] = k;
  body["L"] = a.L;
  if (a.strong) {
    const auto r = is_strongly_k_product_free(s, k, a.L, a.workers);
    body["strong"] = true;
    body["ok"] = r.ok;
    body["verified_to"] = r.verified_to;
    if (r.failing) body["failing"] = *r.failing;
    body["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    return r.ok ? kOk : kVerificationFailed;
  }
  const auto r = is_k_product_free(s, k, a.L, a.workers);
  body["strong"] = false;
  body["ok"] = r.ok;
  body["verified_to"] = r.verified_to;
  body["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return r.ok ? kOk : kVerificationFailed;
}

int cmd_residues(const Args& a, Json& body) {
  const WordSet s = build_set(a.set, a.L);
  const auto k = static_cast<std::uint32_t>(a.k);
  const auto r = residue_classes(s, k, a.L, a.workers);
  body["k"] = k;
  body["L"] = a.L;
  Json classes = Json::array();
  for (std::uint32_t i = 0; i < k; ++i) {
    Json c;
    c["i"] = i;
    c["empty_word"] = r.empty_word[i];
    std::vector<std::uint64_t> found_counts, unknown_counts;
    std::uint64_t total = 0;
    for (std::uint32_t n = 1; n <= a.L; ++n) {
      found_counts.push_back(r.found[i].layer_count(n));
      unknown_counts.push_back(r.unknown[i].layer_count(n));
      total += found_counts.back();
    }
    c["found_counts"] = found_counts;
    c["unknown_counts"] = unknown_counts;
    if (total <= a.max_list) c["found"] = words_array(r.found[i].members(a.L));
    classes.push_back(std::move(c));
  }
  body["classes"] = std::move(classes);
  return kOk;
}

int cmd_steeple(const Args& a, Json& body) {
  const Rational eps = parse_eps(a.eps);
  if (a.mode == "coverage") {
    if (a.set.a == 0) throw InvalidArgument("--a is required for coverage");
    const auto cb = coverage_bound(a.set.a, a.w_length, eps);
    body["checks"] = cb.checks;
    body["n"] = cb.n;
    if (a.trials > 0) {
      if (!a.seed) throw InvalidArgument("--seed is required for the simulation");
      const Word w(a.set.a, a.w_length, 0);
      const auto misses = simulate_spelling_checks(w, cb.checks, a.trials, *a.seed);
      body["simulation"] = {{"word", w.to_string()}, {"trials", a.trials}, {"misses", misses}};
    }
    return kOk;
  }
  if (a.mode != "capture") throw InvalidArgument("unknown steeple mode '" + a.mode + "'");
  Steeplechase s = capture(build_set(a.set, a.L), eps, a.L);
  if (a.tight) s = make_tight(s);
  if (a.spread) s = make_spread(s);
  const auto errors = validate(s);
  body["steeplechase"] = to_json(s);
  body["errors"] = errors;
  return errors.empty() ? kOk : kVerificationFailed;
}

std::optional<fg::Subsemigroup> group_restriction(std::uint32_t alphabet, const Args& a) {
  if (a.alpha.empty() && a.beta.empty()) return std::nullopt;
  if (a.alpha.empty() || a.beta.empty()) throw InvalidArgument("--alpha and --beta go together");
  return fg::Subsemigroup(parse_signed_letter(alphabet, a.alpha, "--alpha"), parse_signed_letter(alphabet, a.beta, "--beta"));
}

fg::GroupSet build_group_set(const Args& a) {
  fg::GroupSet s;
  if (!a.set.file.empty()) {
    s = group_set_from_json(read_json_file(a.set.file));
  } else if (!a.set.labels.empty()) {
    if (a.set.m == 0) throw InvalidArgument("--m is required with --labels");
    const auto alphabet = static_cast<std::uint32_t>(a.set.labels.size());
    s = fg::GroupSet::labeled(alphabet, fg::GroupLabeling(a.set.m, a.set.labels, a.set.targets));
  } else if (!a.set.words.empty()) {
    if (a.set.a == 0) throw InvalidArgument("--a is required with --words");
    std::vector<fg::ReducedWord> words;
    for (const auto& w : a.set.words) words.push_back(fg::ReducedWord::parse(a.set.a, w));
    s = fg::GroupSet::explicit_words(a.set.a, std::move(words));
  } else {
    throw InvalidArgument("a set is required: --set, --labels or --words");
  }
  if (auto g = group_restriction(s.alphabet_size, a)) s.restrict_to = g;
  return s;
}

int cmd_fg_reduce(const Args& a, Json& body) {
  if (a.set.a == 0) throw InvalidArgument("--a is required");
  const auto letters = fg::parse_letters(a.set.a, a.word);
  const auto r = fg::reduce(a.set.a, letters);
  body["reduced"] = r.to_string();
  body["length"] = r.length();
  body["mu"] = rational_json(fg::group_mu(r));
  return kOk;
}

int cmd_fg_density(const Args& a, Json& body) {
  if (a.set.m == 0 || a.set.labels.empty()) throw InvalidArgument("--m and --labels are required");
  const auto alphabet = static_cast<std::uint32_t>(a.set.labels.size());
  const fg::GroupLabeling lab(a.set.m, a.set.labels, a.set.targets);
  const auto g = group_restriction(alphabet, a);
  body["n"] = a.n;
  body["count"] = fg::group_layer_count(alphabet, lab, g, a.n).str();
  const Rational d = fg::group_layer_density(alphabet, lab, g, a.n);
  body["density"] = rational_json(d);
  body["decimal"] = to_decimal(d, 15);
  return kOk;
}

int cmd_fg_check_free(const Args& a, Json& body) {
  const fg::GroupSet s = build_group_set(a);
  const auto k = static_cast<std::uint32_t>(a.k);
  const auto r = fg::group_is_k_product_free(s, k, a.L);
  body["set"] = to_json(s);
  body["k"] = k;
  body["ok"] = r.ok;
  body["length_cap"] = r.length_cap;
  body["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return r.ok ? kOk : kVerificationFailed;
}

int cmd_fg_cone(const Args& a, Json& body) {
  if (a.set.a == 0) throw InvalidArgument("--a is required");
  const auto g = group_restriction(a.set.a, a);
  if (!g) throw InvalidArgument("--alpha and --beta are required");
  std::vector<fg::ReducedWord> c;
  for (const auto& w : a.set.words) c.push_back(fg::ReducedWord::parse(a.set.a, w));
  const auto r = fg::cone_bound_check(c, *g, a.n);
  body["n"] = a.n;
  body["lhs"] = rational_json(r.lhs);
  body["rhs"] = rational_json(r.rhs);
  body["holds"] = r.holds;
  return r.holds ? kOk : kVerificationFailed;
}

int cmd_search(const Args& a, Json& body) {
  if (a.mode == "certify") {
    const WordSet s = build_set(a.set, a.L);
    const std::uint64_t rho = a.rho ? a.rho : arith::rho(a.k);
    body["containment"] = to_json(certify_containment(s, rho));
    return kOk;
  }
  const SearchInstance inst(a.set.a ? a.set.a : 2, static_cast<std::uint32_t>(a.k), a.L);
  SearchResult r;
  if (a.mode == "exact") {
    ExactOptions o;
    o.workers = a.workers;
    o.exhaustive_cap = a.exhaustive_cap;
    o.branch_and_bound_cap = a.bnb_cap;
    o.log_bounds = !a.log.empty();
    r = solve_exact(inst, o);
  } else if (a.mode == "heuristic") {
    if (!a.seed) throw InvalidArgument("--seed is required for heuristic search");
    HeuristicOptions o;
    o.seed = *a.seed;
    o.budget = a.budget;
    o.warm_start = !a.no_warm_start;
    r = heuristic_search(inst, o);
  } else {
    throw InvalidArgument("unknown search mode '" + a.mode + "'");
  }
  if (!a.log.empty()) {
    std::ostringstream log;
    for (const auto& line : r.bound_log) log << line << '\n';
    if (r.bound_log_truncated) log << "truncated\n";
    write_report(log.str(), a.log, std::cout);
  }
  body["result"] = to_json(r);
  return kOk;
}

int cmd_suite(const Args& a, Json& body, std::ostream& out) {
  SuiteOptions o;
  o.quick = a.quick;
  o.workers = a.workers;
  if (a.seed) o.seed = *a.seed;
  bool all = true;
  Json rows = Json::array();
  run_suite(o, [&](const CriterionResult& r) {
    out << format_line(r) << std::endl;
    all = all && r.passed;
    rows.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
  });
  body["criteria"] = std::move(rows);
  body["passed"] = all;
  return all ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Product-free sets in free semigroups: constructions, checks and searches"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kVersion);

  Args a;
  a.workers = default_workers();
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", a.out, "write the report to this file");
    sub->add_option("--workers", a.workers, "worker threads (default from PFREE_WORKERS)");
  };

  auto* rho = app.add_subcommand("rho", "rho(k), the least integer not dividing k - 1");
  rho->add_option("--k", a.k)->required();

  auto* aseq = app.add_subcommand("aseq", "construct and verify an A-sequence");
  aseq->add_option("--k", a.k);
  aseq->add_option("--in", a.in, "verify this JSON sequence instead of constructing one");

  auto* density = app.add_subcommand("density", "layer, interval, window or subtree densities");
  add_set_options(density, a.set);
  density->add_option("--mode", a.mode)->check(CLI::IsMember({"layer", "interval", "window", "subtree"}))->required();
  density->add_option("--lo", a.lo)->capture_default_str();
  density->add_option("--hi", a.hi)->capture_default_str();
  density->add_option("--window", a.window)->capture_default_str();
  density->add_option("--max-n", a.max_n)->capture_default_str();
  density->add_option("--depth", a.depth)->capture_default_str();
  density->add_option("--format", a.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* chain = app.add_subcommand("chain", "Markov chain of label sums");
  add_set_options(chain, a.set);

  auto* check = app.add_subcommand("check-free", "k-product-freeness with a witness on failure");
  add_set_options(check, a.set);
  check->add_option("--k", a.k)->required();
  check->add_option("--L", a.L)->required();
  check->add_flag("--strong", a.strong, "check l-product-freeness for every 2 <= l <= k");

  auto* residues = app.add_subcommand("residues", "the classes T_i of a set");
  add_set_options(residues, a.set);
  residues->add_option("--k", a.k)->required();
  residues->add_option("--L", a.L)->required();
  residues->add_option("--max-list", a.max_list, "list members only below this count")->capture_default_str();

  auto* steeple = app.add_subcommand("steeple", "headcount capture or the coverage bound");
  add_set_options(steeple, a.set);
  steeple->add_option("--mode", a.mode)->check(CLI::IsMember({"capture", "coverage"}))->required();
  steeple->add_option("--eps", a.eps)->capture_default_str();
  steeple->add_option("--L", a.L)->capture_default_str();
  steeple->add_flag("--spread", a.spread);
  steeple->add_flag("--tight", a.tight);
  steeple->add_option("--w-length", a.w_length)->capture_default_str();
  steeple->add_option("--trials", a.trials)->capture_default_str();
  steeple->add_option("--seed", a.seed);

  auto* fg_reduce = app.add_subcommand("fg-reduce", "free reduction of a signed word");
  fg_reduce->add_option("--a", a.set.a)->required();
  fg_reduce->add_option("--word", a.word)->required();

  auto* fg_density = app.add_subcommand("fg-density", "layer density of a labeled set in the free group");
  add_set_options(fg_density, a.set);
  fg_density->add_option("--n", a.n)->required();
  fg_density->add_option("--alpha", a.alpha);
  fg_density->add_option("--beta", a.beta);

  auto* fg_check = app.add_subcommand("fg-check-free", "bounded k-product-freeness in the free group");
  add_set_options(fg_check, a.set);
  fg_check->add_option("--k", a.k)->required();
  fg_check->add_option("--L", a.L)->required();
  fg_check->add_option("--alpha", a.alpha);
  fg_check->add_option("--beta", a.beta);

  auto* fg_cone = app.add_subcommand("fg-cone", "cone measure bound for a prefix-free set in F^{alpha beta}");
  add_set_options(fg_cone, a.set);
  fg_cone->add_option("--alpha", a.alpha)->required();
  fg_cone->add_option("--beta", a.beta)->required();
  fg_cone->add_option("--n", a.n)->required();

  auto* search = app.add_subcommand("search", "extremal k-product-free sets");
  add_set_options(search, a.set);
  search->add_option("--mode", a.mode)->check(CLI::IsMember({"exact", "heuristic", "certify"}))->required();
  search->add_option("--k", a.k)->capture_default_str();
  search->add_option("--L", a.L)->capture_default_str();
  search->add_option("--seed", a.seed);
  search->add_option("--budget", a.budget)->capture_default_str();
  search->add_flag("--no-warm-start", a.no_warm_start);
  search->add_option("--rho", a.rho, "modulus for certify (default rho(k))");
  search->add_option("--exhaustive-cap", a.exhaustive_cap)->capture_default_str();
  search->add_option("--bnb-cap", a.bnb_cap)->capture_default_str();
  search->add_option("--log", a.log, "write the pruning log to this file");

  auto* suite = app.add_subcommand("suite", "run the acceptance battery");
  suite->add_flag("--quick", a.quick);
  suite->add_option("--seed", a.seed);

  for (auto* sub : {rho, aseq, density, chain, check, residues, steeple, fg_reduce, fg_density, fg_check, fg_cone, search, suite})
    common(sub);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    Json body;
    std::string csv;
    int code = kOk;
    if (name == "rho") code = cmd_rho(a, body);
    else if (name == "aseq") code = cmd_aseq(a, body);
    else if (name == "density") code = cmd_density(a, body, csv);
    else if (name == "chain") code = cmd_chain(a, body);
    else if (name == "check-free") code = cmd_check_free(a, body);
    else if (name == "residues") code = cmd_residues(a, body);
    else if (name == "steeple") code = cmd_steeple(a, body);
    else if (name == "fg-reduce") code = cmd_fg_reduce(a, body);
    else if (name == "fg-density") code = cmd_fg_density(a, body);
    else if (name == "fg-check-free") code = cmd_fg_check_free(a, body);
    else if (name == "fg-cone") code = cmd_fg_cone(a, body);
    else if (name == "search") code = cmd_search(a, body);
    else if (name == "suite") code = cmd_suite(a, body, out);
    if (name == "suite" && a.out.empty()) return code;
    write_report(csv.empty() ? dump(std::move(body), config_of(*sub)) : csv, a.out, out);
    return code;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace pfree::cli
