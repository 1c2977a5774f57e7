#include "pfree/serialize.hpp"

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <algorithm>
#include <limits>

namespace pfree {

namespace {

namespace it = boost::archive::iterators;

Json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw InvalidArgument("expected an integer");
}

std::vector<std::uint32_t> u32_list(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  return j.at(key).get<std::vector<std::uint32_t>>();
}

Json labeling_json(std::uint32_t m, const std::vector<std::uint32_t>& labels, const std::vector<std::uint32_t>& targets) {
  Json j;
  j["m"] = m;
  j["labels"] = labels;
  j["targets"] = targets;
  return j;
}

Json words_json(const std::vector<Word>& words) {
  Json arr = Json::array();
  for (const auto& w : words) arr.push_back(w.to_string());
  return arr;
}

}  // namespace

std::string base64_encode(const std::string& bytes) {
  using Enc = it::base64_from_binary<it::transform_width<std::string::const_iterator, 6, 8>>;
  std::string out(Enc(bytes.begin()), Enc(bytes.end()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

std::string base64_decode(const std::string& text) {
  using Dec = it::transform_width<it::binary_from_base64<std::string::const_iterator>, 8, 6>;
  if (text.size() % 4 != 0) throw InvalidArgument("malformed base64");
  std::string body = text;
  std::size_t pad = 0;
  while (pad < body.size() && body[body.size() - 1 - pad] == '=') ++pad;
  if (pad > 2) throw InvalidArgument("malformed base64");
  std::replace(body.end() - static_cast<std::ptrdiff_t>(pad), body.end(), '=', 'A');
  try {
    std::string out(Dec(body.begin()), Dec(body.end()));
    out.resize(out.size() - pad);
    return out;
  } catch (const std::exception&) {
    throw InvalidArgument("malformed base64");
  }
}

std::string encode_bitmap(const Bitmap& b) {
  std::string bytes((b.size() + 7) / 8, '\0');
  const auto& blocks = b.blocks();
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = static_cast<char>((blocks[i / 8] >> (8 * (i % 8))) & 0xFF);
  return base64_encode(bytes);
}

Bitmap decode_bitmap(std::uint64_t size, const std::string& text) {
  const std::string bytes = base64_decode(text);
  if (bytes.size() != (size + 7) / 8) throw InvalidArgument("bitmap has the wrong byte length");
  std::vector<std::uint64_t> blocks((size + 63) / 64, 0);
  for (std::size_t i = 0; i < bytes.size(); ++i)
    blocks[i / 8] |= std::uint64_t{static_cast<unsigned char>(bytes[i])} << (8 * (i % 8));
  if (size % 64 != 0 && !blocks.empty() && (blocks.back() >> (size % 64)) != 0)
    throw InvalidArgument("bitmap has bits past its size");
  return Bitmap::from_blocks(size, std::move(blocks));
}

Json rational_json(const Rational& q) { return Json::array({big_json(numerator_of(q)), big_json(denominator_of(q))}); }

Rational rational_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2) {
    const BigInt den = big_from_json(j[1]);
    if (den == 0) throw InvalidArgument("zero denominator");
    return Rational(big_from_json(j[0]), den);
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw InvalidArgument("expected a rational");
}

Json to_json(const arith::ASequence& seq) {
  Json j;
  j["k"] = seq.k;
  Json sets = Json::array();
  for (const auto& s : seq.sets) sets.push_back(s.values());
  j["sets"] = std::move(sets);
  j["widths"] = seq.widths;
  return j;
}

arith::ASequence asequence_from_json(const Json& j) {
  arith::ASequence seq;
  try {
    seq.k = j.at("k").get<std::uint64_t>();
    for (const auto& s : j.at("sets")) seq.sets.push_back(arith::ProgressionSet::from_values(s.get<std::vector<std::uint64_t>>()));
    seq.widths = j.at("widths").get<std::vector<std::vector<std::uint64_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed A-sequence JSON: ") + e.what());
  }
  arith::validate(seq);
  return seq;
}

Json to_json(const WordSet& s, std::uint32_t L) {
  Json j;
  j["alphabet"] = s.alphabet_size();
  if (const Labeling* lab = s.labeling()) {
    j["repr"] = "labeled";
    j.update(labeling_json(lab->modulus, lab->labels, lab->targets));
    return j;
  }
  j["repr"] = s.kind() == WordSet::Kind::Predicate ? "predicate" : "explicit";
  j["L"] = L;
  Json layers = Json::array();
  for (std::uint32_t n = 1; n <= L; ++n) layers.push_back(encode_bitmap(s.layer(n)));
  j["layers"] = std::move(layers);
  return j;
}

WordSet wordset_from_json(const Json& j) {
  try {
    const auto a = j.at("alphabet").get<std::uint32_t>();
    const auto repr = j.at("repr").get<std::string>();
    if (repr == "labeled")
      return WordSet::labeled(a, Labeling(j.at("m").get<std::uint32_t>(), u32_list(j, "labels"), u32_list(j, "targets")));
    if (repr != "explicit" && repr != "predicate") throw InvalidArgument("unknown set representation '" + repr + "'");
    const auto L = j.at("L").get<std::uint32_t>();
    const auto& layers = j.at("layers");
    if (layers.size() != L) throw InvalidArgument("expected one layer per length 1..L");
    std::vector<Bitmap> out{Bitmap(1)};
    for (std::uint32_t n = 1; n <= L; ++n) out.push_back(decode_bitmap(layer_size(a, n), layers[n - 1].get<std::string>()));
    return WordSet::explicit_layers(a, std::move(out));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed set JSON: ") + e.what());
  }
}

Json to_json(const Witness& w) {
  Json j;
  j["factors"] = words_json(w.factors);
  j["product"] = w.product.to_string();
  return j;
}

Json to_json(const Steeplechase& s) {
  Json j;
  j["alphabet"] = s.alphabet_size;
  j["epsilon"] = rational_json(s.epsilon);
  j["bound"] = s.bound;
  j["spread"] = s.spread;
  j["tight"] = s.tight;
  j["truncated"] = s.truncated;
  Json stages = Json::array();
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    Json st;
    st["index"] = s.indices[i];
    st["cutoff"] = s.cutoffs[i];
    st["mu"] = rational_json(stage_mu(s.stages[i]));
    st["words"] = words_json(s.stages[i]);
    stages.push_back(std::move(st));
  }
  j["stages"] = std::move(stages);
  return j;
}

Json to_json(const fg::GroupSet& s) {
  Json j;
  j["signed"] = true;
  j["alphabet"] = s.alphabet_size;
  if (s.labeling) {
    j["repr"] = "labeled";
    j.update(labeling_json(s.labeling->modulus, s.labeling->labels, s.labeling->targets));
  } else {
    j["repr"] = "explicit";
    Json words = Json::array();
    for (const auto& w : s.words) words.push_back(w.to_string());
    j["words"] = std::move(words);
  }
  if (s.restrict_to) j["restrict"] = {{"alpha", s.restrict_to->alpha().to_string()}, {"beta", s.restrict_to->beta().to_string()}};
  return j;
}

fg::GroupSet group_set_from_json(const Json& j) {
  try {
    if (!j.value("signed", false)) throw InvalidArgument("group set JSON needs \"signed\": true");
    const auto a = j.at("alphabet").get<std::uint32_t>();
    const auto repr = j.at("repr").get<std::string>();
    fg::GroupSet s;
    if (repr == "labeled") {
      s = fg::GroupSet::labeled(a, fg::GroupLabeling(j.at("m").get<std::uint32_t>(), u32_list(j, "labels"), u32_list(j, "targets")));
    } else if (repr == "explicit") {
      std::vector<fg::ReducedWord> words;
      for (const auto& w : j.at("words")) words.push_back(fg::ReducedWord::parse(a, w.get<std::string>()));
      s = fg::GroupSet::explicit_words(a, std::move(words));
    } else {
      throw InvalidArgument("unknown set representation '" + repr + "'");
    }
    if (j.contains("restrict")) {
      const auto alpha = fg::parse_letters(a, j["restrict"].at("alpha").get<std::string>());
      const auto beta = fg::parse_letters(a, j["restrict"].at("beta").get<std::string>());
      if (alpha.size() != 1 || beta.size() != 1) throw InvalidArgument("restrict needs single letters");
      s.restrict_to = fg::Subsemigroup(alpha[0], beta[0]);
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed group set JSON: ") + e.what());
  }
}

Json to_json(const fg::GroupWitness& w) {
  Json j;
  Json factors = Json::array();
  for (const auto& f : w.factors) factors.push_back(f.to_string());
  j["factors"] = std::move(factors);
  j["product"] = w.product.to_string();
  return j;
}

Json to_json(const ContainmentReport& r) {
  Json j;
  j["rho"] = r.rho;
  j["tried"] = r.tried;
  Json found = Json::array();
  for (const auto& l : r.containing) found.push_back(labeling_json(l.modulus, l.labels, l.targets));
  j["containing"] = std::move(found);
  return j;
}

Json to_json(const SearchResult& r) {
  Json j;
  j["instance"] = {{"alphabet", r.instance.alphabet_size}, {"k", r.instance.k}, {"L", r.instance.L}};
  j["value"] = rational_json(r.value);
  j["value_decimal"] = to_decimal(r.value, 15);
  j["certificate"] = to_string(r.certificate);
  j["nodes"] = r.nodes;
  if (r.seed) j["seed"] = *r.seed;
  j["members"] = words_json(r.members);
  j["containment"] = to_json(r.containment);
  j["caveat"] = r.caveat;
  if (!r.bound_log.empty()) j["bound_log_truncated"] = r.bound_log_truncated;
  return j;
}

}  // namespace pfree
