#pragma once

#include <string>

#include "json.hpp"
#include "pfree/arith.hpp"
#include "pfree/freegroup.hpp"
#include "pfree/search.hpp"
#include "pfree/steeple.hpp"
#include "pfree/wordsets.hpp"

namespace pfree {

using Json = nlohmann::ordered_json;

std::string base64_encode(const std::string& bytes);
std::string base64_decode(const std::string& text);

// Bitmap bits packed little-endian into ceil(size / 8) bytes, then base64.
std::string encode_bitmap(const Bitmap& b);
Bitmap decode_bitmap(std::uint64_t size, const std::string& text);

// [numerator, denominator]; entries outside int64 are decimal strings.
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const arith::ASequence& seq);
arith::ASequence asequence_from_json(const Json& j);

// Labeled sets keep their rule; other sets are written as layers 1..L.
Json to_json(const WordSet& s, std::uint32_t L);
WordSet wordset_from_json(const Json& j);

Json to_json(const Witness& w);
Json to_json(const Steeplechase& s);

Json to_json(const fg::GroupSet& s);
fg::GroupSet group_set_from_json(const Json& j);
Json to_json(const fg::GroupWitness& w);

Json to_json(const ContainmentReport& r);
Json to_json(const SearchResult& r);

}  // namespace pfree
