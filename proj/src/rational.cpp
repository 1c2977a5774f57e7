#include "pfree/rational.hpp"

#include <stdexcept>

#include "pfree/words.hpp"

namespace pfree {

BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp > 0) b *= b;
  }
  return result;
}

std::string to_string(const Rational& q) {
  const BigInt num = numerator_of(q);
  const BigInt den = denominator_of(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

// Decimal integer with optional sign. cpp_int would read a leading 0 as octal.
BigInt parse_integer(std::string text, const std::string& whole) {
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.erase(0, 1);
  }
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidArgument("malformed rational '" + whole + "'");
  const auto nz = text.find_first_not_of('0');
  BigInt v = nz == std::string::npos ? BigInt(0) : BigInt(text.substr(nz));
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw InvalidArgument("empty rational");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const BigInt num = parse_integer(text.substr(0, slash), text);
    const BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw InvalidArgument("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    std::string head = text.substr(0, dot);
    if (head.empty() || head == "-" || head == "+") head += "0";
    if (frac.empty()) throw InvalidArgument("malformed rational '" + text + "'");
    const BigInt num = parse_integer(head + frac, text);
    return Rational(num, big_pow(10, frac.size()));
  }
  return Rational(parse_integer(text, text));
}

std::string to_decimal(const Rational& q, int digits) {
  const bool negative = q < 0;
  Rational a = negative ? Rational(-q) : q;
  BigInt scale = big_pow(10, static_cast<std::uint64_t>(digits));
  Rational scaled = a * Rational(scale);
  BigInt num = numerator_of(scaled);
  BigInt den = denominator_of(scaled);
  BigInt rounded = (2 * num + den) / (2 * den);
  BigInt int_part = rounded / scale;
  BigInt frac_part = rounded % scale;
  std::string frac = frac_part.str();
  if (frac.size() < static_cast<std::size_t>(digits)) frac.insert(0, digits - frac.size(), '0');
  std::string out = negative && rounded != 0 ? "-" : "";
  out += int_part.str();
  if (digits > 0) out += "." + frac;
  return out;
}

}  // namespace pfree
