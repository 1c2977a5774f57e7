#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pfree {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

// base^exp as an exact integer.
BigInt big_pow(std::uint64_t base, std::uint64_t exp);

// "p/q" (or "p" when q == 1).
std::string to_string(const Rational& q);

// Parses "p/q", "p" or a plain decimal such as "0.25".
Rational parse_rational(const std::string& text);

// Decimal rendering with `digits` fractional digits, rounded to nearest.
std::string to_decimal(const Rational& q, int digits);

}  // namespace pfree
