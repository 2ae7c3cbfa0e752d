#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace post {

// Every probability and payoff in the kernel is an exact rational.
// The rule verdicts and theorem oracles test equalities; there is no
// floating point anywhere on a decision path.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Strict parse of "p", "-p", or "p/q" with q > 0 after normalization.
// Decimals, whitespace, and empty strings are rejected (ParseError).
Rational parse_rational(const std::string& text);

// Canonical rendering: "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Approximate decimal rendering for human-readable reports only.
std::string to_decimal(const Rational& r);

double to_double(const Rational& r);

}  // namespace post
