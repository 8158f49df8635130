#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace batlb {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational, always normalized (lowest terms, positive denominator).
using Rational = boost::multiprecision::cpp_rational;

/// Renders as "p/q" even when q == 1, so consumers never see a decimal.
std::string to_string(const Rational& value);

/// Accepts "p/q" or a bare integer "p".
Rational parse_rational(std::string_view text);

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace batlb
