#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace forestsmith {

/// Exact node counts. Composed trees are stored with shared substructure, so
/// their expanded size can exceed 64 bits.
using BigCount = boost::multiprecision::cpp_int;

/// Exact probabilities and error values (weight / total).
using Rational = boost::multiprecision::cpp_rational;

BigCount binomial(std::int64_t n, std::int64_t k);
BigCount power(const BigCount& base, unsigned exponent);

/// Always "p/q", including "0/1" and "3/1".
std::string fraction_string(const Rational& value);

/// Informational decimal rendering, never used for comparisons.
std::string decimal_string(const Rational& value, int significant_digits = 10);

/// Parses "p/q" or a bare integer "p".
Rational parse_fraction(const std::string& text);

}  // namespace forestsmith
