#ifndef SEARCHLAB_RATIONAL_H
#define SEARCHLAB_RATIONAL_H

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace searchlab {

// Exact arithmetic used by every closed-form computation and enumeration
// oracle. Equality-checked results never pass through floating point;
// decimals are rendering-only.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Fixed-significant-digit decimal rendering (round half away from zero),
// e.g. 6 digits: 24576/1365 -> "18.0044". Trailing zeros are kept so a
// given value always renders to identical bytes.
std::string to_decimal(const Rational& value, int significant_digits = 6);

// Integer ceiling of a rational.
BigInt ceil_rational(const Rational& value);

// Exact fraction rendering: "3/2", or just "3" for integers.
std::string to_fraction(const Rational& value);

// Parses "3", "-3/2", "0.25", or "2.5e-3" into an exact rational.
// Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

}  // namespace searchlab

#endif
