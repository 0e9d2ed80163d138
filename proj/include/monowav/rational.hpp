#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace monowav {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q" into an exact rational. Throws std::invalid_argument on
/// malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" form (reduced, q > 0, always with the slash so round-trips are
/// byte-stable).
std::string rational_str(const Rational& value);

inline double to_double(const Rational& value) { return static_cast<double>(value); }

/// Exact binomial coefficient C(n, k).
BigInt binomial(unsigned n, unsigned k);

}  // namespace monowav
