#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace corrpoly {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Exact point in a scenario basis.
using Point = std::vector<Rational>;

/// Parses "3", "-2/5" or a finite decimal such as "0.125" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Nearest rational with denominator at most `max_den` (continued fractions).
Rational rationalize(double x, std::int64_t max_den = 1'000'000'000);

}  // namespace corrpoly
