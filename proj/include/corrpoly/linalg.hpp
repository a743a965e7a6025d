#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "corrpoly/rational.hpp"

namespace corrpoly {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// In-place reduced row echelon form; returns the rank. Zero rows are dropped.
std::size_t reduce_rows(RationalMatrix& rows);

std::size_t rank(RationalMatrix rows);

/// Smallest positive integer multiple of a rational row (gcd 1, integral).
std::vector<BigInt> integer_row(const std::vector<Rational>& row);

}  // namespace corrpoly

namespace corrpoly {

/// Rank over GF(2^61 - 1). Never exceeds the rational rank.
std::size_t rank_mod_p(const std::vector<std::vector<std::int64_t>>& rows);

}  // namespace corrpoly
