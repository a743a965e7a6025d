#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corrpoly/rational.hpp"

namespace corrpoly {

/// coeffs . p <= bound over a scenario basis, integer and gcd-reduced once
/// canonicalized. Equality is integer identity.
struct Inequality {
  std::vector<std::int64_t> coeffs;
  std::int64_t bound = 0;

  bool operator==(const Inequality&) const = default;
};

/// File order: bound first, then the coefficient vector, lexicographically.
std::strong_ordering file_order(const Inequality& a, const Inequality& b);

/// Orbit-representative order: coefficient vector first, then the bound.
std::strong_ordering coeff_order(const Inequality& a, const Inequality& b);

struct FileOrderLess {
  bool operator()(const Inequality& a, const Inequality& b) const { return file_order(a, b) < 0; }
};
struct CoeffOrderLess {
  bool operator()(const Inequality& a, const Inequality& b) const { return coeff_order(a, b) < 0; }
};

struct InequalityHash {
  std::size_t operator()(const Inequality& q) const noexcept;
};

/// Divides coefficients and bound by their (positive) gcd; orientation is
/// kept. Throws ZeroInequality on an all-zero coefficient vector.
Inequality canonicalize(Inequality q);

/// Equation form (coeffs . p == bound): gcd-reduced with the first nonzero
/// coefficient positive.
Inequality canonicalize_equation(Inequality q);

Rational lhs(const Inequality& q, std::span<const Rational> p);
std::int64_t lhs(const Inequality& q, std::span<const int> vertex);
double lhs(const Inequality& q, std::span<const double> p);

inline bool satisfied_by(const Inequality& q, std::span<const int> vertex) {
  return lhs(q, vertex) <= q.bound;
}

/// "<bound> <c1> ... <cN>"
std::string to_line(const Inequality& q);

/// Human readable, e.g. "P(A1) + P(B1) - P(A1B1) <= 1" given basis labels.
std::string pretty(const Inequality& q, std::span<const std::string> labels);

/// Polytope in H-form: facets plus any implicit equations.
struct HRepresentation {
  std::size_t dimension = 0;
  std::vector<Inequality> facets;
  std::vector<Inequality> equations;
};

}  // namespace corrpoly
