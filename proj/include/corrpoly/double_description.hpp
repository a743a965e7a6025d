#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "corrpoly/inequality.hpp"
#include "corrpoly/rational.hpp"

namespace corrpoly {

enum class InsertionOrder {
  /// Homogenized vertex rows sorted lexicographically.
  Lexicographic,
  /// Greedy: next constraint is the one cutting off the most current rays.
  MaxCutoff,
};

struct DDOptions {
  std::size_t ray_cap = 1'000'000;
  InsertionOrder order = InsertionOrder::Lexicographic;
  /// Fan the (+,-) pair combination out over OpenMP threads. The serial path
  /// is the reference; both produce the same ray set in the same order.
  bool parallel = true;
  /// Recheck every combinatorial adjacency decision with the algebraic rank
  /// test. Quadratic blowup in cost; for tests only.
  bool rank_cross_check = false;
  /// Skip the 64-bit fast path and run on GMP integers from the start.
  bool force_bigint = false;
};

struct DDStats {
  std::size_t constraints = 0;
  std::size_t max_rays = 0;
  std::uint64_t pairs_considered = 0;
  std::uint64_t pairs_adjacent = 0;
  std::uint64_t rank_checks = 0;
  bool used_bigint = false;
};

/// Complete, irredundant H-representation of conv(vertices), sorted in file
/// order. Implicit equations, if the hull is not full-dimensional, come back
/// in reduced echelon form.
///
/// Errors: EmptyInput, DimensionMismatch, ResourceExhausted, Overflow (a
/// facet coefficient does not fit in 64 bits).
HRepresentation facet_enumeration(std::span<const Point> vertices, const DDOptions& opts = {},
                                  DDStats* stats = nullptr);

HRepresentation facet_enumeration(const std::vector<std::vector<int>>& vertices,
                                  const DDOptions& opts = {}, DDStats* stats = nullptr);

}  // namespace corrpoly
