#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "corrpoly/inequality.hpp"
#include "corrpoly/rational.hpp"

namespace corrpoly {

struct VerificationIssue {
  enum class Kind {
    /// Some vertex violates the inequality; `witness` is that vertex.
    Invalid,
    /// Valid, but its tight vertices do not span a facet.
    NotFacetDefining,
    /// Identical to facet `witness` after canonicalization.
    Duplicate,
  };
  Kind kind;
  std::size_t facet = 0;
  std::size_t witness = 0;
};

struct VerificationReport {
  /// Affine dimension of conv(vertices).
  std::size_t polytope_dimension = 0;
  std::vector<VerificationIssue> issues;

  bool ok() const { return issues.empty(); }
  std::size_t count(VerificationIssue::Kind k) const;
};

/// Checks validity, facet-defining tightness and pairwise distinctness of
/// `facets` against the vertex set. Never throws on bad facets; every
/// failure lands in the report.
VerificationReport verify_h_representation(const std::vector<std::vector<int>>& vertices,
                                           std::span<const Inequality> facets);
VerificationReport verify_h_representation(std::span<const Point> vertices,
                                           std::span<const Inequality> facets);

}  // namespace corrpoly
