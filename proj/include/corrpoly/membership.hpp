#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "corrpoly/inequality.hpp"
#include "corrpoly/rational.hpp"

namespace corrpoly {

/// Proof of the membership decision. Inside: convex weights over the vertex
/// list reproducing the point exactly. Outside: an integer inequality valid on
/// every vertex and strictly violated by the point; a facet of the hull when
/// the hull is full-dimensional.
struct MembershipCertificate {
  bool inside = false;
  std::vector<Rational> weights;
  Inequality separator;
};

/// Exact decision by rational simplex (Bland's rule). When the point is
/// inside, the weights maximize the smallest weight, so the centroid comes
/// back uniform and an extreme point comes back as itself.
///
/// Errors: EmptyInput, DimensionMismatch.
MembershipCertificate membership(const Point& point, std::span<const Point> vertices);

/// Independent exact check of a certificate against its claim.
bool certificate_holds(const MembershipCertificate& cert, const Point& point,
                       std::span<const Point> vertices);

}  // namespace corrpoly
