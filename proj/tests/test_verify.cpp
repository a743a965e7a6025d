#include <doctest.h>

#include "corrpoly/double_description.hpp"
#include "corrpoly/io.hpp"
#include "corrpoly/presets.hpp"
#include "corrpoly/verify.hpp"
#include "support.hpp"

using namespace corrpoly;
using Kind = VerificationIssue::Kind;

TEST_CASE("CH fixture passes") {
  auto rows = enumerate_vertex_rows(preset("ch"));
  auto report = verify_h_representation(rows, testing::ch_fixture());
  CHECK(report.ok());
  CHECK(report.polytope_dimension == 8);
}

TEST_CASE("valid but not facet-defining") {
  auto ch = preset("ch");
  auto rows = enumerate_vertex_rows(ch);
  std::vector<Inequality> q{parse_expression(ch, "P(A1) + P(B1) <= 2")};
  auto report = verify_h_representation(rows, q);
  REQUIRE(report.issues.size() == 1);
  CHECK(report.issues[0].kind == Kind::NotFacetDefining);
  CHECK(report.count(Kind::Invalid) == 0);
}

TEST_CASE("invalid inequality names a violating vertex") {
  auto ch = preset("ch");
  auto rows = enumerate_vertex_rows(ch);
  std::vector<Inequality> q{parse_expression(ch, "P(A1B1) - P(A1B2) <= 0")};
  auto report = verify_h_representation(rows, q);
  REQUIRE(report.issues.size() == 1);
  CHECK(report.issues[0].kind == Kind::Invalid);
  const auto& w = rows[report.issues[0].witness];
  CHECK(lhs(q[0], w) > q[0].bound);
  // t(A1) = t(B1) = 1, t(B2) = 0 violates it.
  auto t = vertex_row(ch, {1, 0, 1, 0});
  CHECK(lhs(q[0], t) > 0);
}

TEST_CASE("duplicates are flagged against the first copy") {
  auto rows = enumerate_vertex_rows(preset("ch"));
  auto f = testing::ch_fixture();
  f.push_back(f[3]);
  auto report = verify_h_representation(rows, f);
  REQUIRE(report.count(Kind::Duplicate) == 1);
  for (const auto& i : report.issues)
    if (i.kind == Kind::Duplicate) CHECK(f[i.witness] == f[i.facet]);
}

TEST_CASE("rational vertices path agrees") {
  auto vs = enumerate_vertices(preset("bell-wigner"));
  auto h = facet_enumeration(std::span<const Point>(vs));
  CHECK(verify_h_representation(std::span<const Point>(vs), h.facets).ok());
}

TEST_CASE("flat vertex sets give their affine dimension") {
  std::vector<std::vector<int>> v{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto h = facet_enumeration(v);
  auto report = verify_h_representation(v, h.facets);
  CHECK(report.polytope_dimension == 2);
  CHECK(report.ok());
}
