#include "corrpoly/verify.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "corrpoly/errors.hpp"
#include "corrpoly/linalg.hpp"

namespace corrpoly {

std::size_t VerificationReport::count(VerificationIssue::Kind k) const {
  return static_cast<std::size_t>(
      std::count_if(issues.begin(), issues.end(), [k](const auto& i) { return i.kind == k; }));
}

namespace {

// Homogenized rows (s, s*v) scaled to integers, s > 0.
using Rows = std::vector<std::vector<std::int64_t>>;

std::size_t exact_rank(const Rows& rows) {
  RationalMatrix m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  return rank(std::move(m));
}

VerificationReport verify_rows(const Rows& rows, std::span<const Inequality> facets) {
  VerificationReport report;
  if (rows.empty()) throw Error(Errc::EmptyInput, "no vertices");
  const std::size_t width = rows.front().size();
  const std::size_t full_rank = exact_rank(rows);
  report.polytope_dimension = full_rank - 1;

  std::vector<std::vector<VerificationIssue>> found(facets.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t fi = 0; fi < static_cast<std::int64_t>(facets.size()); ++fi) {
    const auto& q = facets[fi];
    auto& out = found[fi];
    if (q.coeffs.size() + 1 != width) {
      out.push_back({VerificationIssue::Kind::Invalid, static_cast<std::size_t>(fi), 0});
      continue;
    }
    Rows tight;
    bool valid = true;
    for (std::size_t v = 0; v < rows.size(); ++v) {
      // s * (bound - coeffs . v)
      __int128 slack = static_cast<__int128>(q.bound) * rows[v][0];
      for (std::size_t i = 0; i < q.coeffs.size(); ++i)
        slack -= static_cast<__int128>(q.coeffs[i]) * rows[v][i + 1];
      if (slack < 0) {
        out.push_back({VerificationIssue::Kind::Invalid, static_cast<std::size_t>(fi), v});
        valid = false;
        break;
      }
      if (slack == 0) tight.push_back(rows[v]);
    }
    if (!valid) continue;
    std::size_t r = rank_mod_p(tight);
    if (r + 1 != full_rank) r = exact_rank(tight);
    if (r + 1 != full_rank)
      out.push_back({VerificationIssue::Kind::NotFacetDefining, static_cast<std::size_t>(fi), 0});
  }
  for (auto& f : found) report.issues.insert(report.issues.end(), f.begin(), f.end());

  std::map<Inequality, std::size_t, FileOrderLess> first_seen;
  for (std::size_t fi = 0; fi < facets.size(); ++fi) {
    Inequality c;
    try {
      c = canonicalize(facets[fi]);
    } catch (const Error&) {
      report.issues.push_back({VerificationIssue::Kind::NotFacetDefining, fi, 0});
      continue;
    }
    auto [it, inserted] = first_seen.emplace(std::move(c), fi);
    if (!inserted) report.issues.push_back({VerificationIssue::Kind::Duplicate, fi, it->second});
  }
  std::stable_sort(report.issues.begin(), report.issues.end(),
                   [](const auto& a, const auto& b) { return a.facet < b.facet; });
  return report;
}

std::int64_t narrow(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw Error(Errc::Overflow, "vertex coordinate too large");
  return static_cast<std::int64_t>(x);
}

}  // namespace

VerificationReport verify_h_representation(const std::vector<std::vector<int>>& vertices,
                                           std::span<const Inequality> facets) {
  Rows rows;
  rows.reserve(vertices.size());
  for (const auto& v : vertices) {
    std::vector<std::int64_t> r{1};
    r.insert(r.end(), v.begin(), v.end());
    rows.push_back(std::move(r));
  }
  return verify_rows(rows, facets);
}

VerificationReport verify_h_representation(std::span<const Point> vertices,
                                           std::span<const Inequality> facets) {
  Rows rows;
  for (const auto& v : vertices) {
    std::vector<Rational> h{Rational(1)};
    h.insert(h.end(), v.begin(), v.end());
    std::vector<std::int64_t> r;
    for (const auto& x : integer_row(h)) r.push_back(narrow(x));
    rows.push_back(std::move(r));
  }
  return verify_rows(rows, facets);
}

}  // namespace corrpoly
