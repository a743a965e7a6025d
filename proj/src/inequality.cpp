#include "corrpoly/inequality.hpp"

#include <numeric>

#include "corrpoly/errors.hpp"

namespace corrpoly {

std::strong_ordering file_order(const Inequality& a, const Inequality& b) {
  if (auto c = a.bound <=> b.bound; c != 0) return c;
  return a.coeffs <=> b.coeffs;
}

std::strong_ordering coeff_order(const Inequality& a, const Inequality& b) {
  if (auto c = a.coeffs <=> b.coeffs; c != 0) return c;
  return a.bound <=> b.bound;
}

std::size_t InequalityHash::operator()(const Inequality& q) const noexcept {
  std::size_t h = std::hash<std::int64_t>{}(q.bound);
  for (auto c : q.coeffs) h = h * 1000003u ^ std::hash<std::int64_t>{}(c);
  return h;
}

namespace {

std::int64_t common_divisor(const Inequality& q) {
  std::int64_t g = 0;
  for (auto c : q.coeffs) g = std::gcd(g, c);
  if (g == 0) throw Error(Errc::ZeroInequality, "all coefficients are zero");
  return std::gcd(g, q.bound);
}

}  // namespace

Inequality canonicalize(Inequality q) {
  auto g = common_divisor(q);
  if (g != 1) {
    for (auto& c : q.coeffs) c /= g;
    q.bound /= g;
  }
  return q;
}

Inequality canonicalize_equation(Inequality q) {
  q = canonicalize(std::move(q));
  for (auto c : q.coeffs) {
    if (c == 0) continue;
    if (c < 0) {
      for (auto& x : q.coeffs) x = -x;
      q.bound = -q.bound;
    }
    break;
  }
  return q;
}

Rational lhs(const Inequality& q, std::span<const Rational> p) {
  if (p.size() != q.coeffs.size())
    throw Error(Errc::DimensionMismatch, "point and inequality lengths differ");
  Rational sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (q.coeffs[i] != 0) sum += q.coeffs[i] * p[i];
  return sum;
}

std::int64_t lhs(const Inequality& q, std::span<const int> vertex) {
  if (vertex.size() != q.coeffs.size())
    throw Error(Errc::DimensionMismatch, "vertex and inequality lengths differ");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < vertex.size(); ++i) sum += q.coeffs[i] * vertex[i];
  return sum;
}

double lhs(const Inequality& q, std::span<const double> p) {
  if (p.size() != q.coeffs.size())
    throw Error(Errc::DimensionMismatch, "point and inequality lengths differ");
  double sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (q.coeffs[i] != 0) sum += static_cast<double>(q.coeffs[i]) * p[i];
  return sum;
}

std::string to_line(const Inequality& q) {
  std::string out = std::to_string(q.bound);
  for (auto c : q.coeffs) {
    out += ' ';
    out += std::to_string(c);
  }
  return out;
}

std::string pretty(const Inequality& q, std::span<const std::string> labels) {
  std::string out;
  for (std::size_t i = 0; i < q.coeffs.size(); ++i) {
    auto c = q.coeffs[i];
    if (c == 0) continue;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    auto mag = c < 0 ? -c : c;
    if (mag != 1) out += std::to_string(mag);
    out += "P(" + labels[i] + ")";
  }
  if (out.empty()) out = "0";
  return out + " <= " + std::to_string(q.bound);
}

}  // namespace corrpoly
