#include "corrpoly/linalg.hpp"

#include <algorithm>

namespace corrpoly {

std::size_t reduce_rows(RationalMatrix& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[pivot_row]);
    Rational inv = 1 / rows[pivot_row][c];
    for (auto& x : rows[pivot_row]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == pivot_row || rows[r][c] == 0) continue;
      Rational f = rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[pivot_row][k];
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return pivot_row;
}

std::size_t rank(RationalMatrix rows) { return reduce_rows(rows); }

std::vector<BigInt> integer_row(const std::vector<Rational>& row) {
  BigInt l = 1;
  for (const auto& x : row) l = boost::multiprecision::lcm(l, BigInt(denominator(x)));
  std::vector<BigInt> out;
  out.reserve(row.size());
  BigInt g = 0;
  for (const auto& x : row) {
    out.push_back(BigInt(numerator(x)) * (l / BigInt(denominator(x))));
    g = boost::multiprecision::gcd(g, out.back());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace corrpoly

namespace corrpoly {

namespace {
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t r = lo + hi;
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t to_field(std::int64_t x) {
  std::int64_t m = x % static_cast<std::int64_t>(kPrime);
  return static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(kPrime) : m);
}
}  // namespace

std::size_t rank_mod_p(const std::vector<std::vector<std::int64_t>>& input) {
  if (input.empty()) return 0;
  const std::size_t cols = input.front().size();
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(input.size());
  for (const auto& r : input) {
    std::vector<std::uint64_t> f(cols);
    for (std::size_t c = 0; c < cols; ++c) f[c] = to_field(r[c]);
    rows.push_back(std::move(f));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    std::uint64_t inv = powmod(rows[rank][c], kPrime - 2);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      std::uint64_t f = mulmod(rows[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) {
        std::uint64_t sub = mulmod(f, rows[rank][k]);
        rows[r][k] = rows[r][k] >= sub ? rows[r][k] - sub : rows[r][k] + kPrime - sub;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace corrpoly
