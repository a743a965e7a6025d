#include "corrpoly/membership.hpp"

#include <limits>
#include <optional>

#include "corrpoly/errors.hpp"
#include "corrpoly/linalg.hpp"

namespace corrpoly {
namespace {

// Dense tableau for  A x = b, x >= 0  with one artificial per row.
// Columns: [0, n) structural, [n, n + m) artificial.
class Tableau {
 public:
  Tableau(const RationalMatrix& a, const std::vector<Rational>& b)
      : m_(a.size()), n_(a.front().size()), cols_(n_ + m_) {
    rows_.assign(m_, std::vector<Rational>(cols_ + 1));
    sign_.assign(m_, 1);
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      sign_[i] = b[i] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = sign_[i] * a[i][j];
      rows_[i][n_ + i] = 1;
      rows_[i][cols_] = sign_[i] * b[i];
      basis_[i] = n_ + i;
    }
  }

  // Phase 1: minimize the sum of artificials. Returns that optimum.
  Rational phase_one() {
    std::vector<Rational> cost(cols_, 0);
    for (std::size_t j = n_; j < cols_; ++j) cost[j] = 1;
    optimize(cost, cols_);
    Rational w = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) w += rows_[i][cols_];
    return w;
  }

  // Dual of the phase-one optimum, mapped back to the unsigned rows.
  std::vector<Rational> farkas() const {
    std::vector<Rational> cost(cols_, 0);
    for (std::size_t j = n_; j < cols_; ++j) cost[j] = 1;
    return duals(cost);
  }

  // pi_i = c_B B^{-1} e_i, read from the artificial columns of the tableau.
  std::vector<Rational> duals(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      Rational pi = 0;
      for (std::size_t r = 0; r < m_; ++r)
        if (cost[basis_[r]] != 0 && rows_[r][n_ + i] != 0) pi += cost[basis_[r]] * rows_[r][n_ + i];
      y[i] = sign_[i] * pi;
    }
    return y;
  }

  std::vector<Rational> structural_cost(const std::vector<Rational>& cost) const {
    std::vector<Rational> full(cols_, 0);
    for (std::size_t j = 0; j < n_; ++j) full[j] = cost[j];
    return full;
  }

  bool artificial_in_basis() const {
    for (auto b : basis_)
      if (b >= n_) return true;
    return false;
  }

  // Pivot zero-level artificials out of the basis where possible.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (rows_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2 on structural columns only: minimize cost . x.
  void phase_two(const std::vector<Rational>& cost) { optimize(structural_cost(cost), n_); }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(n_, 0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = rows_[i][cols_];
    return x;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / rows_[r][c];
    for (auto& x : rows_[r]) x *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      Rational f = rows_[i][c];
      for (std::size_t k = 0; k <= cols_; ++k)
        if (rows_[r][k] != 0) rows_[i][k] -= f * rows_[r][k];
    }
    basis_[r] = c;
  }

  // Bland's rule: lowest-index improving column enters; ratio ties broken by
  // lowest basic variable index. `allowed` limits entering columns.
  void optimize(const std::vector<Rational>& cost, std::size_t allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed && !enter; ++j) {
        bool basic = false;
        for (auto b : basis_) basic |= b == j;
        if (basic) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < m_; ++i)
          if (rows_[i][j] != 0) reduced -= cost[basis_[i]] * rows_[i][j];
        if (reduced < 0) enter = j;
      }
      if (!enter) return;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (rows_[i][*enter] <= 0) continue;
        Rational ratio = rows_[i][cols_] / rows_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      // Unbounded cannot happen here: every problem posed is bounded.
      if (!leave) throw std::logic_error("unbounded LP in membership");
      pivot(*leave, *enter);
    }
  }

  std::size_t m_, n_, cols_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
};

Inequality to_inequality(std::vector<Rational> row) {
  const std::size_t d = row.size() - 1;
  auto ints = integer_row(row);
  Inequality q;
  for (std::size_t i = 0; i < d; ++i) q.coeffs.push_back(static_cast<std::int64_t>(ints[i]));
  q.bound = static_cast<std::int64_t>(ints[d]);
  return canonicalize(std::move(q));
}

// Facet of a full-dimensional hull violated by p, or nullopt when the hull is
// flat. With x0 the vertex centroid, min sum(l) s.t. sum l_j (v_j - x0) =
// p - x0 has a basic optimal dual c that is a vertex of the polar, so
// c . (x - x0) <= 1 defines a facet; p violates it iff the optimum exceeds 1.
std::optional<Inequality> facet_separator(const Point& point, std::span<const Point> vertices) {
  const std::size_t d = point.size(), n = vertices.size();
  Point x0(d, 0);
  for (const auto& v : vertices)
    for (std::size_t i = 0; i < d; ++i) x0[i] += v[i];
  for (auto& x : x0) x /= static_cast<long>(n);
  RationalMatrix a(d, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < d; ++i) a[i][j] = vertices[j][i] - x0[i];
  if (rank(a) < d) return std::nullopt;
  std::vector<Rational> b(d);
  for (std::size_t i = 0; i < d; ++i) b[i] = point[i] - x0[i];

  Tableau t(a, b);
  if (t.phase_one() != 0) return std::nullopt;
  t.drive_out_artificials();
  if (t.artificial_in_basis()) return std::nullopt;
  std::vector<Rational> cost(n, 1);
  t.phase_two(cost);
  auto c = t.duals(t.structural_cost(cost));
  std::vector<Rational> row(c);
  Rational bound = 1;
  for (std::size_t i = 0; i < d; ++i) bound += c[i] * x0[i];
  row.push_back(bound);
  auto q = to_inequality(std::move(row));
  if (lhs(q, point) <= q.bound) return std::nullopt;
  return q;
}

}  // namespace

MembershipCertificate membership(const Point& point, std::span<const Point> vertices) {
  if (vertices.empty()) throw Error(Errc::EmptyInput, "no vertices");
  const std::size_t d = point.size();
  for (const auto& v : vertices)
    if (v.size() != d) throw Error(Errc::DimensionMismatch, "point and vertex lengths differ");
  const std::size_t n = vertices.size();

  // Columns mu_j = lambda_j - t (one per vertex) and t itself:
  //   sum_j mu_j (1, v_j) + t (n, sum_j v_j) = (1, p).
  RationalMatrix a(d + 1, std::vector<Rational>(n + 1, 0));
  for (std::size_t j = 0; j < n; ++j) {
    a[0][j] = 1;
    a[0][n] += 1;
    for (std::size_t i = 0; i < d; ++i) {
      a[i + 1][j] = vertices[j][i];
      a[i + 1][n] += vertices[j][i];
    }
  }
  std::vector<Rational> b(d + 1);
  b[0] = 1;
  for (std::size_t i = 0; i < d; ++i) b[i + 1] = point[i];

  Tableau t(a, b);
  MembershipCertificate cert;
  if (t.phase_one() > 0) {
    cert.inside = false;
    if (auto facet = facet_separator(point, vertices)) {
      cert.separator = std::move(*facet);
      return cert;
    }
    // y0 + y.v <= 0 on vertices, y0 + y.p > 0:  y . x <= -y0 separates.
    auto y = t.farkas();
    std::vector<Rational> row(y.begin() + 1, y.end());
    row.push_back(-y[0]);
    cert.separator = to_inequality(std::move(row));
    return cert;
  }
  t.drive_out_artificials();
  std::vector<Rational> cost(n + 1, 0);
  cost[n] = -1;  // maximize t
  t.phase_two(cost);
  auto x = t.solution();
  cert.inside = true;
  cert.weights.resize(n);
  for (std::size_t j = 0; j < n; ++j) cert.weights[j] = x[j] + x[n];
  return cert;
}

bool certificate_holds(const MembershipCertificate& cert, const Point& point,
                       std::span<const Point> vertices) {
  const std::size_t d = point.size();
  if (cert.inside) {
    if (cert.weights.size() != vertices.size()) return false;
    Rational total = 0;
    Point sum(d, 0);
    for (std::size_t j = 0; j < vertices.size(); ++j) {
      if (cert.weights[j] < 0) return false;
      total += cert.weights[j];
      for (std::size_t i = 0; i < d; ++i) sum[i] += cert.weights[j] * vertices[j][i];
    }
    return total == 1 && sum == point;
  }
  if (cert.separator.coeffs.size() != d) return false;
  for (const auto& v : vertices)
    if (lhs(cert.separator, v) > cert.separator.bound) return false;
  return lhs(cert.separator, point) > cert.separator.bound;
}

}  // namespace corrpoly
