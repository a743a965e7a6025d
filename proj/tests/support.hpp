#pragma once

// Helpers shared by the test binaries and the acceptance runner.

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "corrpoly/inequality.hpp"
#include "corrpoly/io.hpp"
#include "corrpoly/presets.hpp"
#include "corrpoly/rational.hpp"
#include "corrpoly/scenario.hpp"

namespace testing {

using corrpoly::Inequality;
using corrpoly::Rational;

inline std::string fixture(const std::string& name) {
  return std::string(CORRPOLY_FIXTURES) + "/" + name;
}

inline std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// One inequality expression per non-comment line.
inline std::vector<Inequality> load_expressions(const corrpoly::Scenario& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::vector<Inequality> out;
  for (std::string line; std::getline(in, line);) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    out.push_back(corrpoly::canonicalize(corrpoly::parse_expression(s, line)));
  }
  return out;
}

inline std::vector<Inequality> ch_fixture() {
  return load_expressions(corrpoly::preset("ch"), fixture("ch_facets.txt"));
}

struct Named {
  std::string name;
  std::string preset;
  Inequality q;
};

inline std::map<std::string, Named> named_inequalities() {
  std::ifstream in(fixture("named_inequalities.txt"));
  if (!in) throw std::runtime_error("missing named_inequalities.txt");
  std::map<std::string, Named> out;
  for (std::string line; std::getline(in, line);) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto a = line.find('|'), b = line.find('|', a + 1);
    Named n{trim(line.substr(0, a)), trim(line.substr(a + 1, b - a - 1)), {}};
    n.q = corrpoly::canonicalize(
        corrpoly::parse_expression(corrpoly::preset(n.preset), line.substr(b + 1)));
    out[n.name] = n;
  }
  return out;
}

inline std::set<Inequality, corrpoly::FileOrderLess> as_set(const std::vector<Inequality>& v) {
  return {v.begin(), v.end()};
}

// --- brute-force facet oracle -------------------------------------------
//
// Every d-subset of vertices spanning a hyperplane is a candidate; keep the
// ones with all vertices on one side and at least d affinely independent
// vertices on it. Deliberately naive and self-contained: no shared code with
// the double description path beyond canonicalize.

inline std::size_t naive_rank(std::vector<std::vector<Rational>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

// Null vector of a (d x (d+1)) matrix of rank d.
inline std::vector<Rational> null_vector(std::vector<std::vector<Rational>> m) {
  const std::size_t cols = m[0].size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  std::size_t free = 0;
  while (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) ++free;
  std::vector<Rational> x(cols, 0);
  x[free] = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -m[i][free];
  return x;
}

inline Inequality to_integer(const std::vector<Rational>& coeffs, const Rational& bound) {
  using corrpoly::BigInt;
  BigInt l = 1;
  auto lcm_in = [&](const Rational& q) {
    BigInt d = boost::multiprecision::denominator(q);
    l = l / boost::multiprecision::gcd(l, d) * d;
  };
  for (auto& c : coeffs) lcm_in(c);
  lcm_in(bound);
  Inequality q;
  for (auto& c : coeffs) q.coeffs.push_back(static_cast<std::int64_t>(BigInt(c * l)));
  q.bound = static_cast<std::int64_t>(BigInt(bound * l));
  return corrpoly::canonicalize(q);
}

inline std::vector<Inequality> brute_force_facets(const std::vector<std::vector<int>>& v) {
  const std::size_t n = v.size(), d = v[0].size();
  std::set<Inequality, corrpoly::FileOrderLess> out;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    // Rows (1, v) for the chosen subset; null vector (b0, c) gives b0 + c.x = 0.
    std::vector<std::vector<Rational>> m;
    for (auto i : idx) {
      std::vector<Rational> row{1};
      for (int x : v[i]) row.push_back(x);
      m.push_back(row);
    }
    if (naive_rank(m) == d) {
      auto y = null_vector(m);
      int side = 0;
      bool ok = true;
      std::size_t on = 0;
      for (const auto& p : v) {
        Rational val = y[0];
        for (std::size_t k = 0; k < d; ++k) val += y[k + 1] * p[k];
        if (val == 0) {
          ++on;
          continue;
        }
        int sg = val > 0 ? 1 : -1;
        if (side == 0) side = sg;
        if (sg != side) {
          ok = false;
          break;
        }
      }
      if (ok && side != 0 && on >= d) {
        // Valid side: side * (y0 + c.x) >= 0, i.e. -side * c.x <= side * y0.
        std::vector<Rational> c;
        for (std::size_t k = 0; k < d; ++k) c.push_back(-side * y[k + 1]);
        out.insert(to_integer(c, side * y[0]));
      }
    }
    // next combination
    std::size_t k = d;
    while (k > 0 && idx[k - 1] == n - d + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {out.begin(), out.end()};
}

// Random integer point set with full affine dimension.
inline std::vector<std::vector<int>> random_full_dim_set(std::mt19937_64& rng, std::size_t dim,
                                                         std::size_t count) {
  std::uniform_int_distribution<int> coord(-2, 2);
  for (;;) {
    std::set<std::vector<int>> pts;
    while (pts.size() < count) {
      std::vector<int> p(dim);
      for (auto& x : p) x = coord(rng);
      pts.insert(p);
    }
    std::vector<std::vector<int>> v(pts.begin(), pts.end());
    std::vector<std::vector<Rational>> diffs;
    for (std::size_t i = 1; i < v.size(); ++i) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < dim; ++k) row.push_back(v[i][k] - v[0][k]);
      diffs.push_back(row);
    }
    if (naive_rank(diffs) == dim) return v;
  }
}

// Runs a command, returning exit status and captured stdout.
struct RunResult {
  int status = -1;
  std::string out;
};

inline RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testing
