#include "corrpoly/double_description.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <limits>
#include <stdexcept>

#include "corrpoly/errors.hpp"
#include "corrpoly/linalg.hpp"

// Facets of conv(V) are the extreme rays of the cone
//   { y = (b, w) in R^{d+1} : b + w . v >= 0 for every vertex v },
// read back as the inequality (-w) . x <= b. The cone is built by inserting
// one homogenized vertex constraint at a time, starting from the whole space
// held as a lineality basis.

namespace corrpoly {
namespace {

struct OverflowSignal {};

template <int W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }

  friend Bits operator&(const Bits& a, const Bits& b) {
    Bits r;
    for (int k = 0; k < W; ++k) r.w[k] = a.w[k] & b.w[k];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (int k = 0; k < W; ++k)
      if (w[k] & ~o.w[k]) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (int k = 0; k < W; ++k) c += std::popcount(w[k]);
    return c;
  }
};

// 64-bit storage with 128-bit accumulation; any overflow aborts the run so
// the driver can restart on GMP integers.
struct SmallArith {
  using Int = std::int64_t;
  using Acc = __int128;

  static Int from_big(const BigInt& x) {
    if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min())
      throw OverflowSignal{};
    return static_cast<Int>(x);
  }
  static BigInt to_big(Int x) { return BigInt(x); }

  static Acc dot(const Int* h, const Int* r, std::size_t n) {
    Acc sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (h[i] == 0 || r[i] == 0) continue;
      Acc term = static_cast<Acc>(h[i]) * r[i];
      if (__builtin_add_overflow(sum, term, &sum)) throw OverflowSignal{};
    }
    return sum;
  }
  static int sign(Acc a) { return (a > 0) - (a < 0); }

  static Acc gcd(Acc a, Acc b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      Acc t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  // out = a * x - b * y, divided by the gcd of its entries.
  static void combine(Acc a, const Int* x, Acc b, const Int* y, Int* out, std::size_t n) {
    thread_local std::vector<Acc> tmp;
    tmp.resize(n);
    Acc g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Acc p, q;
      if (__builtin_mul_overflow(a, static_cast<Acc>(x[i]), &p)) throw OverflowSignal{};
      if (__builtin_mul_overflow(b, static_cast<Acc>(y[i]), &q)) throw OverflowSignal{};
      if (__builtin_sub_overflow(p, q, &tmp[i])) throw OverflowSignal{};
      g = gcd(g, tmp[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      Acc v = g > 1 ? tmp[i] / g : tmp[i];
      if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
        throw OverflowSignal{};
      out[i] = static_cast<Int>(v);
    }
  }
};

struct BigArith {
  using Int = BigInt;
  using Acc = BigInt;

  static Int from_big(const BigInt& x) { return x; }
  static BigInt to_big(const Int& x) { return x; }

  static Acc dot(const Int* h, const Int* r, std::size_t n) {
    Acc sum = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (h[i] != 0 && r[i] != 0) sum += h[i] * r[i];
    return sum;
  }
  static int sign(const Acc& a) { return a.sign(); }

  static void combine(const Acc& a, const Int* x, const Acc& b, const Int* y, Int* out,
                      std::size_t n) {
    BigInt g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = a * x[i] - b * y[i];
      g = boost::multiprecision::gcd(g, out[i]);
    }
    if (g > 1)
      for (std::size_t i = 0; i < n; ++i) out[i] /= g;
  }
};

template <class Arith, int W>
class ConeBuilder {
  using Int = typename Arith::Int;
  using Acc = typename Arith::Acc;

 public:
  ConeBuilder(const std::vector<std::vector<BigInt>>& constraints, const DDOptions& opts,
              DDStats& stats)
      : dim_(constraints.front().size()), opts_(opts), stats_(stats) {
    for (const auto& row : constraints) {
      std::vector<Int> h;
      h.reserve(dim_);
      for (const auto& x : row) h.push_back(Arith::from_big(x));
      rows_.push_back(std::move(h));
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      std::vector<Int> e(dim_, Int(0));
      e[i] = 1;
      lineality_.push_back(std::move(e));
    }
  }

  void run() {
    std::vector<bool> done(rows_.size(), false);
    for (std::size_t step = 0; step < rows_.size(); ++step) {
      std::size_t k = pick_next(done);
      done[k] = true;
      insert(k);
      processed_.set(k);
      stats_.max_rays = std::max(stats_.max_rays, ray_count());
      if (ray_count() > opts_.ray_cap)
        throw Error(Errc::ResourceExhausted,
                    "ray count " + std::to_string(ray_count()) + " exceeds cap " +
                        std::to_string(opts_.ray_cap));
    }
    stats_.constraints = rows_.size();
  }

  std::vector<std::vector<BigInt>> rays() const {
    std::vector<std::vector<BigInt>> out;
    for (std::size_t r = 0; r < ray_count(); ++r) {
      std::vector<BigInt> v;
      for (std::size_t i = 0; i < dim_; ++i) v.push_back(Arith::to_big(coords_[r * dim_ + i]));
      out.push_back(std::move(v));
    }
    return out;
  }

  std::vector<std::vector<BigInt>> lineality() const {
    std::vector<std::vector<BigInt>> out;
    for (const auto& l : lineality_) {
      std::vector<BigInt> v;
      for (const auto& x : l) v.push_back(Arith::to_big(x));
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  std::size_t ray_count() const { return zero_.size(); }
  const Int* ray(std::size_t r) const { return coords_.data() + r * dim_; }

  std::size_t pick_next(const std::vector<bool>& done) const {
    std::size_t first = 0;
    while (done[first]) ++first;
    if (opts_.order == InsertionOrder::Lexicographic || !lineality_.empty()) return first;
    std::size_t best = first;
    std::size_t best_cut = 0;
    for (std::size_t k = first; k < rows_.size(); ++k) {
      if (done[k]) continue;
      std::size_t cut = 0;
      for (std::size_t r = 0; r < ray_count(); ++r)
        if (Arith::sign(Arith::dot(rows_[k].data(), ray(r), dim_)) < 0) ++cut;
      if (cut > best_cut) {
        best_cut = cut;
        best = k;
      }
    }
    return best;
  }

  void insert(std::size_t k) {
    const Int* h = rows_[k].data();
    for (std::size_t li = 0; li < lineality_.size(); ++li) {
      Acc s = Arith::dot(h, lineality_[li].data(), dim_);
      if (Arith::sign(s) != 0) {
        shrink_lineality(k, li, s);
        return;
      }
    }
    combine_rays(k);
  }

  // Some lineality direction is not orthogonal to the new constraint: it
  // becomes a ray, everything else is projected onto the hyperplane.
  void shrink_lineality(std::size_t k, std::size_t li, Acc s0) {
    const Int* h = rows_[k].data();
    std::vector<Int> l0 = std::move(lineality_[li]);
    lineality_.erase(lineality_.begin() + static_cast<std::ptrdiff_t>(li));
    if (Arith::sign(s0) < 0) {
      for (auto& x : l0) x = -x;
      s0 = -s0;
    }
    std::vector<Int> tmp(dim_);
    for (auto& l : lineality_) {
      Acc t = Arith::dot(h, l.data(), dim_);
      if (Arith::sign(t) == 0) continue;
      Arith::combine(s0, l.data(), t, l0.data(), tmp.data(), dim_);
      l = tmp;
    }
    for (std::size_t r = 0; r < ray_count(); ++r) {
      Int* rp = coords_.data() + r * dim_;
      Acc t = Arith::dot(h, rp, dim_);
      if (Arith::sign(t) != 0) {
        Arith::combine(s0, rp, t, l0.data(), tmp.data(), dim_);
        std::copy(tmp.begin(), tmp.end(), rp);
      }
      zero_[r].set(k);
    }
    coords_.insert(coords_.end(), l0.begin(), l0.end());
    zero_.push_back(processed_);
  }

  bool adjacent(std::size_t p, std::size_t n, const Bits<W>& z, int need) const {
    if (z.count() < need) return false;
    for (std::size_t r = 0; r < ray_count(); ++r) {
      if (r == p || r == n) continue;
      if (z.subset_of(zero_[r])) return false;
    }
    return true;
  }

  bool adjacent_by_rank(const Bits<W>& z, int need) const {
    RationalMatrix m;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!z.test(i)) continue;
      std::vector<Rational> row;
      for (const auto& x : rows_[i]) row.emplace_back(Arith::to_big(x));
      m.push_back(std::move(row));
    }
    return static_cast<int>(rank(std::move(m))) == need;
  }

  struct NewRays {
    std::vector<Int> coords;
    std::vector<Bits<W>> zero;
    std::uint64_t considered = 0;
    std::uint64_t adjacent = 0;
    std::uint64_t rank_checks = 0;
  };

  // All new rays born from positive ray `p`, in negative-ray order.
  void combine_one(std::size_t k, std::size_t p, const std::vector<std::size_t>& neg,
                   const std::vector<Acc>& s, int need, NewRays& out) const {
    for (std::size_t n : neg) {
      Bits<W> z = zero_[p] & zero_[n];
      ++out.considered;
      bool adj = adjacent(p, n, z, need);
      if (opts_.rank_cross_check) {
        ++out.rank_checks;
        if (adj != adjacent_by_rank(z, need))
          throw std::logic_error("combinatorial and algebraic adjacency tests disagree");
      }
      if (!adj) continue;
      ++out.adjacent;
      std::size_t at = out.coords.size();
      out.coords.resize(at + dim_);
      // s[p] > 0 > s[n]: positive combination vanishing on constraint k.
      Arith::combine(s[p], ray(n), s[n], ray(p), out.coords.data() + at, dim_);
      z.set(k);
      out.zero.push_back(z);
    }
  }

  void combine_rays(std::size_t k) {
    const Int* h = rows_[k].data();
    const std::size_t count = ray_count();
    std::vector<Acc> s(count);
    for (std::size_t r = 0; r < count; ++r) s[r] = Arith::dot(h, ray(r), dim_);

    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t r = 0; r < count; ++r) {
      int sg = Arith::sign(s[r]);
      (sg > 0 ? pos : sg < 0 ? neg : zer).push_back(r);
    }
    if (neg.empty()) {
      for (auto r : zer) zero_[r].set(k);
      return;
    }

    const int need = static_cast<int>(dim_) - static_cast<int>(lineality_.size()) - 2;
    std::vector<NewRays> born(pos.size());
    if (opts_.parallel) {
      std::atomic<bool> overflow{false};
      std::atomic<bool> mismatch{false};
      std::atomic<std::size_t> total{count - neg.size()};
      std::atomic<bool> over_cap{false};
#pragma omp parallel for schedule(dynamic, 4)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(pos.size()); ++i) {
        if (overflow || mismatch || over_cap) continue;
        try {
          combine_one(k, pos[i], neg, s, need, born[i]);
        } catch (const OverflowSignal&) {
          overflow = true;
        } catch (const std::logic_error&) {
          mismatch = true;
        }
        if (total.fetch_add(born[i].zero.size()) + born[i].zero.size() > opts_.ray_cap)
          over_cap = true;
      }
      if (overflow) throw OverflowSignal{};
      if (mismatch) throw std::logic_error("combinatorial and algebraic adjacency tests disagree");
      if (over_cap)
        throw Error(Errc::ResourceExhausted,
                    "ray count exceeds cap " + std::to_string(opts_.ray_cap));
    } else {
      for (std::size_t i = 0; i < pos.size(); ++i) combine_one(k, pos[i], neg, s, need, born[i]);
    }

    std::vector<Int> coords;
    std::vector<Bits<W>> zero;
    std::size_t expected = count - neg.size();
    for (const auto& b : born) expected += b.zero.size();
    coords.reserve(expected * dim_);
    zero.reserve(expected);
    for (std::size_t r = 0; r < count; ++r) {
      if (Arith::sign(s[r]) < 0) continue;
      coords.insert(coords.end(), ray(r), ray(r) + dim_);
      zero.push_back(zero_[r]);
      if (Arith::sign(s[r]) == 0) zero.back().set(k);
    }
    for (auto& b : born) {
      coords.insert(coords.end(), std::make_move_iterator(b.coords.begin()),
                    std::make_move_iterator(b.coords.end()));
      zero.insert(zero.end(), b.zero.begin(), b.zero.end());
      stats_.pairs_considered += b.considered;
      stats_.pairs_adjacent += b.adjacent;
      stats_.rank_checks += b.rank_checks;
    }
    coords_ = std::move(coords);
    zero_ = std::move(zero);
  }

  std::size_t dim_;
  const DDOptions& opts_;
  DDStats& stats_;
  std::vector<std::vector<Int>> rows_;
  std::vector<std::vector<Int>> lineality_;
  std::vector<Int> coords_;
  std::vector<Bits<W>> zero_;
  Bits<W> processed_;
};

struct ConeResult {
  std::vector<std::vector<BigInt>> rays;
  std::vector<std::vector<BigInt>> lineality;
};

template <class Arith, int W>
ConeResult build(const std::vector<std::vector<BigInt>>& rows, const DDOptions& opts,
                 DDStats& stats) {
  ConeBuilder<Arith, W> cone(rows, opts, stats);
  cone.run();
  return {cone.rays(), cone.lineality()};
}

template <class Arith>
ConeResult build_dispatch(const std::vector<std::vector<BigInt>>& rows, const DDOptions& opts,
                          DDStats& stats) {
  const std::size_t m = rows.size();
  if (m <= 64) return build<Arith, 1>(rows, opts, stats);
  if (m <= 128) return build<Arith, 2>(rows, opts, stats);
  if (m <= 256) return build<Arith, 4>(rows, opts, stats);
  if (m <= 1024) return build<Arith, 16>(rows, opts, stats);
  if (m <= 4096) return build<Arith, 64>(rows, opts, stats);
  throw Error(Errc::ResourceExhausted, std::to_string(m) + " vertices is beyond the supported 4096");
}

std::int64_t narrow(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw Error(Errc::Overflow, "facet coefficient does not fit in 64 bits");
  return static_cast<std::int64_t>(x);
}

Inequality from_ray(const std::vector<BigInt>& y) {
  Inequality q;
  q.bound = narrow(y[0]);
  for (std::size_t i = 1; i < y.size(); ++i) q.coeffs.push_back(narrow(BigInt(-y[i])));
  return q;
}

std::vector<Inequality> equations_from(const std::vector<std::vector<BigInt>>& lineality) {
  // l0 + l . v == 0 on every vertex, i.e. (-l) . x == l0. Reduced echelon
  // form over [coeffs | bound] makes the system independent of insertion order.
  RationalMatrix m;
  for (const auto& l : lineality) {
    std::vector<Rational> row;
    for (std::size_t i = 1; i < l.size(); ++i) row.emplace_back(BigInt(-l[i]));
    row.emplace_back(l[0]);
    m.push_back(std::move(row));
  }
  reduce_rows(m);
  std::vector<Inequality> out;
  for (const auto& row : m) {
    auto ints = integer_row(row);
    Inequality q;
    for (std::size_t i = 0; i + 1 < ints.size(); ++i) q.coeffs.push_back(narrow(ints[i]));
    q.bound = narrow(ints.back());
    out.push_back(canonicalize_equation(std::move(q)));
  }
  return out;
}

HRepresentation enumerate(std::vector<std::vector<BigInt>> rows, std::size_t dimension,
                          const DDOptions& opts, DDStats* stats_out) {
  std::sort(rows.begin(), rows.end());
  DDStats stats;
  ConeResult cone;
  if (opts.force_bigint) {
    stats.used_bigint = true;
    cone = build_dispatch<BigArith>(rows, opts, stats);
  } else {
    try {
      cone = build_dispatch<SmallArith>(rows, opts, stats);
    } catch (const OverflowSignal&) {
      stats = DDStats{};
      stats.used_bigint = true;
      cone = build_dispatch<BigArith>(rows, opts, stats);
    }
  }

  HRepresentation h;
  h.dimension = dimension;
  for (const auto& y : cone.rays) {
    bool trivial = std::all_of(y.begin() + 1, y.end(), [](const BigInt& x) { return x == 0; });
    // (1, 0, ..., 0) is 0 <= 1; it only survives as a ray for a single point.
    if (trivial) continue;
    h.facets.push_back(canonicalize(from_ray(y)));
  }
  std::sort(h.facets.begin(), h.facets.end(), FileOrderLess{});
  h.equations = equations_from(cone.lineality);
  if (stats_out) *stats_out = stats;
  return h;
}

}  // namespace

HRepresentation facet_enumeration(std::span<const Point> vertices, const DDOptions& opts,
                                  DDStats* stats) {
  if (vertices.empty()) throw Error(Errc::EmptyInput, "no vertices");
  const std::size_t d = vertices.front().size();
  std::vector<std::vector<BigInt>> rows;
  rows.reserve(vertices.size());
  for (const auto& v : vertices) {
    if (v.size() != d) throw Error(Errc::DimensionMismatch, "vertices of different lengths");
    std::vector<Rational> h;
    h.reserve(d + 1);
    h.emplace_back(1);
    h.insert(h.end(), v.begin(), v.end());
    rows.push_back(integer_row(h));
  }
  return enumerate(std::move(rows), d, opts, stats);
}

HRepresentation facet_enumeration(const std::vector<std::vector<int>>& vertices,
                                  const DDOptions& opts, DDStats* stats) {
  if (vertices.empty()) throw Error(Errc::EmptyInput, "no vertices");
  const std::size_t d = vertices.front().size();
  std::vector<std::vector<BigInt>> rows;
  rows.reserve(vertices.size());
  for (const auto& v : vertices) {
    if (v.size() != d) throw Error(Errc::DimensionMismatch, "vertices of different lengths");
    std::vector<BigInt> h;
    h.reserve(d + 1);
    h.emplace_back(1);
    for (int x : v) h.emplace_back(x);
    rows.push_back(std::move(h));
  }
  return enumerate(std::move(rows), d, opts, stats);
}

}  // namespace corrpoly
