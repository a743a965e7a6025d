#include "corrpoly/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include <json.hpp>
#include <omp.h>

#include "corrpoly/errors.hpp"

namespace corrpoly {

Angle GridAxis::at(std::size_t i) const {
  if (points <= 1) return lo;
  if (lo.pi_multiple() && hi.pi_multiple())
    return Angle::pi_times(*lo.pi_multiple() +
                           (*hi.pi_multiple() - *lo.pi_multiple()) * Rational(i, points - 1));
  double t = static_cast<double>(i) / static_cast<double>(points - 1);
  return Angle::from_radians(lo.radians() + (hi.radians() - lo.radians()) * t);
}

std::size_t SweepSpec::grid_size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.points;
  return n;
}

std::vector<Angle> SweepSpec::coordinates(std::size_t flat) const {
  std::vector<Angle> out(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    out[k] = axes[k].at(flat % axes[k].points);
    flat /= axes[k].points;
  }
  return out;
}

std::size_t ScanSummary::total_violated() const {
  std::size_t n = 0;
  for (auto c : violated_per_point) n += c;
  return n;
}

SweepSpec ghz_phase_sweep(const Scenario& s, std::size_t points, Angle lo, Angle hi) {
  SweepSpec sw;
  sw.name = "ghz-phase";
  sw.axes.push_back({"phi2", lo, hi, points});
  sw.model = [&s](std::span<const Angle> x) {
    return ghz_assignment(s, GhzParams::uniform(Angle::pi_times(0), x[0]));
  };
  return sw;
}

SweepSpec ghz_phase_grid(const Scenario& s, std::size_t points_x, std::size_t points_y) {
  SweepSpec sw;
  sw.name = "ghz-phase-grid";
  sw.axes.push_back({"phi2", Angle::pi_times(0), Angle::pi_times(1), points_x});
  sw.axes.push_back({"phi1", Angle::pi_times(0), Angle::pi_times(1), points_y});
  sw.model = [&s](std::span<const Angle> x) {
    return ghz_assignment(s, GhzParams::uniform(x[1], x[0]));
  };
  return sw;
}

SweepSpec singlet_direction_sweep(const Scenario& s, Parity parity, std::size_t points, Angle lo,
                                  Angle hi) {
  SweepSpec sw;
  sw.name = parity == Parity::Parallel ? "singlet-parallel" : "singlet-opposite";
  sw.axes.push_back({"theta2", lo, hi, points});
  sw.model = [&s, parity](std::span<const Angle> x) {
    SingletParams p;
    p.parity = parity;
    const Angle third = Angle::pi_times(2) - x[0];
    for (const char* party : {"A", "B"}) {
      p.directions[{party, 1}] = Angle::pi_times(0);
      p.directions[{party, 2}] = x[0];
      p.directions[{party, 3}] = third;
    }
    return singlet_assignment(s, p);
  };
  return sw;
}

namespace {

std::vector<double> radians_of(const std::vector<Angle>& xs) {
  std::vector<double> out;
  for (const auto& x : xs) out.push_back(x.radians());
  return out;
}

void evaluate_point(std::span<const Inequality> inequalities, const SweepSpec& sweep,
                    std::size_t point, std::vector<ViolationRecord>& out) {
  auto coords = sweep.coordinates(point);
  auto params = radians_of(coords);
  auto assignment = sweep.model(coords);
  out.clear();
  out.reserve(inequalities.size());
  for (std::size_t i = 0; i < inequalities.size(); ++i) {
    auto r = evaluate(inequalities[i], assignment, i + 1);
    r.params = params;
    out.push_back(std::move(r));
  }
}

void fold(ScanSummary& summary, std::size_t point, const std::vector<ViolationRecord>& records,
          const RecordSink& sink, bool& first) {
  std::size_t violated = 0;
  for (const auto& r : records) {
    if (r.violated) ++violated;
    if (first || r.violation > summary.max_violation) {
      summary.max_violation = r.violation;
      summary.argmax_point = point;
      summary.argmax_inequality = r.inequality_id;
      first = false;
    }
    if (sink) sink(r);
  }
  summary.violated_per_point.push_back(violated);
}

}  // namespace

ScanSummary scan_serial(std::span<const Inequality> inequalities, const SweepSpec& sweep,
                        const RecordSink& sink) {
  ScanSummary summary;
  summary.inequalities = inequalities.size();
  bool first = true;
  std::vector<ViolationRecord> records;
  for (std::size_t p = 0; p < sweep.grid_size(); ++p) {
    evaluate_point(inequalities, sweep, p, records);
    fold(summary, p, records, sink, first);
  }
  return summary;
}

ScanSummary scan(std::span<const Inequality> inequalities, const SweepSpec& sweep,
                 const RecordSink& sink) {
  ScanSummary summary;
  summary.inequalities = inequalities.size();
  bool first = true;
  const std::size_t total = sweep.grid_size();
  // Small blocks keep the record buffers hot; the record cap bounds memory.
  const std::size_t cap = std::max<std::size_t>(1, 4'000'000 / std::max<std::size_t>(1, inequalities.size()));
  const std::size_t block = std::min<std::size_t>(cap, 16 * static_cast<std::size_t>(omp_get_max_threads()));
  std::vector<std::vector<ViolationRecord>> buffers(std::min(block, total));
  for (std::size_t start = 0; start < total; start += block) {
    const std::size_t count = std::min(block, total - start);
    bool failed = false;
    std::string message;
    Errc code = Errc::MissingProbability;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
      try {
        evaluate_point(inequalities, sweep, start + static_cast<std::size_t>(i), buffers[i]);
      } catch (const Error& e) {
#pragma omp critical
        {
          failed = true;
          code = e.code();
          message = e.what();
        }
      }
    }
    if (failed) throw Error(code, message);
    for (std::size_t i = 0; i < count; ++i) fold(summary, start + i, buffers[i], sink, first);
  }
  return summary;
}

RefinedMax refine_max(const Inequality& q, const SweepSpec& sweep) {
  if (sweep.axes.size() != 1) throw Error(Errc::DimensionMismatch, "refinement needs a 1-D sweep");
  const auto& axis = sweep.axes.front();
  auto violation_at = [&](double x) {
    Angle a = Angle::from_radians(x);
    return evaluate(q, sweep.model(std::span<const Angle>(&a, 1))).violation;
  };
  std::size_t best = 0;
  double best_v = 0;
  for (std::size_t i = 0; i < axis.points; ++i) {
    Angle a = axis.at(i);
    double v = evaluate(q, sweep.model(std::span<const Angle>(&a, 1))).violation;
    if (i == 0 || v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double lo = axis.at(best == 0 ? 0 : best - 1).radians();
  double hi = axis.at(std::min(best + 1, axis.points - 1)).radians();
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = violation_at(c), fd = violation_at(d);
  for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = violation_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = violation_at(d);
    }
  }
  RefinedMax out{(a + b) / 2, violation_at((a + b) / 2)};
  if (best_v > out.violation) out = {axis.at(best).radians(), best_v};
  return out;
}

namespace {
std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}
}  // namespace

void write_csv_header(std::ostream& out, const SweepSpec& sweep) {
  for (std::size_t k = 0; k < sweep.axes.size(); ++k) out << "grid_param_" << k + 1 << ',';
  out << "inequality_id,bound,value,violation,violated\n";
}

void write_csv_row(std::ostream& out, const ViolationRecord& r) {
  for (double p : r.params) out << num(p) << ',';
  out << r.inequality_id << ',' << r.bound << ',' << num(r.value) << ',' << num(r.violation) << ','
      << (r.violated ? 1 : 0) << '\n';
}

std::string summary_json(const ScanSummary& summary, const SweepSpec& sweep) {
  nlohmann::ordered_json j;
  j["sweep"] = sweep.name;
  j["grid_points"] = sweep.grid_size();
  j["inequalities"] = summary.inequalities;
  j["max_violation"] = summary.max_violation;
  auto coords = sweep.grid_size() ? sweep.coordinates(summary.argmax_point) : std::vector<Angle>{};
  nlohmann::ordered_json arg;
  for (std::size_t k = 0; k < coords.size(); ++k) arg[sweep.axes[k].name] = coords[k].radians();
  arg["inequality_id"] = summary.argmax_inequality;
  j["argmax"] = arg;
  j["total_violated"] = summary.total_violated();
  j["violated_per_point"] = summary.violated_per_point;
  return j.dump(2);
}

}  // namespace corrpoly
