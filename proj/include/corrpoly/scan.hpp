#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "corrpoly/angle.hpp"
#include "corrpoly/inequality.hpp"
#include "corrpoly/quantum.hpp"
#include "corrpoly/scenario.hpp"

namespace corrpoly {

/// Evenly spaced grid including both ends; a single point sits at `lo`.
struct GridAxis {
  std::string name;
  Angle lo;
  Angle hi;
  std::size_t points = 1;

  Angle at(std::size_t i) const;
};

using ModelFn = std::function<ProbabilityAssignment(std::span<const Angle>)>;

/// A 1-D or 2-D sweep binding model parameters to grid coordinates.
struct SweepSpec {
  std::string name;
  std::vector<GridAxis> axes;
  ModelFn model;

  std::size_t grid_size() const;
  /// Row-major: the first axis varies slowest.
  std::vector<Angle> coordinates(std::size_t flat) const;
};

inline constexpr std::size_t kDefaultGridPoints = 512;

/// phi_{l,1} = 0 and phi_{l,2} = x over [lo, hi] for every party.
SweepSpec ghz_phase_sweep(const Scenario& s, std::size_t points = kDefaultGridPoints,
                          Angle lo = Angle::pi_times(0), Angle hi = Angle::pi_times(1));

/// phi_{l,1} = y and phi_{l,2} = x on a 2-D grid.
SweepSpec ghz_phase_grid(const Scenario& s, std::size_t points_x, std::size_t points_y);

/// theta(A1 = B1) = 0, theta(A2 = B2) = x, theta(A3 = B3) = 2pi - x.
SweepSpec singlet_direction_sweep(const Scenario& s, Parity parity,
                                  std::size_t points = kDefaultGridPoints,
                                  Angle lo = Angle::pi_times(0), Angle hi = Angle::pi_times(1));

struct ScanSummary {
  std::size_t inequalities = 0;
  std::vector<std::size_t> violated_per_point;
  /// Largest violation over the grid, even if negative (nothing violated).
  double max_violation = 0;
  std::size_t argmax_point = 0;
  std::size_t argmax_inequality = 0;  // 1-based id
  std::size_t total_violated() const;
};

using RecordSink = std::function<void(const ViolationRecord&)>;

/// Evaluates every inequality at every grid point. Records reach `sink` in
/// (grid point, inequality id) order whatever the thread count.
ScanSummary scan(std::span<const Inequality> inequalities, const SweepSpec& sweep,
                 const RecordSink& sink = {});

/// Serial reference for scan.
ScanSummary scan_serial(std::span<const Inequality> inequalities, const SweepSpec& sweep,
                        const RecordSink& sink = {});

struct RefinedMax {
  double param = 0;  // radians
  double violation = 0;
};

/// Golden-section refinement of a 1-D sweep's maximum for one inequality
/// inside [x_{i-1}, x_{i+1}] around the best grid point i.
RefinedMax refine_max(const Inequality& q, const SweepSpec& sweep);

void write_csv_header(std::ostream& out, const SweepSpec& sweep);
void write_csv_row(std::ostream& out, const ViolationRecord& r);

/// JSON block: max violation, argmax, per-point violated counts.
std::string summary_json(const ScanSummary& summary, const SweepSpec& sweep);

}  // namespace corrpoly
