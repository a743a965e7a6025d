#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corrpoly/angle.hpp"
#include "corrpoly/inequality.hpp"
#include "corrpoly/scenario.hpp"

namespace corrpoly {

/// Probabilities in scenario basis order. `exact[k]` is filled when the
/// model value is a known rational; `defined[k]` is false for monomials the
/// source did not assign.
struct ProbabilityAssignment {
  std::vector<double> values;
  std::vector<std::optional<Rational>> exact;
  std::vector<bool> defined;

  std::size_t size() const { return values.size(); }
};

using AngleMap = std::map<EventId, Angle>;

/// Detector phase per event of the three-particle interferometer.
struct GhzParams {
  AngleMap angles;

  /// phi_{l,1} = phi1 and phi_{l,2} = phi2 for every party l in A, B, C.
  static GhzParams uniform(const Angle& phi1, const Angle& phi2);
};

enum class Parity {
  Parallel,  // both up or both down: (1/2) sin^2(dtheta/2)
  Opposite,  // up/down or down/up: (1/2) cos^2(dtheta/2)
};

struct SingletParams {
  AngleMap directions;
  Parity parity = Parity::Parallel;

  /// theta(A_i) = theta(B_i) = 0, 2pi/3, 4pi/3.
  static SingletParams symmetric(Parity parity);
  /// A1 = 0, B1 = -pi/4, A2 = pi/2, B2 = pi/4, A3 = 2pi/3, B3 = pi/3.
  static SingletParams asymmetric(Parity parity);
};

/// Singles 1/2, pairs 1/4, triples (1/8)(1 - sin(phi_a + phi_b + phi_c)).
/// Errors: UnsupportedMonomial (degree > 3, or a joint within one party),
/// MissingProbability (a triple's event has no angle).
ProbabilityAssignment ghz_assignment(const Scenario& s, const GhzParams& params);

/// Singles 1/2; cross-party pairs from the singlet formulas with
/// dtheta = theta(A_i) - theta(B_j). Errors: UnsupportedMonomial,
/// MissingProbability.
ProbabilityAssignment singlet_assignment(const Scenario& s, const SingletParams& params);

/// A classical point given exactly (e.g. a vertex mixture).
ProbabilityAssignment exact_assignment(const Point& p);

inline constexpr double kViolationThreshold = 1e-9;

struct ViolationRecord {
  std::size_t inequality_id = 0;  // 1-based line number in the inequality file
  std::vector<double> params;     // grid coordinates, radians
  std::int64_t bound = 0;
  double value = 0;
  double violation = 0;  // value - bound
  bool violated = false;
  std::optional<Rational> exact_value;
};

/// value = coeffs . assignment. When every needed probability is exact the
/// decision is made on the exact rational value, otherwise on
/// violation > kViolationThreshold. Errors: MissingProbability,
/// DimensionMismatch.
ViolationRecord evaluate(const Inequality& q, const ProbabilityAssignment& a,
                         std::size_t id = 0);

/// Errors: MissingProbability when a needed value is not exact.
Rational evaluate_exact(const Inequality& q, const ProbabilityAssignment& a);

}  // namespace corrpoly
