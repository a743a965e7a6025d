#include "corrpoly/quantum.hpp"

#include <cmath>

#include "corrpoly/errors.hpp"

namespace corrpoly {

GhzParams GhzParams::uniform(const Angle& phi1, const Angle& phi2) {
  GhzParams p;
  for (const char* party : {"A", "B", "C"}) {
    p.angles[{party, 1}] = phi1;
    p.angles[{party, 2}] = phi2;
  }
  return p;
}

SingletParams SingletParams::symmetric(Parity parity) {
  SingletParams p;
  p.parity = parity;
  const Angle dirs[] = {Angle::pi_times(0), Angle::pi_times(Rational(2, 3)),
                        Angle::pi_times(Rational(4, 3))};
  for (int i = 0; i < 3; ++i) {
    p.directions[{"A", i + 1}] = dirs[i];
    p.directions[{"B", i + 1}] = dirs[i];
  }
  return p;
}

SingletParams SingletParams::asymmetric(Parity parity) {
  SingletParams p;
  p.parity = parity;
  p.directions[{"A", 1}] = Angle::pi_times(0);
  p.directions[{"B", 1}] = Angle::pi_times(Rational(-1, 4));
  p.directions[{"A", 2}] = Angle::pi_times(Rational(1, 2));
  p.directions[{"B", 2}] = Angle::pi_times(Rational(1, 4));
  p.directions[{"A", 3}] = Angle::pi_times(Rational(2, 3));
  p.directions[{"B", 3}] = Angle::pi_times(Rational(1, 3));
  return p;
}

namespace {

ProbabilityAssignment blank(std::size_t n) {
  ProbabilityAssignment a;
  a.values.assign(n, 0.0);
  a.exact.assign(n, std::nullopt);
  a.defined.assign(n, true);
  return a;
}

void set_exact(ProbabilityAssignment& a, std::size_t k, const Rational& q) {
  a.values[k] = static_cast<double>(q);
  a.exact[k] = q;
}

bool distinct_parties(const Monomial& m) {
  const auto& ev = m.events();
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      if (ev[i].party == ev[j].party) return false;
  return true;
}

const Angle& angle_of(const AngleMap& angles, const EventId& e) {
  auto it = angles.find(e);
  if (it == angles.end()) throw Error(Errc::MissingProbability, "no angle for " + e.str());
  return it->second;
}

}  // namespace

ProbabilityAssignment ghz_assignment(const Scenario& s, const GhzParams& params) {
  auto a = blank(s.dimension());
  for (std::size_t k = 0; k < s.dimension(); ++k) {
    const auto& m = s.basis()[k];
    if (m.degree() > 3 || !distinct_parties(m))
      throw Error(Errc::UnsupportedMonomial, m.str() + " is not defined by the GHZ model");
    if (m.degree() == 1) {
      set_exact(a, k, Rational(1, 2));
    } else if (m.degree() == 2) {
      set_exact(a, k, Rational(1, 4));
    } else {
      Angle sum;
      for (const auto& e : m.events()) sum = sum + angle_of(params.angles, e);
      if (auto sn = sum.exact_sin())
        set_exact(a, k, (1 - *sn) / 8);
      else
        a.values[k] = (1.0 - sum.sin()) / 8.0;
    }
  }
  return a;
}

ProbabilityAssignment singlet_assignment(const Scenario& s, const SingletParams& params) {
  auto a = blank(s.dimension());
  const int sign = params.parity == Parity::Parallel ? -1 : 1;
  for (std::size_t k = 0; k < s.dimension(); ++k) {
    const auto& m = s.basis()[k];
    if (m.degree() == 1) {
      set_exact(a, k, Rational(1, 2));
      continue;
    }
    if (m.degree() != 2 || !distinct_parties(m))
      throw Error(Errc::UnsupportedMonomial, m.str() + " is not defined by the singlet model");
    Angle delta = angle_of(params.directions, m.events()[0]) - angle_of(params.directions, m.events()[1]);
    // (1/2) sin^2(d/2) = (1 - cos d) / 4,  (1/2) cos^2(d/2) = (1 + cos d) / 4
    if (auto c = delta.exact_cos())
      set_exact(a, k, (1 + sign * *c) / 4);
    else
      a.values[k] = (1.0 + sign * delta.cos()) / 4.0;
  }
  return a;
}

ProbabilityAssignment exact_assignment(const Point& p) {
  auto a = blank(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) set_exact(a, k, p[k]);
  return a;
}

ViolationRecord evaluate(const Inequality& q, const ProbabilityAssignment& a, std::size_t id) {
  if (q.coeffs.size() != a.size())
    throw Error(Errc::DimensionMismatch, "inequality and assignment lengths differ");
  ViolationRecord r;
  r.inequality_id = id;
  r.bound = q.bound;
  bool all_exact = true;
  double value = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (q.coeffs[k] == 0) continue;
    if (!a.defined[k])
      throw Error(Errc::MissingProbability, "coordinate " + std::to_string(k) + " is unassigned");
    value += static_cast<double>(q.coeffs[k]) * a.values[k];
    all_exact = all_exact && a.exact[k].has_value();
  }
  if (all_exact) {
    Rational exact = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (q.coeffs[k] != 0) exact += q.coeffs[k] * *a.exact[k];
    r.value = static_cast<double>(exact);
    r.violation = static_cast<double>(exact - q.bound);
    r.violated = exact > q.bound;
    r.exact_value = std::move(exact);
  } else {
    r.value = value;
    r.violation = value - static_cast<double>(q.bound);
    r.violated = r.violation > kViolationThreshold;
  }
  return r;
}

Rational evaluate_exact(const Inequality& q, const ProbabilityAssignment& a) {
  if (q.coeffs.size() != a.size())
    throw Error(Errc::DimensionMismatch, "inequality and assignment lengths differ");
  Rational sum = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (q.coeffs[k] == 0) continue;
    if (!a.defined[k] || !a.exact[k])
      throw Error(Errc::MissingProbability, "coordinate " + std::to_string(k) + " is not exact");
    sum += q.coeffs[k] * *a.exact[k];
  }
  return sum;
}

}  // namespace corrpoly
