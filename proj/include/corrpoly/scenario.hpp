#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrpoly/rational.hpp"

namespace corrpoly {

/// One dichotomic event, e.g. A2 = party "A", setting 2.
struct EventId {
  std::string party;
  int setting = 1;

  auto operator<=>(const EventId&) const = default;

  std::string str() const { return party + std::to_string(setting); }

  /// Accepts "A1", "B12", "Alice3": a non-empty non-digit prefix followed by a positive integer.
  static EventId parse(std::string_view text);
};

/// A nonempty, duplicate-free set of events kept in canonical (party, setting) order.
class Monomial {
 public:
  explicit Monomial(std::vector<EventId> events);

  /// Parses a concatenation such as "A1B2C1".
  static Monomial parse(std::string_view text);

  const std::vector<EventId>& events() const { return events_; }
  std::size_t degree() const { return events_.size(); }
  bool is_single() const { return events_.size() == 1; }
  bool contains(const EventId& e) const;

  /// The monomial with `e` removed; nullopt when that leaves the empty set.
  std::optional<Monomial> without(const EventId& e) const;

  std::string str() const;

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<EventId> events_;
};

/// Elementary events plus the selected joints. The coordinate basis is the
/// singles in event order followed by the joints in declaration order.
class Scenario {
 public:
  Scenario() = default;

  const std::string& name() const { return name_; }
  const std::vector<EventId>& events() const { return events_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t num_events() const { return events_.size(); }
  std::size_t dimension() const { return basis_.size(); }

  std::optional<std::size_t> index_of(const Monomial& m) const;
  std::optional<std::size_t> event_index(const EventId& e) const;

  /// Distinct party labels in event order.
  std::vector<std::string> parties() const;

  /// Space separated basis labels, as written in file headers.
  std::string basis_string() const;

  bool operator==(const Scenario& other) const { return basis_ == other.basis_; }

 private:
  friend Scenario build_scenario(std::vector<EventId>, std::vector<Monomial>, std::string);

  std::string name_;
  std::vector<EventId> events_;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t> index_;
  std::map<EventId, std::size_t> event_index_;
};

/// Errors: DuplicateEvent, UnknownEventInMonomial, DuplicateMonomial, EmptyInput.
Scenario build_scenario(std::vector<EventId> events, std::vector<Monomial> joints,
                        std::string name = {});

/// 0/1 value per scenario event, indexed like Scenario::events().
using TruthAssignment = std::vector<std::uint8_t>;

inline constexpr std::size_t kDefaultMaxEvents = 20;

Point vertex_from_assignment(const Scenario& s, const TruthAssignment& t);

/// Integer form of vertex_from_assignment, used by the hot loops.
std::vector<int> vertex_row(const Scenario& s, const TruthAssignment& t);

/// Assignment number `index` in lexicographic order; the first event is the
/// most significant bit, so index 0 is all-false and 2^n - 1 is all-true.
TruthAssignment assignment_at(std::size_t num_events, std::uint64_t index);

/// All 2^n vertices in lexicographic assignment order. Parallel over the
/// assignment space; order is independent of the worker count.
std::vector<std::vector<int>> enumerate_vertex_rows(const Scenario& s,
                                                    std::size_t max_events = kDefaultMaxEvents);
std::vector<Point> enumerate_vertices(const Scenario& s,
                                      std::size_t max_events = kDefaultMaxEvents);

/// Serial reference for enumerate_vertex_rows.
std::vector<std::vector<int>> enumerate_vertex_rows_serial(
    const Scenario& s, std::size_t max_events = kDefaultMaxEvents);

}  // namespace corrpoly
