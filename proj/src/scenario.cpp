#include "corrpoly/scenario.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <set>

#include "corrpoly/errors.hpp"

namespace corrpoly {

EventId EventId::parse(std::string_view text) {
  std::size_t split = 0;
  while (split < text.size() && std::isalpha(static_cast<unsigned char>(text[split]))) ++split;
  if (split == 0 || split == text.size())
    throw Error(Errc::Parse, "bad event label '" + std::string(text) + "'");
  int setting = 0;
  for (std::size_t i = split; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw Error(Errc::Parse, "bad event label '" + std::string(text) + "'");
    setting = setting * 10 + (text[i] - '0');
  }
  if (setting <= 0) throw Error(Errc::Parse, "setting index must be positive in '" + std::string(text) + "'");
  return EventId{std::string(text.substr(0, split)), setting};
}

Monomial::Monomial(std::vector<EventId> events) : events_(std::move(events)) {
  if (events_.empty()) throw Error(Errc::EmptyInput, "monomial needs at least one event");
  std::sort(events_.begin(), events_.end());
  if (std::adjacent_find(events_.begin(), events_.end()) != events_.end())
    throw Error(Errc::DuplicateEvent, "repeated event in monomial");
}

Monomial Monomial::parse(std::string_view text) {
  // Events are split where a digit is followed by a non-digit.
  std::vector<EventId> events;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= text.size(); ++i) {
    bool boundary = i == text.size() ||
                    (std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
                     !std::isdigit(static_cast<unsigned char>(text[i])));
    if (boundary) {
      events.push_back(EventId::parse(text.substr(start, i - start)));
      start = i;
    }
  }
  if (events.empty()) throw Error(Errc::Parse, "empty monomial");
  return Monomial(std::move(events));
}

bool Monomial::contains(const EventId& e) const {
  return std::binary_search(events_.begin(), events_.end(), e);
}

std::optional<Monomial> Monomial::without(const EventId& e) const {
  std::vector<EventId> rest;
  for (const auto& x : events_)
    if (x != e) rest.push_back(x);
  if (rest.empty()) return std::nullopt;
  return Monomial(std::move(rest));
}

std::string Monomial::str() const {
  std::string out;
  for (const auto& e : events_) out += e.str();
  return out;
}

std::optional<std::size_t> Scenario::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Scenario::event_index(const EventId& e) const {
  auto it = event_index_.find(e);
  if (it == event_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Scenario::parties() const {
  std::vector<std::string> out;
  for (const auto& e : events_)
    if (out.empty() || out.back() != e.party) out.push_back(e.party);
  return out;
}

std::string Scenario::basis_string() const {
  std::string out;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) out += ' ';
    out += basis_[i].str();
  }
  return out;
}

Scenario build_scenario(std::vector<EventId> events, std::vector<Monomial> joints,
                        std::string name) {
  if (events.empty()) throw Error(Errc::EmptyInput, "scenario needs at least one event");
  std::sort(events.begin(), events.end());
  if (auto dup = std::adjacent_find(events.begin(), events.end()); dup != events.end())
    throw Error(Errc::DuplicateEvent, dup->str());

  Scenario s;
  s.name_ = std::move(name);
  s.events_ = std::move(events);
  for (std::size_t i = 0; i < s.events_.size(); ++i) {
    s.event_index_.emplace(s.events_[i], i);
    s.basis_.push_back(Monomial({s.events_[i]}));
    s.index_.emplace(s.basis_.back(), i);
  }
  for (auto& m : joints) {
    for (const auto& e : m.events())
      if (!s.event_index_.count(e))
        throw Error(Errc::UnknownEventInMonomial, e.str() + " in " + m.str());
    if (s.index_.count(m)) throw Error(Errc::DuplicateMonomial, m.str());
    s.index_.emplace(m, s.basis_.size());
    s.basis_.push_back(std::move(m));
  }
  return s;
}

namespace {

// Per basis coordinate, the event indices whose product it is.
std::vector<std::vector<std::size_t>> factor_table(const Scenario& s) {
  std::vector<std::vector<std::size_t>> table;
  table.reserve(s.dimension());
  for (const auto& m : s.basis()) {
    std::vector<std::size_t> idx;
    for (const auto& e : m.events()) idx.push_back(*s.event_index(e));
    table.push_back(std::move(idx));
  }
  return table;
}

std::vector<int> row_from_table(const std::vector<std::vector<std::size_t>>& table,
                                const TruthAssignment& t) {
  std::vector<int> row(table.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    int v = 1;
    for (auto e : table[k]) v &= t[e];
    row[k] = v;
  }
  return row;
}

void check_size(const Scenario& s, std::size_t max_events) {
  if (s.num_events() > max_events || s.num_events() >= 63)
    throw Error(Errc::ScenarioTooLarge, std::to_string(s.num_events()) + " events exceeds limit " +
                                            std::to_string(max_events));
}

}  // namespace

TruthAssignment assignment_at(std::size_t num_events, std::uint64_t index) {
  TruthAssignment t(num_events);
  for (std::size_t j = 0; j < num_events; ++j) t[j] = (index >> (num_events - 1 - j)) & 1u;
  return t;
}

std::vector<int> vertex_row(const Scenario& s, const TruthAssignment& t) {
  if (t.size() != s.num_events())
    throw Error(Errc::DimensionMismatch, "assignment does not cover every event");
  return row_from_table(factor_table(s), t);
}

Point vertex_from_assignment(const Scenario& s, const TruthAssignment& t) {
  auto row = vertex_row(s, t);
  return Point(row.begin(), row.end());
}

std::vector<std::vector<int>> enumerate_vertex_rows_serial(const Scenario& s,
                                                           std::size_t max_events) {
  check_size(s, max_events);
  const auto table = factor_table(s);
  const std::uint64_t count = std::uint64_t{1} << s.num_events();
  std::vector<std::vector<int>> rows(count);
  for (std::uint64_t i = 0; i < count; ++i)
    rows[i] = row_from_table(table, assignment_at(s.num_events(), i));
  return rows;
}

std::vector<std::vector<int>> enumerate_vertex_rows(const Scenario& s, std::size_t max_events) {
  check_size(s, max_events);
  const auto table = factor_table(s);
  const std::int64_t count = std::int64_t{1} << s.num_events();
  std::vector<std::vector<int>> rows(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i)
    rows[i] = row_from_table(table, assignment_at(s.num_events(), static_cast<std::uint64_t>(i)));
#ifndef NDEBUG
  // Singles coordinates alone already separate the vertices.
  std::set<std::vector<int>> seen(rows.begin(), rows.end());
  assert(seen.size() == rows.size());
#endif
  return rows;
}

std::vector<Point> enumerate_vertices(const Scenario& s, std::size_t max_events) {
  auto rows = enumerate_vertex_rows(s, max_events);
  std::vector<Point> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

}  // namespace corrpoly
