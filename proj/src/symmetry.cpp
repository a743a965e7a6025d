#include "corrpoly/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "corrpoly/errors.hpp"

namespace corrpoly {

SymmetryOp SymmetryOp::identity(std::size_t num_events) {
  SymmetryOp g;
  g.perm.resize(num_events);
  for (std::size_t i = 0; i < num_events; ++i) g.perm[i] = i;
  return g;
}

SymmetryOp SymmetryOp::after(const SymmetryOp& first) const {
  // perm2(perm1(t ^ S1) ^ S2) = (perm2 perm1)(t ^ S1 ^ perm1^-1(S2))
  SymmetryOp g;
  g.perm.resize(perm.size());
  std::uint64_t pulled_back = 0;
  for (std::size_t e = 0; e < perm.size(); ++e) {
    g.perm[e] = perm[first.perm[e]];
    if ((complement_mask >> first.perm[e]) & 1u) pulled_back |= std::uint64_t{1} << e;
  }
  g.complement_mask = first.complement_mask ^ pulled_back;
  return g;
}

SymmetryOp SymmetryOp::inverse() const {
  SymmetryOp g;
  g.perm.resize(perm.size());
  for (std::size_t e = 0; e < perm.size(); ++e) {
    g.perm[perm[e]] = e;
    if ((complement_mask >> e) & 1u) g.complement_mask |= std::uint64_t{1} << perm[e];
  }
  return g;
}

SymmetryAction::SymmetryAction(const Scenario& s) : scenario_(&s) {
  if (s.num_events() > 64)
    throw Error(Errc::ScenarioTooLarge, "symmetry masks hold at most 64 events");
  const auto& basis = s.basis();
  companion_.assign(s.num_events(), std::vector<std::size_t>(basis.size(), kAbsent));
  for (std::size_t e = 0; e < s.num_events(); ++e) {
    const auto& ev = s.events()[e];
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!basis[k].contains(ev)) continue;
      auto rest = basis[k].without(ev);
      if (!rest) {
        companion_[e][k] = kConstant;
      } else if (auto idx = s.index_of(*rest)) {
        companion_[e][k] = *idx;
      } else {
        companion_[e][k] = kMissing;
      }
    }
  }
}

bool SymmetryAction::complement_closed(std::size_t event) const {
  const auto& row = companion_.at(event);
  return std::none_of(row.begin(), row.end(), [](std::size_t c) { return c == kMissing; });
}

Inequality SymmetryAction::complement(const Inequality& q, std::size_t event) const {
  const auto& comp = companion_.at(event);
  if (q.coeffs.size() != comp.size())
    throw Error(Errc::DimensionMismatch, "inequality does not match the scenario basis");
  for (std::size_t k = 0; k < comp.size(); ++k)
    if (comp[k] == kMissing)
      throw Error(Errc::MissingCompanionMonomial,
                  scenario_->basis()[k].str() + " without " + scenario_->events()[event].str());
  Inequality r = q;
  for (std::size_t k = 0; k < comp.size(); ++k)
    if (comp[k] != kAbsent) r.coeffs[k] = -q.coeffs[k];
  for (std::size_t k = 0; k < comp.size(); ++k) {
    if (comp[k] == kAbsent || q.coeffs[k] == 0) continue;
    if (comp[k] == kConstant)
      r.bound -= q.coeffs[k];
    else
      r.coeffs[comp[k]] += q.coeffs[k];
  }
  return canonicalize(std::move(r));
}

std::optional<std::vector<std::size_t>> SymmetryAction::basis_permutation(
    const EventPermutation& perm) const {
  const auto& s = *scenario_;
  if (perm.size() != s.num_events()) return std::nullopt;
  std::vector<bool> hit(s.num_events(), false);
  for (auto p : perm) {
    if (p >= s.num_events() || hit[p]) return std::nullopt;
    hit[p] = true;
  }
  std::vector<std::size_t> image(s.dimension());
  for (std::size_t k = 0; k < s.dimension(); ++k) {
    std::vector<EventId> mapped;
    for (const auto& e : s.basis()[k].events()) mapped.push_back(s.events()[perm[*s.event_index(e)]]);
    auto idx = s.index_of(Monomial(std::move(mapped)));
    if (!idx) return std::nullopt;
    image[k] = *idx;
  }
  return image;
}

Inequality SymmetryAction::permute(const Inequality& q, const EventPermutation& perm) const {
  auto image = basis_permutation(perm);
  if (!image) throw Error(Errc::BasisNotClosed, "permutation does not map the basis onto itself");
  if (q.coeffs.size() != image->size())
    throw Error(Errc::DimensionMismatch, "inequality does not match the scenario basis");
  Inequality r;
  r.bound = q.bound;
  r.coeffs.assign(q.coeffs.size(), 0);
  for (std::size_t k = 0; k < image->size(); ++k) r.coeffs[(*image)[k]] = q.coeffs[k];
  return canonicalize(std::move(r));
}

Inequality SymmetryAction::apply(const SymmetryOp& g, const Inequality& q) const {
  Inequality r = q;
  for (std::size_t e = 0; e < g.perm.size(); ++e)
    if ((g.complement_mask >> e) & 1u) r = complement(r, e);
  return permute(r, g.perm);
}

TruthAssignment SymmetryAction::apply(const SymmetryOp& g, const TruthAssignment& t) const {
  TruthAssignment out(t.size());
  for (std::size_t e = 0; e < t.size(); ++e)
    out[g.perm[e]] = static_cast<std::uint8_t>(t[e] ^ ((g.complement_mask >> e) & 1u));
  return out;
}

Inequality complement_event(const Scenario& s, const Inequality& q, const EventId& e) {
  auto idx = s.event_index(e);
  if (!idx) throw Error(Errc::UnknownEventInMonomial, e.str() + " is not a scenario event");
  return SymmetryAction(s).complement(q, *idx);
}

Inequality permute_events(const Scenario& s, const Inequality& q, const EventPermutation& perm) {
  return SymmetryAction(s).permute(q, perm);
}

std::vector<NamedGenerator> default_generators(const Scenario& s, const GroupSpec& spec) {
  SymmetryAction action(s);
  std::vector<NamedGenerator> gens;
  const auto& events = s.events();
  if (spec.complements) {
    for (std::size_t e = 0; e < events.size(); ++e) {
      if (!action.complement_closed(e))
        throw Error(Errc::MissingCompanionMonomial,
                    "basis is not closed under complementing " + events[e].str());
      auto g = SymmetryOp::identity(events.size());
      g.complement_mask = std::uint64_t{1} << e;
      gens.push_back({"c:" + events[e].str(), std::move(g)});
    }
  }
  std::map<std::string, std::vector<std::size_t>> by_party;
  for (std::size_t e = 0; e < events.size(); ++e) by_party[events[e].party].push_back(e);
  if (spec.setting_swaps) {
    for (const auto& [party, idx] : by_party) {
      for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
        auto g = SymmetryOp::identity(events.size());
        std::swap(g.perm[idx[i]], g.perm[idx[i + 1]]);
        if (!action.basis_permutation(g.perm)) continue;
        gens.push_back({"s:" + events[idx[i]].str() + "," + events[idx[i + 1]].str(), std::move(g)});
      }
    }
  }
  if (spec.party_swaps) {
    for (auto a = by_party.begin(); a != by_party.end(); ++a) {
      for (auto b = std::next(a); b != by_party.end(); ++b) {
        if (a->second.size() != b->second.size()) continue;
        auto g = SymmetryOp::identity(events.size());
        for (std::size_t i = 0; i < a->second.size(); ++i) {
          g.perm[a->second[i]] = b->second[i];
          g.perm[b->second[i]] = a->second[i];
        }
        if (!action.basis_permutation(g.perm)) continue;
        gens.push_back({"p:" + a->first + "," + b->first, std::move(g)});
      }
    }
  }
  return gens;
}

SymmetryGroup generate_group(const Scenario& s, std::vector<NamedGenerator> generators,
                             std::size_t cap) {
  SymmetryAction action(s);
  const std::size_t n = s.num_events();
  for (const auto& gen : generators) {
    if (gen.op.perm.size() != n) throw Error(Errc::DimensionMismatch, "generator " + gen.name);
    if (!action.basis_permutation(gen.op.perm)) throw Error(Errc::BasisNotClosed, gen.name);
    for (std::size_t e = 0; e < n; ++e)
      if (((gen.op.complement_mask >> e) & 1u) && !action.complement_closed(e))
        throw Error(Errc::MissingCompanionMonomial, gen.name);
  }
  SymmetryGroup group;
  group.generators = std::move(generators);
  std::set<SymmetryOp> seen{SymmetryOp::identity(n)};
  std::deque<SymmetryOp> queue{SymmetryOp::identity(n)};
  while (!queue.empty()) {
    auto g = std::move(queue.front());
    queue.pop_front();
    for (const auto& gen : group.generators) {
      auto h = gen.op.after(g);
      if (seen.insert(h).second) {
        if (seen.size() > cap)
          throw Error(Errc::ResourceExhausted, "group order exceeds " + std::to_string(cap));
        queue.push_back(std::move(h));
      }
    }
  }
  group.elements.assign(seen.begin(), seen.end());
  // The identity sorts first: perm 0..n-1 is the smallest permutation, mask 0.
  return group;
}

namespace {

struct Visit {
  std::size_t parent;
  std::size_t generator;
};

// Breadth-first orbit from `start`; optional parent links for words.
std::vector<Inequality> bfs_orbit(const SymmetryAction& action, const SymmetryGroup& group,
                                  const Inequality& start, std::vector<Visit>* links) {
  std::vector<Inequality> orbit{start};
  std::unordered_map<Inequality, std::size_t, InequalityHash> index{{start, 0}};
  if (links) links->assign(1, {0, 0});
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (std::size_t gi = 0; gi < group.generators.size(); ++gi) {
      auto next = action.apply(group.generators[gi].op, orbit[head]);
      if (index.emplace(next, orbit.size()).second) {
        orbit.push_back(std::move(next));
        if (links) links->push_back({head, gi});
      }
    }
  }
  return orbit;
}

}  // namespace

OrbitReduction orbit_reduce(const Scenario& s, std::span<const Inequality> inequalities,
                            const SymmetryGroup& group, bool with_words) {
  SymmetryAction action(s);
  std::unordered_set<Inequality, InequalityHash> input(inequalities.begin(), inequalities.end());
  std::unordered_set<Inequality, InequalityHash> assigned;
  OrbitReduction out;
  for (const auto& q : inequalities) {
    if (assigned.count(q)) continue;
    auto members = bfs_orbit(action, group, q, nullptr);
    Orbit orbit;
    for (const auto& m : members) {
      assigned.insert(m);
      if (!input.count(m)) ++out.outside_input;
    }
    std::sort(members.begin(), members.end(), CoeffOrderLess{});
    orbit.representative = members.front();
    orbit.stabilizer_size = group.order() / members.size();
    if (with_words) {
      std::vector<Visit> links;
      auto from_rep = bfs_orbit(action, group, orbit.representative, &links);
      std::map<Inequality, std::string, CoeffOrderLess> words;
      std::vector<std::string> word_of(from_rep.size());
      for (std::size_t i = 1; i < from_rep.size(); ++i) {
        const auto& prev = word_of[links[i].parent];
        word_of[i] = (prev.empty() ? "" : prev + " ") + group.generators[links[i].generator].name;
      }
      word_of[0] = "e";
      for (std::size_t i = 0; i < from_rep.size(); ++i) words[from_rep[i]] = word_of[i];
      for (const auto& m : members) orbit.words.push_back(words[m]);
    }
    orbit.members = std::move(members);
    out.orbits.push_back(std::move(orbit));
  }
  std::sort(out.orbits.begin(), out.orbits.end(), [](const Orbit& a, const Orbit& b) {
    return coeff_order(a.representative, b.representative) < 0;
  });
  return out;
}

bool set_is_closed(const Scenario& s, std::span<const Inequality> inequalities,
                   const SymmetryGroup& group) {
  SymmetryAction action(s);
  std::unordered_set<Inequality, InequalityHash> set(inequalities.begin(), inequalities.end());
  bool closed = true;
#pragma omp parallel for schedule(dynamic, 16) reduction(&& : closed)
  for (std::int64_t gi = 0; gi < static_cast<std::int64_t>(group.elements.size()); ++gi) {
    if (!closed) continue;
    for (const auto& q : inequalities) {
      if (!set.count(action.apply(group.elements[gi], q))) {
        closed = false;
        break;
      }
    }
  }
  return closed;
}

}  // namespace corrpoly
