#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corrpoly/inequality.hpp"
#include "corrpoly/scenario.hpp"

namespace corrpoly {

/// Event permutation as an index map: event i goes to event perm[i].
using EventPermutation = std::vector<std::size_t>;

/// Complement the events in `complement_mask` (bit i = event i), then permute.
/// On a truth assignment t this is  t -> perm(t xor mask).
struct SymmetryOp {
  EventPermutation perm;
  std::uint64_t complement_mask = 0;

  static SymmetryOp identity(std::size_t num_events);

  /// (this after first): apply `first`, then `*this`.
  SymmetryOp after(const SymmetryOp& first) const;
  SymmetryOp inverse() const;

  auto operator<=>(const SymmetryOp&) const = default;
};

/// Which generator families to include; see default_generators.
struct GroupSpec {
  bool complements = true;
  bool setting_swaps = false;
  bool party_swaps = false;

  static GroupSpec trivial() { return {false, false, false}; }
  static GroupSpec complementations() { return {true, false, false}; }
  static GroupSpec permutations() { return {false, true, true}; }
  static GroupSpec full() { return {true, true, true}; }
};

struct NamedGenerator {
  std::string name;  // "c:A1", "s:A1,A2", "p:A,B"
  SymmetryOp op;
};

struct SymmetryGroup {
  std::vector<NamedGenerator> generators;
  std::vector<SymmetryOp> elements;  // sorted; elements.front() is the identity
  std::size_t order() const { return elements.size(); }
};

/// Basis-level action of event complementation and permutation on
/// inequalities and truth assignments for a fixed scenario.
class SymmetryAction {
 public:
  explicit SymmetryAction(const Scenario& s);

  const Scenario& scenario() const { return *scenario_; }

  /// Substitutes P(M) -> P(M \ e) - P(M) for every basis monomial M holding
  /// e (the constant 1 for M = {e}). Involution. Throws
  /// MissingCompanionMonomial when the basis is not closed under it.
  Inequality complement(const Inequality& q, std::size_t event) const;

  /// Reindexes along the induced basis permutation. Throws BasisNotClosed.
  Inequality permute(const Inequality& q, const EventPermutation& perm) const;

  Inequality apply(const SymmetryOp& g, const Inequality& q) const;

  TruthAssignment apply(const SymmetryOp& g, const TruthAssignment& t) const;

  /// Whether complementing `event` maps the basis onto itself.
  bool complement_closed(std::size_t event) const;
  /// Basis index map induced by `perm`, or nullopt when not closed.
  std::optional<std::vector<std::size_t>> basis_permutation(const EventPermutation& perm) const;

 private:
  const Scenario* scenario_;
  // companion_[e][k]: for basis monomial k containing event e, index of k\e
  // (or kConstant for k = {e}); kAbsent when k does not contain e; kMissing
  // when k contains e but k\e is not in the basis.
  std::vector<std::vector<std::size_t>> companion_;
};

inline constexpr std::size_t kConstant = static_cast<std::size_t>(-1);
inline constexpr std::size_t kAbsent = static_cast<std::size_t>(-2);
inline constexpr std::size_t kMissing = static_cast<std::size_t>(-3);

Inequality complement_event(const Scenario& s, const Inequality& q, const EventId& e);
Inequality permute_events(const Scenario& s, const Inequality& q, const EventPermutation& perm);

/// Generators: a complementation per event; adjacent setting swaps
/// within each party; adjacent party swaps (setting i to setting i) between
/// parties with equal setting counts. Permutations that do not map the basis
/// onto itself are dropped; complementations that do not are an error
/// (MissingCompanionMonomial).
std::vector<NamedGenerator> default_generators(const Scenario& s, const GroupSpec& spec);

/// Closure under composition. Throws BasisNotClosed for a generator whose
/// permutation does not preserve the basis, ResourceExhausted past `cap`.
SymmetryGroup generate_group(const Scenario& s, std::vector<NamedGenerator> generators,
                             std::size_t cap = 1'000'000);

struct Orbit {
  Inequality representative;       // coefficient-order minimum
  std::vector<Inequality> members;  // coefficient order
  std::size_t stabilizer_size = 0;
  /// Per member, the generator word taking the representative to it
  /// (filled only when requested).
  std::vector<std::string> words;
};

struct OrbitReduction {
  std::vector<Orbit> orbits;  // sorted by representative
  /// Orbit members that are not in the input list; zero iff the input set
  /// is closed under the group.
  std::size_t outside_input = 0;
};

/// Partitions the input into orbits by breadth-first search over the
/// group's generators.
OrbitReduction orbit_reduce(const Scenario& s, std::span<const Inequality> inequalities,
                            const SymmetryGroup& group, bool with_words = false);

/// Checks that every group element maps the set onto itself.
bool set_is_closed(const Scenario& s, std::span<const Inequality> inequalities,
                   const SymmetryGroup& group);

}  // namespace corrpoly
