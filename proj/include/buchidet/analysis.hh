#pragma once

#include <cstdint>
#include <vector>

#include "buchidet/automata.hh"
#include "buchidet/scc.hh"

namespace buchidet {

enum class SccKind { trivial, rejecting, accepting, mixed };

[[nodiscard]] char const* to_string(SccKind k);

/// SCC decomposition of an NBA together with the acceptance classification.
/// A trivial SCC (single state without self-loop) is also rejecting.
struct SccInfo {
  std::vector<std::uint32_t> scc_of;
  std::vector<StateSet> members;
  /// Edges of the condensation go from earlier to later entries.
  std::vector<std::uint32_t> topo_order;
  std::vector<SccKind> kind;
  std::vector<bool> deterministic;

  [[nodiscard]] std::size_t size() const { return members.size(); }
  [[nodiscard]] bool is_rejecting(std::uint32_t c) const {
    return kind[c] == SccKind::trivial || kind[c] == SccKind::rejecting;
  }
  /// Union of all states in rejecting (incl. trivial) SCCs.
  [[nodiscard]] StateSet rejecting_states() const;
  /// Union of all states in accepting SCCs.
  [[nodiscard]] StateSet accepting_states() const;
  /// True iff no SCC is mixed.
  [[nodiscard]] bool weak() const;
};

[[nodiscard]] Adjacency state_graph(Nba const& nba);

[[nodiscard]] SccInfo analyze_sccs(Nba const& nba);

/// Removes states unreachable from the initial states and states that cannot
/// reach a cycle through an accepting state. Indices are compacted in
/// ascending order of the surviving states.
[[nodiscard]] Nba trim(Nba const& nba);

/// Accepting states with a self-loop on every symbol.
[[nodiscard]] StateSet true_loop_states(Nba const& nba);

/// Direct simulation preorder. `above[p]` holds every q with (p,q) in the
/// relation, i.e. L(p) is contained in L(q).
struct SimulationRelation {
  std::vector<StateSet> above;

  [[nodiscard]] bool contains(state_t p, state_t q) const { return above[p].contains(q); }
  [[nodiscard]] std::size_t pair_count() const;
};

[[nodiscard]] SimulationRelation compute_direct_simulation(Nba const& nba);

/// Subset construction reachable from the initial states. The empty set is an
/// ordinary node when reachable.
struct PowersetStructure {
  std::vector<StateSet> nodes;
  std::size_t symbol_count = 0;
  /// delta[node * symbol_count + symbol]
  std::vector<std::uint32_t> delta;
  std::uint32_t initial = 0;
  SccDecomposition scc;

  [[nodiscard]] std::uint32_t succ(std::uint32_t node, symbol_t a) const {
    return delta[node * symbol_count + a];
  }
  /// Index of the node for `set`, or -1 if the set is not a node.
  [[nodiscard]] std::int64_t find(StateSet const& set) const;
};

[[nodiscard]] PowersetStructure build_powerset_structure(Nba const& nba);

}  // namespace buchidet
