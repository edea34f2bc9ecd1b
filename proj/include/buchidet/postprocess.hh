#pragma once

#include <vector>

#include "buchidet/automata.hh"

namespace buchidet {

/// Relabels priorities with as few distinct values as possible while keeping
/// the parity of the least priority on every cycle.
[[nodiscard]] Dpa minimize_priorities(Dpa const& dpa);

/// Coarsest partition of states that agree on (priority, successor block)
/// for every symbol, computed by iterative refinement.
[[nodiscard]] std::vector<std::uint32_t> mealy_partition(Dpa const& dpa);

/// Quotient by mealy_partition, states renumbered in BFS order from the
/// initial state.
[[nodiscard]] Dpa minimize_mealy(Dpa const& dpa);

/// minimize_priorities, then minimize_mealy, then priority compaction.
[[nodiscard]] Dpa postprocess(Dpa const& dpa);

/// Keeps only states reachable from the initial state, renumbered in BFS
/// order.
[[nodiscard]] Dpa restrict_to_reachable(Dpa const& dpa);

}  // namespace buchidet
