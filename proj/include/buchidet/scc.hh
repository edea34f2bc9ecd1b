#pragma once

#include <cstdint>
#include <vector>

namespace buchidet {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

/// Strongly connected components of a directed graph.
struct SccDecomposition {
  std::vector<std::uint32_t> comp_of;
  /// members[c] lists the nodes of component c in ascending order.
  std::vector<std::vector<std::uint32_t>> members;
  /// Component indices such that every edge between different components
  /// goes from an earlier to a later entry.
  std::vector<std::uint32_t> topo_order;
  /// True if the component contains at least one edge (a cycle).
  std::vector<bool> nontrivial;

  [[nodiscard]] std::size_t size() const { return members.size(); }
};

/// Iterative Tarjan; components are numbered in the order Tarjan completes
/// them (bottom components first).
[[nodiscard]] SccDecomposition tarjan_scc(Adjacency const& graph);

/// Nodes reachable from `roots` (including the roots).
[[nodiscard]] std::vector<bool> reachable_from(Adjacency const& graph, std::vector<std::uint32_t> const& roots);

[[nodiscard]] Adjacency reverse_graph(Adjacency const& graph);

}  // namespace buchidet
