#pragma once

#include <cstdint>
#include <vector>

#include "buchidet/analysis.hh"
#include "buchidet/determinizer.hh"

namespace buchidet {

/// Result of exploring one powerset SCC.
struct PartialDpa {
  Exploration ex;
  /// powerset node index per fragment state
  std::vector<std::uint32_t> node;
  /// powerset node indices each fragment state was reached with
  std::vector<std::vector<std::uint32_t>> observed;
};

/// Explores the determinization restricted to powerset SCC `scc`, starting
/// from `start` (tagged with powerset node `start_node`). Transitions leaving
/// the SCC become holes. States are interned by macrostate, or by
/// (macrostate, node) when `key_by_node` is set.
[[nodiscard]] PartialDpa determinize_powerset_scc(DetContext const& ctx, PowersetStructure const& ps,
                                                  std::uint32_t scc, Macrostate const& start,
                                                  std::uint32_t start_node,
                                                  std::function<void(std::uint32_t node, Macrostate const&)> on_hole = {},
                                                  bool key_by_node = false);

/// Smallest bottom SCC of the fragment's internal transition graph whose
/// observed nodes include every node of `required` (ties: smallest minimal
/// state id). Returned in ascending id order; empty if no bottom SCC
/// qualifies.
[[nodiscard]] std::vector<std::uint32_t> select_kept_bottom(PartialDpa const& fragment,
                                                            std::vector<std::uint32_t> const& required = {});

/// Topological optimization: one DPA SCC per powerset SCC, stitched through
/// powerset-node representatives.
[[nodiscard]] Dpa determinize_with_topo(Nba const& trimmed, DetConfig const& cfg);

}  // namespace buchidet
