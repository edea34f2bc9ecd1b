#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "buchidet/analysis.hh"
#include "buchidet/det_config.hh"
#include "buchidet/macrostate.hh"

namespace buchidet {

/// A set of an intermediate slice during a transition. Fresh sets were created
/// in the current transition and never emit signals.
struct SliceEntry {
  StateSet states;
  rank_t rank = 0;
  bool fresh = false;
};

using IntermediateSlice = std::vector<SliceEntry>;

struct IntermediateMacrostate {
  std::vector<IntermediateSlice> comps;
  StateSet buffer;
};

struct TransitionSignals {
  std::vector<rank_t> good;  // sorted
  std::vector<rank_t> bad;   // sorted
  /// min(good ∪ bad), or |Q|+1 without events
  rank_t k = 0;
  bool has_event = false;
  priority_t priority = 0;
};

/// Successor of a slice on one symbol before relocation. General components
/// split each set into accepting and non-accepting successors (accepting part
/// on the left with a fresh rank) and keep only leftmost occurrences; other
/// modes keep each set whole. `next_fresh` is advanced for every fresh rank.
[[nodiscard]] IntermediateSlice step(RankedSlice const& slice, symbol_t a, Nba const& nba, ComponentMode mode,
                                     rank_t& next_fresh);

/// Moves states that left their component's domain, routes buffer successors
/// into components and restarts an emptied breakpoint component.
/// `buffer_succ` is the successor set of the old buffer.
void relocate(IntermediateMacrostate& im, StateSet const& buffer_succ, ComponentPolicy const& policy,
              rank_t& next_fresh);

/// Removes empty sets and collects good/bad ranks. An emptied set with a live
/// subtree passes its rank to its youngest child, the set directly to its
/// left, which keeps the subtree intact. Priority fields of the returned
/// signals are not filled in.
[[nodiscard]] std::pair<Macrostate, TransitionSignals> prune(IntermediateMacrostate const& im,
                                                             ComponentPolicy const& policy,
                                                             StateSet const& accepting);

/// Fills k and priority: 2k if k is good, 2k-1 otherwise.
void compute_priority(TransitionSignals& sig, std::size_t state_count);

/// Rank interval of the subtree rooted at position `pos` of a slice: first
/// index of the subtree.
[[nodiscard]] std::size_t subtree_begin(std::vector<rank_t> const& ranks, std::size_t pos);

/// Merges sets of rank >= k according to the strategy; sets of smaller rank
/// stay untouched. Only general components are affected.
void merge(Macrostate& m, TransitionSignals const& sig, MergeStrategy strategy, ComponentPolicy const& policy);

/// Compacts ranks to 1..n preserving their global order.
void normalize(Macrostate& m);

/// Inputs of the simulation-based state removal.
struct PruningContext {
  bool external = false;
  bool internal = false;
  SimulationRelation const* sim = nullptr;
  std::vector<std::uint32_t> const* scc_of = nullptr;
  ComponentPolicy const* policy = nullptr;
  /// blocked[i][q]: states p such that some path from q to p leaves domain i
  std::vector<std::vector<StateSet>> blocked;
};

[[nodiscard]] PruningContext make_pruning_context(Nba const& nba, SimulationRelation const& sim, SccInfo const& info,
                                                  ComponentPolicy const& policy, DetConfig const& cfg);

/// Removes ranked states whose language is covered by another ranked state,
/// then drops emptied sets and renormalizes. Returns true if anything was
/// removed. Only sound where no rank carries history yet (initial
/// macrostates).
bool apply_language_pruning(Macrostate& m, PruningContext const& ctx);

/// Same removal on an intermediate macrostate after relocation. Emptied sets
/// stay in place so that prune treats them like any other emptied set.
bool apply_language_pruning(IntermediateMacrostate& im, PruningContext const& ctx);

struct SuccessorResult {
  /// normalized successor without merging
  Macrostate unmerged;
  /// normalized successor after the configured merge
  Macrostate merged;
  TransitionSignals signals;
  /// first normalized rank that merging may touch; set_count+1 if none
  rank_t merge_floor = 0;
  priority_t priority = 0;
  bool sink = false;
};

/// Everything needed to compute transitions for one trimmed NBA and
/// configuration.
class DetContext {
 public:
  DetContext(Nba const& nba, DetConfig const& cfg);
  DetContext(Nba const& nba, DetConfig const& cfg, ComponentPolicy policy);
  DetContext(DetContext const&) = delete;
  DetContext& operator=(DetContext const&) = delete;

  [[nodiscard]] Nba const& nba() const { return nba_; }
  [[nodiscard]] DetConfig const& config() const { return cfg_; }
  [[nodiscard]] SccInfo const& scc_info() const { return info_; }
  [[nodiscard]] ComponentPolicy const& policy() const { return policy_; }
  [[nodiscard]] StateSet const& true_loop() const { return true_loop_; }

  /// Initial macrostate for the given start set, including the true-loop check
  /// and language pruning.
  [[nodiscard]] Macrostate initial_macrostate(StateSet const& start) const;
  /// Same without language pruning or true-loop check.
  [[nodiscard]] Macrostate raw_initial_macrostate(StateSet const& start) const;
  [[nodiscard]] SuccessorResult successor(Macrostate const& m, symbol_t a) const;

  [[nodiscard]] static Macrostate accepting_sink();

 private:
  Nba const& nba_;
  DetConfig cfg_;
  SccInfo info_;
  ComponentPolicy policy_;
  SimulationRelation sim_;
  StateSet true_loop_;
  PruningContext pruning_;
};

/// Explored transition structure. Transitions can be holes (target -1) when
/// exploration is restricted to one powerset SCC.
struct Exploration {
  std::vector<Macrostate> states;
  /// NBA state set the macrostate stands for (powerset node)
  std::vector<StateSet> node;
  std::vector<std::int64_t> target;
  std::vector<priority_t> priority;
  std::size_t symbol_count = 0;
  /// Every powerset node each state was reached with (first entry = node),
  /// filled only when requested.
  std::vector<std::vector<StateSet>> observed;
};

struct ExploreOptions {
  /// Restricts exploration to successors whose node satisfies the predicate;
  /// other transitions become holes.
  std::function<bool(StateSet const&)> in_scope;
  /// Intern by (macrostate, node) instead of by macrostate alone.
  bool key_by_node = false;
  /// Fill Exploration::observed.
  bool record_observed = false;
  /// Called for each hole in discovery order with the successor macrostate
  /// that would have been created.
  std::function<void(StateSet const& node, Macrostate const& target)> on_hole;
};

[[nodiscard]] Exploration explore(DetContext const& ctx, Macrostate const& start, StateSet const& start_node,
                                  ExploreOptions const& opts = {});

/// Full exploration from the NBA's initial states; states in BFS order.
[[nodiscard]] Dpa determinize(Nba const& trimmed, DetConfig const& cfg);

/// Converts a hole-free exploration into a DPA (state i becomes state i).
[[nodiscard]] Dpa exploration_to_dpa(Exploration const& ex, Alphabet const& alphabet);

}  // namespace buchidet
