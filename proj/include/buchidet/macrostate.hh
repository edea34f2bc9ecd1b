#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "buchidet/analysis.hh"
#include "buchidet/det_config.hh"

namespace buchidet {

using rank_t = std::uint32_t;

struct RankedSet {
  StateSet states;
  rank_t rank = 0;

  friend bool operator==(RankedSet const&, RankedSet const&) = default;
};

/// One ranked tuple (S_1,...,S_n) with its global ranks.
using RankedSlice = std::vector<RankedSet>;

enum class ComponentMode { general, breakpoint, det_no_split };

[[nodiscard]] char const* to_string(ComponentMode m);

/// Assignment of NBA states to determinization components. States outside
/// every domain live in the unranked buffer.
struct ComponentPolicy {
  std::vector<StateSet> domain;
  std::vector<ComponentMode> mode;
  /// component index per state, -1 for buffer-only states
  std::vector<int> component_of;
  StateSet covered;

  [[nodiscard]] std::size_t size() const { return domain.size(); }
  /// Index of the breakpoint component or -1.
  [[nodiscard]] int breakpoint_component() const;

  /// Derives the layout from the configuration flags: general components
  /// first, then one det_no_split component per deterministic mixed SCC, then
  /// the breakpoint component for the accepting SCCs.
  [[nodiscard]] static ComponentPolicy derive(Nba const& nba, SccInfo const& info, DetConfig const& cfg);
  /// Single general component over all states.
  [[nodiscard]] static ComponentPolicy single(std::size_t state_count);
};

/// A state of the constructed DPA: one ranked slice per component plus the
/// buffer. The accepting sink is a distinguished macrostate without content;
/// the macrostate without any states is the rejecting sink.
struct Macrostate {
  std::vector<RankedSlice> comps;
  StateSet buffer;
  bool accepting_sink = false;

  friend bool operator==(Macrostate const&, Macrostate const&) = default;

  [[nodiscard]] bool empty() const;
  /// All states, ranked or buffered.
  [[nodiscard]] StateSet states() const;
  [[nodiscard]] std::size_t set_count() const;
  [[nodiscard]] std::size_t hash() const;
  /// e.g. `({1}^2,{0}^1) | () || {3}`
  [[nodiscard]] std::string to_string() const;
};

struct MacrostateHash {
  std::size_t operator()(Macrostate const& m) const { return m.hash(); }
};

/// Checks disjointness, rank partition of 1..n, domain membership, at most one
/// set in breakpoint components and ascending ranks in det_no_split
/// components. Returns an empty string when valid, else a description.
[[nodiscard]] std::string check_invariants(Macrostate const& m, ComponentPolicy const& policy);

}  // namespace buchidet
