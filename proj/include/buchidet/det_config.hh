#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace buchidet {

enum class MergeStrategy { muller_schupp, safra, max_collapse };

[[nodiscard]] char const* to_string(MergeStrategy m);
/// Accepts `ms`, `safra`, `max`. Throws std::invalid_argument otherwise.
[[nodiscard]] MergeStrategy parse_merge(std::string_view s);

struct DetConfig {
  MergeStrategy merge = MergeStrategy::safra;
  bool true_loop = true;
  bool external_inclusion = false;  // E
  bool internal_inclusion = false;  // I
  bool smart_successors = false;    // S
  bool acc_breakpoint = false;      // A
  bool weak_separation = false;     // W
  bool det_scc_mode = false;        // D
  bool topological = false;         // T
  bool minimize = false;            // M
  /// One general component per NBA SCC (stress setting, not part of any
  /// named configuration).
  bool separate_sccs = false;

  std::size_t state_cap = 1'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  /// Builds a configuration from a letter subset of "TEIMSAWD"; the empty
  /// string (or "def") is the default configuration. Throws
  /// std::invalid_argument on unknown letters.
  [[nodiscard]] static DetConfig from_opts(std::string_view opts, MergeStrategy merge = MergeStrategy::safra);
  /// Canonical letter string in the fixed order T,E,I,M,S,A,W,D; "def" if empty.
  [[nodiscard]] std::string opts_string() const;
};

}  // namespace buchidet
