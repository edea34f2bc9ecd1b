#pragma once

#include <map>
#include <string>

#include "buchidet/automata.hh"
#include "buchidet/det_config.hh"

namespace buchidet {

/// Measurements of one pipeline run.
struct RunStats {
  std::size_t input_states = 0;
  std::size_t trimmed_states = 0;
  /// SCC count of the trimmed NBA per kind (trivial, rejecting, accepting, mixed)
  std::map<std::string, std::size_t> scc_kinds;
  /// states of the DPA before post-processing
  std::size_t explored_states = 0;
  std::size_t output_states = 0;
  std::size_t priorities = 0;
  /// milliseconds per pass: trim, determinize, postprocess, total
  std::map<std::string, double> timings_ms;
  std::string opts;
  std::string merge;
};

/// Trims the NBA, determinizes it (through the topological construction when
/// enabled) and post-processes the result when minimization is enabled.
[[nodiscard]] Dpa run_pipeline(Nba const& nba, DetConfig const& cfg, RunStats* stats = nullptr);

/// JSON object with the fields of RunStats.
[[nodiscard]] std::string stats_json(RunStats const& s);

}  // namespace buchidet
