#include "buchidet/pipeline.hh"

#include <chrono>
#include <json.hpp>

#include "buchidet/analysis.hh"
#include "buchidet/determinizer.hh"
#include "buchidet/postprocess.hh"
#include "buchidet/topo.hh"

namespace buchidet {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

Dpa run_pipeline(Nba const& nba, DetConfig const& cfg, RunStats* stats) {
  auto const t0 = Clock::now();
  auto const trimmed = trim(nba);
  auto const t_trim = ms_since(t0);

  auto const t1 = Clock::now();
  auto dpa = cfg.topological ? determinize_with_topo(trimmed, cfg) : determinize(trimmed, cfg);
  auto const t_det = ms_since(t1);
  auto const explored = dpa.state_count;

  auto const t2 = Clock::now();
  if (cfg.minimize) dpa = postprocess(dpa);
  auto const t_post = ms_since(t2);

  if (stats) {
    stats->input_states = nba.state_count;
    stats->trimmed_states = trimmed.state_count;
    stats->scc_kinds.clear();
    for (auto k : {SccKind::trivial, SccKind::rejecting, SccKind::accepting, SccKind::mixed})
      stats->scc_kinds[to_string(k)] = 0;
    auto const info = analyze_sccs(trimmed);
    for (auto k : info.kind) ++stats->scc_kinds[to_string(k)];
    stats->explored_states = explored;
    stats->output_states = dpa.state_count;
    stats->priorities = dpa.distinct_priorities().size();
    stats->timings_ms = {{"trim", t_trim}, {"determinize", t_det}, {"postprocess", t_post}, {"total", ms_since(t0)}};
    stats->opts = cfg.opts_string();
    stats->merge = to_string(cfg.merge);
  }
  return dpa;
}

std::string stats_json(RunStats const& s) {
  nlohmann::json j;
  j["input_states"] = s.input_states;
  j["trimmed_states"] = s.trimmed_states;
  j["scc_kinds"] = s.scc_kinds;
  j["explored_states"] = s.explored_states;
  j["output_states"] = s.output_states;
  j["priorities"] = s.priorities;
  j["timings_ms"] = s.timings_ms;
  j["opts"] = s.opts;
  j["merge"] = s.merge;
  return j.dump(2) + "\n";
}

}  // namespace buchidet
