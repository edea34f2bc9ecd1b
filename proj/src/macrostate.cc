#include "buchidet/macrostate.hh"

#include <algorithm>

namespace buchidet {

char const* to_string(ComponentMode m) {
  switch (m) {
    case ComponentMode::general: return "general";
    case ComponentMode::breakpoint: return "breakpoint";
    case ComponentMode::det_no_split: return "det_no_split";
  }
  return "?";
}

int ComponentPolicy::breakpoint_component() const {
  for (std::size_t i = 0; i < mode.size(); ++i)
    if (mode[i] == ComponentMode::breakpoint) return static_cast<int>(i);
  return -1;
}

ComponentPolicy ComponentPolicy::single(std::size_t state_count) {
  ComponentPolicy p;
  p.domain.push_back(StateSet::full(state_count));
  p.mode.push_back(ComponentMode::general);
  p.component_of.assign(state_count, 0);
  p.covered = p.domain[0];
  return p;
}

ComponentPolicy ComponentPolicy::derive(Nba const& nba, SccInfo const& info, DetConfig const& cfg) {
  auto rest = StateSet::full(nba.state_count);
  StateSet breakpoint;
  std::vector<StateSet> det_sccs;

  if (cfg.weak_separation) rest -= info.rejecting_states();
  if (cfg.weak_separation || cfg.acc_breakpoint) {
    breakpoint = info.accepting_states();
    rest -= breakpoint;
  }
  if (cfg.det_scc_mode) {
    for (auto c : info.topo_order)
      if (info.kind[c] == SccKind::mixed && info.deterministic[c]) {
        det_sccs.push_back(info.members[c]);
        rest -= info.members[c];
      }
  }

  ComponentPolicy p;
  auto add = [&](StateSet const& dom, ComponentMode mode) {
    if (dom.empty()) return;
    p.domain.push_back(dom);
    p.mode.push_back(mode);
  };
  if (cfg.separate_sccs) {
    for (auto c : info.topo_order) add(info.members[c] & rest, ComponentMode::general);
  } else {
    add(rest, ComponentMode::general);
  }
  for (auto const& d : det_sccs) add(d, ComponentMode::det_no_split);
  add(breakpoint, ComponentMode::breakpoint);

  p.component_of.assign(nba.state_count, -1);
  for (std::size_t i = 0; i < p.domain.size(); ++i) {
    p.covered |= p.domain[i];
    p.domain[i].for_each([&](state_t q) { p.component_of[q] = static_cast<int>(i); });
  }
  return p;
}

bool Macrostate::empty() const {
  if (accepting_sink || !buffer.empty()) return false;
  for (auto const& c : comps)
    if (!c.empty()) return false;
  return true;
}

StateSet Macrostate::states() const {
  auto r = buffer;
  for (auto const& c : comps)
    for (auto const& s : c) r |= s.states;
  return r;
}

std::size_t Macrostate::set_count() const {
  std::size_t n = 0;
  for (auto const& c : comps) n += c.size();
  return n;
}

std::size_t Macrostate::hash() const {
  std::size_t h = accepting_sink ? 1 : 0;
  for (auto const& c : comps) {
    hash_combine(h, c.size());
    for (auto const& s : c) {
      hash_combine(h, s.states.hash());
      hash_combine(h, s.rank);
    }
  }
  hash_combine(h, buffer.hash());
  return h;
}

std::string Macrostate::to_string() const {
  if (accepting_sink) return "(accepting sink)";
  std::string s;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) s += " | ";
    s += "(";
    for (std::size_t j = 0; j < comps[i].size(); ++j) {
      if (j) s += ",";
      s += comps[i][j].states.to_string() + "^" + std::to_string(comps[i][j].rank);
    }
    s += ")";
  }
  if (!buffer.empty()) s += " || " + buffer.to_string();
  return s;
}

std::string check_invariants(Macrostate const& m, ComponentPolicy const& policy) {
  if (m.accepting_sink) return m.empty() || m.set_count() == 0 ? "" : "sink with content";
  if (m.comps.size() != policy.size()) return "component count mismatch";
  StateSet seen = m.buffer;
  std::vector<rank_t> ranks;
  for (std::size_t i = 0; i < m.comps.size(); ++i) {
    auto const& c = m.comps[i];
    if (policy.mode[i] == ComponentMode::breakpoint && c.size() > 1) return "breakpoint component with several sets";
    for (std::size_t j = 0; j < c.size(); ++j) {
      auto const& s = c[j];
      if (s.states.empty()) return "empty set";
      if (s.states.intersects(seen)) return "sets not disjoint";
      if (!s.states.subset_of(policy.domain[i])) return "state outside its component domain";
      seen |= s.states;
      ranks.push_back(s.rank);
      if (policy.mode[i] == ComponentMode::det_no_split && j > 0 && c[j - 1].rank > s.rank)
        return "det_no_split ranks not ascending";
    }
  }
  std::sort(ranks.begin(), ranks.end());
  for (std::size_t i = 0; i < ranks.size(); ++i)
    if (ranks[i] != i + 1) return "ranks do not form 1..n";
  return {};
}

}  // namespace buchidet
