#include "buchidet/analysis.hh"

#include <deque>
#include <unordered_map>

namespace buchidet {

char const* to_string(SccKind k) {
  switch (k) {
    case SccKind::trivial: return "trivial";
    case SccKind::rejecting: return "rejecting";
    case SccKind::accepting: return "accepting";
    case SccKind::mixed: return "mixed";
  }
  return "?";
}

StateSet SccInfo::rejecting_states() const {
  StateSet r;
  for (std::uint32_t c = 0; c < size(); ++c)
    if (is_rejecting(c)) r |= members[c];
  return r;
}

StateSet SccInfo::accepting_states() const {
  StateSet r;
  for (std::uint32_t c = 0; c < size(); ++c)
    if (kind[c] == SccKind::accepting) r |= members[c];
  return r;
}

bool SccInfo::weak() const {
  for (auto k : kind)
    if (k == SccKind::mixed) return false;
  return true;
}

Adjacency state_graph(Nba const& nba) {
  Adjacency g(nba.state_count);
  for (state_t q = 0; q < nba.state_count; ++q) g[q] = nba.post_any(q).to_vector();
  return g;
}

namespace {

/// True if the graph restricted to `keep` contains a cycle.
bool has_cycle_within(Adjacency const& g, StateSet const& keep) {
  Adjacency sub(g.size());
  keep.for_each([&](state_t v) {
    for (auto w : g[v])
      if (keep.contains(w)) sub[v].push_back(w);
  });
  auto const d = tarjan_scc(sub);
  for (std::size_t c = 0; c < d.size(); ++c)
    if (d.nontrivial[c]) return true;
  return false;
}

}  // namespace

SccInfo analyze_sccs(Nba const& nba) {
  auto const g = state_graph(nba);
  auto const d = tarjan_scc(g);
  SccInfo info;
  info.scc_of = d.comp_of;
  info.topo_order = d.topo_order;
  info.members.resize(d.size());
  info.kind.resize(d.size());
  info.deterministic.assign(d.size(), true);
  for (std::uint32_t c = 0; c < d.size(); ++c) {
    for (auto q : d.members[c]) info.members[c].insert(q);
    auto const& mem = info.members[c];
    if (!d.nontrivial[c]) {
      info.kind[c] = SccKind::trivial;
    } else if (!mem.intersects(nba.accepting)) {
      info.kind[c] = SccKind::rejecting;
    } else if (!has_cycle_within(g, mem - nba.accepting)) {
      info.kind[c] = SccKind::accepting;
    } else {
      info.kind[c] = SccKind::mixed;
    }
    mem.for_each([&](state_t p) {
      for (symbol_t a = 0; a < nba.symbol_count(); ++a)
        if ((nba.post(p, a) & mem).size() > 1) info.deterministic[c] = false;
    });
  }
  return info;
}

Nba trim(Nba const& nba) {
  auto const g = state_graph(nba);
  auto const reach = reachable_from(g, nba.initial.to_vector());
  auto const info = analyze_sccs(nba);
  std::vector<std::uint32_t> good;
  for (std::uint32_t c = 0; c < info.size(); ++c)
    if (!info.is_rejecting(c)) info.members[c].for_each([&](state_t q) { good.push_back(q); });
  auto const useful = reachable_from(reverse_graph(g), good);

  std::vector<std::int64_t> remap(nba.state_count, -1);
  std::size_t n = 0;
  for (state_t q = 0; q < nba.state_count; ++q)
    if (reach[q] && useful[q]) remap[q] = static_cast<std::int64_t>(n++);

  Nba out(n, nba.alphabet);
  if (!nba.names.empty()) out.names.resize(n);
  for (state_t q = 0; q < nba.state_count; ++q) {
    if (remap[q] < 0) continue;
    auto const nq = static_cast<state_t>(remap[q]);
    if (!nba.names.empty()) out.names[nq] = nba.names[q];
    if (nba.initial.contains(q)) out.initial.insert(nq);
    if (nba.accepting.contains(q)) out.accepting.insert(nq);
    for (symbol_t a = 0; a < nba.symbol_count(); ++a)
      nba.post(q, a).for_each([&](state_t r) {
        if (remap[r] >= 0) out.add_edge(nq, a, static_cast<state_t>(remap[r]));
      });
  }
  return out;
}

StateSet true_loop_states(Nba const& nba) {
  StateSet r;
  nba.accepting.for_each([&](state_t q) {
    for (symbol_t a = 0; a < nba.symbol_count(); ++a)
      if (!nba.post(q, a).contains(q)) return;
    r.insert(q);
  });
  return r;
}

std::size_t SimulationRelation::pair_count() const {
  std::size_t c = 0;
  for (auto const& s : above) c += s.size();
  return c;
}

SimulationRelation compute_direct_simulation(Nba const& nba) {
  auto const n = nba.state_count;
  auto const all = StateSet::full(n);
  SimulationRelation sim;
  sim.above.resize(n);
  for (state_t p = 0; p < n; ++p) sim.above[p] = nba.accepting.contains(p) ? nba.accepting : all;

  bool changed = true;
  while (changed) {
    changed = false;
    for (state_t p = 0; p < n; ++p) {
      StateSet drop;
      sim.above[p].for_each([&](state_t q) {
        for (symbol_t a = 0; a < nba.symbol_count(); ++a) {
          auto const& qs = nba.post(q, a);
          bool ok = true;
          nba.post(p, a).for_each([&](state_t p2) {
            if (ok && !qs.intersects(sim.above[p2])) ok = false;
          });
          if (!ok) {
            drop.insert(q);
            return;
          }
        }
      });
      if (!drop.empty()) {
        sim.above[p] -= drop;
        changed = true;
      }
    }
  }
  return sim;
}

std::int64_t PowersetStructure::find(StateSet const& set) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == set) return static_cast<std::int64_t>(i);
  return -1;
}

PowersetStructure build_powerset_structure(Nba const& nba) {
  PowersetStructure ps;
  ps.symbol_count = nba.symbol_count();
  std::unordered_map<StateSet, std::uint32_t, StateSetHash> ids;
  auto intern = [&](StateSet const& s) {
    auto [it, fresh] = ids.try_emplace(s, static_cast<std::uint32_t>(ps.nodes.size()));
    if (fresh) ps.nodes.push_back(s);
    return it->second;
  };
  ps.initial = intern(nba.initial);
  for (std::size_t i = 0; i < ps.nodes.size(); ++i) {
    for (symbol_t a = 0; a < ps.symbol_count; ++a) {
      auto const next = nba.post(ps.nodes[i], a);
      auto const id = intern(next);
      ps.delta.push_back(id);
    }
  }
  Adjacency g(ps.nodes.size());
  for (std::uint32_t v = 0; v < ps.nodes.size(); ++v)
    for (symbol_t a = 0; a < ps.symbol_count; ++a) g[v].push_back(ps.succ(v, a));
  ps.scc = tarjan_scc(g);
  return ps;
}

}  // namespace buchidet
