#include "buchidet/topo.hh"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace buchidet {

namespace {

using NodeIndex = std::unordered_map<StateSet, std::uint32_t, StateSetHash>;

NodeIndex index_nodes(PowersetStructure const& ps) {
  NodeIndex idx;
  for (std::uint32_t i = 0; i < ps.nodes.size(); ++i) idx.emplace(ps.nodes[i], i);
  return idx;
}

/// Language pruning lets one macrostate show up under several powerset SCCs,
/// each with its own copy. Equal macrostates accept the same language, so
/// edges into copy x may go to copy t whenever t cannot reach x. Returns the
/// possibly redirected initial state.
std::size_t share_equal_macrostates(std::vector<std::int64_t>& target,
                                    std::vector<std::optional<Macrostate>> const& macro, std::size_t nsym,
                                    std::size_t init) {
  auto const n = target.size() / nsym;
  std::unordered_map<Macrostate, std::vector<std::size_t>, MacrostateHash> copies;
  for (std::size_t s = 0; s < macro.size(); ++s)
    if (macro[s]) copies[*macro[s]].push_back(s);

  auto reaches = [&](std::size_t from, std::size_t to) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      auto const s = stack.back();
      stack.pop_back();
      if (s == to) return true;
      for (std::size_t a = 0; a < nsym; ++a) {
        auto const t = static_cast<std::size_t>(target[s * nsym + a]);
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
    return false;
  };

  for (auto& [m, group] : copies) {
    for (bool changed = group.size() > 1; changed;) {
      changed = false;
      for (std::size_t i = 0; i < group.size() && !changed; ++i)
        for (std::size_t j = 0; j < group.size() && !changed; ++j) {
          auto const x = group[i];
          auto const t = group[j];
          if (x == t || reaches(t, x)) continue;
          for (auto& e : target)
            if (e == static_cast<std::int64_t>(x)) e = static_cast<std::int64_t>(t);
          if (init == x) init = t;
          group.erase(group.begin() + static_cast<std::ptrdiff_t>(i));
          changed = group.size() > 1;
        }
    }
  }
  return init;
}

}  // namespace

PartialDpa determinize_powerset_scc(DetContext const& ctx, PowersetStructure const& ps, std::uint32_t scc,
                                    Macrostate const& start, std::uint32_t start_node,
                                    std::function<void(std::uint32_t, Macrostate const&)> on_hole,
                                    bool key_by_node) {
  auto const idx = index_nodes(ps);
  ExploreOptions opts;
  opts.key_by_node = key_by_node;
  opts.record_observed = true;
  opts.in_scope = [&](StateSet const& s) { return ps.scc.comp_of[idx.at(s)] == scc; };
  if (on_hole) opts.on_hole = [&](StateSet const& s, Macrostate const& m) { on_hole(idx.at(s), m); };
  PartialDpa frag;
  frag.ex = explore(ctx, start, ps.nodes[start_node], opts);
  frag.node.reserve(frag.ex.states.size());
  for (auto const& s : frag.ex.node) frag.node.push_back(idx.at(s));
  frag.observed.reserve(frag.ex.states.size());
  for (auto const& seen : frag.ex.observed) {
    auto& o = frag.observed.emplace_back();
    for (auto const& s : seen) o.push_back(idx.at(s));
  }
  return frag;
}

std::vector<std::uint32_t> select_kept_bottom(PartialDpa const& fragment, std::vector<std::uint32_t> const& required) {
  auto const& ex = fragment.ex;
  Adjacency g(ex.states.size());
  for (std::size_t s = 0; s < ex.states.size(); ++s)
    for (std::size_t a = 0; a < ex.symbol_count; ++a) {
      auto const t = ex.target[s * ex.symbol_count + a];
      if (t >= 0) g[s].push_back(static_cast<std::uint32_t>(t));
    }
  auto const d = tarjan_scc(g);
  std::optional<std::uint32_t> best;
  for (std::uint32_t c = 0; c < d.size(); ++c) {
    bool bottom = true;
    for (auto v : d.members[c])
      for (auto w : g[v])
        if (d.comp_of[w] != c) bottom = false;
    if (!bottom) continue;
    std::set<std::uint32_t> covered;
    for (auto v : d.members[c]) {
      if (fragment.observed.empty()) {
        covered.insert(fragment.node[v]);
      } else {
        covered.insert(fragment.observed[v].begin(), fragment.observed[v].end());
      }
    }
    if (!std::all_of(required.begin(), required.end(), [&](auto n) { return covered.count(n) > 0; })) continue;
    if (!best) {
      best = c;
      continue;
    }
    auto const& cur = d.members[*best];
    auto const& cand = d.members[c];
    if (cand.size() < cur.size() || (cand.size() == cur.size() && cand.front() < cur.front())) best = c;
  }
  if (!best) return {};
  return d.members[*best];
}

Dpa determinize_with_topo(Nba const& trimmed, DetConfig const& cfg) {
  DetContext ctx(trimmed, cfg);
  auto const ps = build_powerset_structure(trimmed);
  auto const nsym = trimmed.symbol_count();
  auto const hole_priority = static_cast<priority_t>(2 * (trimmed.state_count + 1) - 1);
  auto const& tl = ctx.true_loop();

  // assembled automaton; targets >= 0 are global ids, < 0 encode -(node+1) holes
  std::vector<std::int64_t> target;
  std::vector<priority_t> priority;
  std::vector<std::int64_t> tags;
  std::size_t count = 0;
  auto add_state = [&](std::int64_t tag) {
    target.resize((count + 1) * nsym, 0);
    priority.resize((count + 1) * nsym, 0);
    tags.push_back(tag);
    return static_cast<std::int64_t>(count++);
  };

  std::optional<std::int64_t> acc_sink;
  std::optional<std::int64_t> rej_sink;
  auto sink = [&](bool accepting, std::uint32_t node) {
    auto& slot = accepting ? acc_sink : rej_sink;
    if (!slot) {
      slot = add_state(node);
      for (std::size_t a = 0; a < nsym; ++a) {
        target[static_cast<std::size_t>(*slot) * nsym + a] = *slot;
        priority[static_cast<std::size_t>(*slot) * nsym + a] = accepting ? 0 : 1;
      }
    }
    return *slot;
  };

  std::vector<std::int64_t> rep(ps.nodes.size(), -1);
  std::vector<std::optional<Macrostate>> macro;
  std::vector<std::optional<std::pair<Macrostate, std::uint32_t>>> seed(ps.scc.size());
  // nodes of each powerset SCC that kept states of earlier SCCs (or the start) lead to
  std::vector<std::set<std::uint32_t>> required(ps.scc.size());
  seed[ps.scc.comp_of[ps.initial]] = {ctx.initial_macrostate(ps.nodes[ps.initial]), ps.initial};
  required[ps.scc.comp_of[ps.initial]].insert(ps.initial);

  for (auto c : ps.scc.topo_order) {
    auto const& members = ps.scc.members[c];
    auto const& first = ps.nodes[members.front()];
    if (first.empty() || (cfg.true_loop && first.intersects(tl))) {
      for (auto n : members) rep[n] = sink(!first.empty(), n);
      continue;
    }
    if (!seed[c]) continue;  // not reachable from the initial SCC
    std::vector<std::uint32_t> const needed(required[c].begin(), required[c].end());
    auto explore_scc = [&](bool key_by_node) {
      return determinize_powerset_scc(ctx, ps, c, seed[c]->first, seed[c]->second,
                                      [&](std::uint32_t node, Macrostate const& m) {
                                        auto& s = seed[ps.scc.comp_of[node]];
                                        if (!s) s = {m, node};
                                      },
                                      key_by_node);
    };
    auto frag = explore_scc(false);
    auto kept = select_kept_bottom(frag, needed);
    if (kept.empty()) {
      // interning by macrostate lost a needed node; keying by node covers all of them
      frag = explore_scc(true);
      kept = select_kept_bottom(frag, needed);
    }
    if (kept.empty()) throw std::logic_error("no bottom SCC covers the needed powerset nodes");

    std::unordered_map<std::uint32_t, std::int64_t> global;
    for (auto local : kept) {
      auto const id = add_state(frag.node[local]);
      global.emplace(local, id);
      macro.resize(count);
      macro[static_cast<std::size_t>(id)] = frag.ex.states[local];
      for (auto n : frag.observed[local])
        if (rep[n] < 0) rep[n] = id;
    }
    for (auto local : kept) {
      auto const id = static_cast<std::size_t>(global.at(local));
      for (std::size_t a = 0; a < nsym; ++a) {
        auto const slot = local * nsym + a;
        auto const t = frag.ex.target[slot];
        priority[id * nsym + a] = frag.ex.priority[slot];
        if (t >= 0) {
          target[id * nsym + a] = global.at(static_cast<std::uint32_t>(t));
        } else {
          auto const node = ps.succ(frag.node[local], static_cast<symbol_t>(a));
          target[id * nsym + a] = -static_cast<std::int64_t>(node) - 1;
          priority[id * nsym + a] = hole_priority;
          required[ps.scc.comp_of[node]].insert(node);
        }
      }
    }
  }

  for (auto& t : target)
    if (t < 0) {
      auto const node = static_cast<std::size_t>(-t - 1);
      if (rep[node] < 0) throw std::logic_error("hole without representative");
      t = rep[node];
    }

  auto const init = share_equal_macrostates(target, macro, nsym, static_cast<std::size_t>(rep[ps.initial]));

  // keep what is reachable from the initial representative, renumbered in BFS order
  std::vector<std::int64_t> renum(count, -1);
  std::vector<std::size_t> order;
  renum[init] = 0;
  order.push_back(init);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t a = 0; a < nsym; ++a) {
      auto const t = static_cast<std::size_t>(target[order[i] * nsym + a]);
      if (renum[t] < 0) {
        renum[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
    }

  Dpa dpa(order.size(), trimmed.alphabet);
  dpa.tag.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    dpa.tag[i] = tags[order[i]];
    for (std::size_t a = 0; a < nsym; ++a) {
      auto const slot = order[i] * nsym + a;
      dpa.set(static_cast<state_t>(i), static_cast<symbol_t>(a),
              static_cast<state_t>(renum[static_cast<std::size_t>(target[slot])]), priority[slot]);
    }
  }
  dpa.initial = 0;
  return dpa;
}

}  // namespace buchidet
