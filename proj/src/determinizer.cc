#include "buchidet/determinizer.hh"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

#include "buchidet/successor_trie.hh"

namespace buchidet {

IntermediateSlice step(RankedSlice const& slice, symbol_t a, Nba const& nba, ComponentMode mode,
                       rank_t& next_fresh) {
  IntermediateSlice out;
  out.reserve(slice.size() * 2);
  for (auto const& s : slice) {
    auto succ = nba.post(s.states, a);
    if (mode == ComponentMode::general) {
      out.push_back({succ & nba.accepting, next_fresh++, true});
      out.push_back({succ - nba.accepting, s.rank, false});
    } else {
      out.push_back({std::move(succ), s.rank, false});
    }
  }
  StateSet seen;
  for (auto& e : out) {
    e.states -= seen;
    seen |= e.states;
  }
  return out;
}

void relocate(IntermediateMacrostate& im, StateSet const& buffer_succ, ComponentPolicy const& policy,
              rank_t& next_fresh) {
  auto const& covered = policy.covered;
  StateSet moved;
  for (std::size_t i = 0; i < im.comps.size(); ++i) {
    for (auto& e : im.comps[i]) {
      auto const stray = e.states - policy.domain[i];
      if (stray.empty()) continue;
      moved |= stray;
      e.states -= stray;
    }
  }
  auto const incoming = (buffer_succ & covered) | moved;
  auto buffer = (buffer_succ - covered) | (moved - covered);

  for (std::size_t i = 0; i < im.comps.size(); ++i) {
    auto& comp = im.comps[i];
    StateSet present;
    for (auto const& e : comp) present |= e.states;
    auto const arriving = (incoming & policy.domain[i]) - present;
    if (arriving.empty()) continue;
    if (policy.mode[i] == ComponentMode::breakpoint && !present.empty()) {
      // track set still alive: newcomers wait in the background
      buffer |= arriving;
    } else {
      comp.push_back({arriving, next_fresh++, true});
    }
  }
  im.buffer = std::move(buffer);
}

std::size_t subtree_begin(std::vector<rank_t> const& ranks, std::size_t pos) {
  auto b = pos;
  while (b > 0 && ranks[b - 1] > ranks[pos]) --b;
  return b;
}

namespace {

std::vector<rank_t> ranks_of(IntermediateSlice const& v) {
  std::vector<rank_t> r;
  r.reserve(v.size());
  for (auto const& e : v) r.push_back(e.rank);
  return r;
}

void sort_unique(std::vector<rank_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::pair<Macrostate, TransitionSignals> prune(IntermediateMacrostate const& im, ComponentPolicy const& policy,
                                               StateSet const& accepting) {
  Macrostate out;
  TransitionSignals sig;
  out.buffer = im.buffer;
  out.comps.resize(im.comps.size());

  for (std::size_t i = 0; i < im.comps.size(); ++i) {
    auto v = im.comps[i];
    auto const mode = policy.mode[i];
    if (mode != ComponentMode::general) {
      for (auto const& e : v) {
        if (e.fresh || e.states.empty()) continue;
        if (mode == ComponentMode::breakpoint || e.states.intersects(accepting)) sig.good.push_back(e.rank);
      }
    }

    for (;;) {
      std::size_t p = v.size();
      for (std::size_t j = v.size(); j-- > 0;)
        if (v[j].states.empty()) {
          p = j;
          break;
        }
      if (p == v.size()) break;

      auto const ranks = ranks_of(v);
      auto const b = subtree_begin(ranks, p);
      // children of p, right to left, with their subtree start
      std::vector<std::pair<std::size_t, std::size_t>> children;
      auto min_seen = std::numeric_limits<rank_t>::max();
      for (std::size_t j = p; j-- > b;) {
        if (ranks[j] < min_seen) {
          min_seen = ranks[j];
          children.emplace_back(j, subtree_begin(ranks, j));
        }
      }
      std::optional<std::size_t> heir;
      for (auto const& [c, cb] : children) {
        bool alive = false;
        for (auto j = cb; j <= c && !alive; ++j) alive = !v[j].states.empty();
        if (!alive) continue;
        heir = c;
        break;
      }
      if (!heir) {
        if (!v[p].fresh) sig.bad.push_back(v[p].rank);
      } else {
        if (!v[p].fresh) sig.good.push_back(v[p].rank);
        v[*heir].rank = v[p].rank;
        v[*heir].fresh = v[p].fresh;
      }
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(p));
    }

    auto& slice = out.comps[i];
    slice.reserve(v.size());
    for (auto& e : v) slice.push_back({std::move(e.states), e.rank});
  }
  sort_unique(sig.good);
  sort_unique(sig.bad);
  return {std::move(out), std::move(sig)};
}

void compute_priority(TransitionSignals& sig, std::size_t state_count) {
  auto const sentinel = static_cast<rank_t>(state_count + 1);
  rank_t k = sentinel;
  bool good = false;
  if (!sig.good.empty() && sig.good.front() < k) {
    k = sig.good.front();
    good = true;
  }
  if (!sig.bad.empty() && sig.bad.front() < k) {
    k = sig.bad.front();
    good = false;
  }
  sig.k = k;
  sig.has_event = !sig.good.empty() || !sig.bad.empty();
  sig.priority = good ? 2 * k : 2 * k - 1;
}

void merge(Macrostate& m, TransitionSignals const& sig, MergeStrategy strategy, ComponentPolicy const& policy) {
  if (!sig.has_event || strategy == MergeStrategy::muller_schupp) return;
  for (std::size_t i = 0; i < m.comps.size(); ++i) {
    if (policy.mode[i] != ComponentMode::general) continue;
    auto& v = m.comps[i];
    if (strategy == MergeStrategy::safra) {
      for (auto r : sig.good) {
        auto it = std::find_if(v.begin(), v.end(), [r](RankedSet const& s) { return s.rank == r; });
        if (it == v.end()) continue;
        auto const pos = static_cast<std::size_t>(it - v.begin());
        std::vector<rank_t> ranks;
        for (auto const& s : v) ranks.push_back(s.rank);
        auto const b = subtree_begin(ranks, pos);
        for (auto j = b; j < pos; ++j) v[pos].states |= v[j].states;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(b), v.begin() + static_cast<std::ptrdiff_t>(pos));
      }
    } else {
      RankedSlice merged;
      for (std::size_t j = 0; j < v.size();) {
        if (v[j].rank < sig.k) {
          merged.push_back(std::move(v[j++]));
          continue;
        }
        RankedSet run = std::move(v[j++]);
        // a run closes after the dominating set, which only absorbs its subtree
        while (j < v.size() && v[j].rank >= sig.k && run.rank != sig.k) {
          run.states |= v[j].states;
          run.rank = std::min(run.rank, v[j].rank);
          ++j;
        }
        merged.push_back(std::move(run));
      }
      v = std::move(merged);
    }
  }
}

void normalize(Macrostate& m) {
  std::vector<rank_t> ranks;
  for (auto const& c : m.comps)
    for (auto const& s : c) ranks.push_back(s.rank);
  std::sort(ranks.begin(), ranks.end());
  for (auto& c : m.comps)
    for (auto& s : c)
      s.rank = static_cast<rank_t>(std::lower_bound(ranks.begin(), ranks.end(), s.rank) - ranks.begin() + 1);
}

PruningContext make_pruning_context(Nba const& nba, SimulationRelation const& sim, SccInfo const& info,
                                    ComponentPolicy const& policy, DetConfig const& cfg) {
  PruningContext ctx;
  ctx.external = cfg.external_inclusion;
  ctx.internal = cfg.internal_inclusion;
  ctx.sim = &sim;
  ctx.scc_of = &info.scc_of;
  ctx.policy = &policy;
  if (!ctx.internal) return ctx;

  auto const g = state_graph(nba);
  std::vector<StateSet> reach(nba.state_count);
  for (state_t q = 0; q < nba.state_count; ++q) {
    auto const r = reachable_from(g, {q});
    for (state_t p = 0; p < nba.state_count; ++p)
      if (r[p]) reach[q].insert(p);
  }
  auto const all = StateSet::full(nba.state_count);
  ctx.blocked.resize(policy.size());
  for (std::size_t i = 0; i < policy.size(); ++i) {
    auto const outside = all - policy.domain[i];
    ctx.blocked[i].resize(nba.state_count);
    for (state_t q = 0; q < nba.state_count; ++q)
      (reach[q] & outside).for_each([&](state_t x) { ctx.blocked[i][q] |= reach[x]; });
  }
  return ctx;
}

namespace {

/// Removes covered states from the given component sets in place. Emptied
/// sets are left for the caller.
bool remove_covered(std::vector<std::vector<StateSet*>> const& comps, PruningContext const& ctx) {
  struct Loc {
    std::size_t comp;
    std::size_t idx;
  };
  std::vector<std::pair<state_t, Loc>> ranked;
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = 0; j < comps[i].size(); ++j)
      comps[i][j]->for_each([&](state_t q) { ranked.push_back({q, {i, j}}); });
  std::sort(ranked.begin(), ranked.end(), [](auto const& x, auto const& y) { return x.first < y.first; });

  auto const& sim = *ctx.sim;
  auto const& scc = *ctx.scc_of;
  std::vector<bool> removed(ranked.size(), false);
  bool any = false;
  for (std::size_t qi = 0; qi < ranked.size(); ++qi) {
    if (removed[qi]) continue;
    auto const [q, lq] = ranked[qi];
    for (std::size_t pi = 0; pi < ranked.size(); ++pi) {
      if (pi == qi || removed[pi]) continue;
      auto const [p, lp] = ranked[pi];
      if (!sim.contains(p, q)) continue;
      bool drop = ctx.external && scc[p] != scc[q];
      if (!drop && ctx.internal && lp.comp == lq.comp && lq.idx < lp.idx &&
          ctx.policy->mode[lp.comp] == ComponentMode::general && !ctx.blocked[lp.comp][q].contains(p))
        drop = true;
      if (!drop) continue;
      removed[pi] = true;
      comps[lp.comp][lp.idx]->erase(p);
      any = true;
    }
  }
  return any;
}

}  // namespace

bool apply_language_pruning(Macrostate& m, PruningContext const& ctx) {
  if ((!ctx.external && !ctx.internal) || m.accepting_sink) return false;
  std::vector<std::vector<StateSet*>> comps(m.comps.size());
  for (std::size_t i = 0; i < m.comps.size(); ++i)
    for (auto& s : m.comps[i]) comps[i].push_back(&s.states);
  if (!remove_covered(comps, ctx)) return false;
  for (auto& c : m.comps)
    c.erase(std::remove_if(c.begin(), c.end(), [](RankedSet const& s) { return s.states.empty(); }), c.end());
  normalize(m);
  return true;
}

bool apply_language_pruning(IntermediateMacrostate& im, PruningContext const& ctx) {
  if (!ctx.external && !ctx.internal) return false;
  std::vector<std::vector<StateSet*>> comps(im.comps.size());
  for (std::size_t i = 0; i < im.comps.size(); ++i)
    for (auto& s : im.comps[i]) comps[i].push_back(&s.states);
  return remove_covered(comps, ctx);
}

DetContext::DetContext(Nba const& nba, DetConfig const& cfg)
    : DetContext(nba, cfg, ComponentPolicy::derive(nba, analyze_sccs(nba), cfg)) {}

DetContext::DetContext(Nba const& nba, DetConfig const& cfg, ComponentPolicy policy)
    : nba_(nba), cfg_(cfg), info_(analyze_sccs(nba)), policy_(std::move(policy)) {
  if (cfg_.external_inclusion || cfg_.internal_inclusion) sim_ = compute_direct_simulation(nba_);
  if (cfg_.true_loop) true_loop_ = true_loop_states(nba_);
  pruning_ = make_pruning_context(nba_, sim_, info_, policy_, cfg_);
}

Macrostate DetContext::accepting_sink() {
  Macrostate m;
  m.accepting_sink = true;
  return m;
}

Macrostate DetContext::raw_initial_macrostate(StateSet const& start) const {
  Macrostate m;
  m.comps.resize(policy_.size());
  rank_t next = 1;
  for (std::size_t i = 0; i < policy_.size(); ++i) {
    auto const mine = start & policy_.domain[i];
    if (mine.empty()) continue;
    if (policy_.mode[i] == ComponentMode::breakpoint) {
      m.comps[i].push_back({mine, next++});
    } else {
      mine.for_each([&](state_t q) { m.comps[i].push_back({StateSet{q}, next++}); });
    }
  }
  m.buffer = start - policy_.covered;
  return m;
}

Macrostate DetContext::initial_macrostate(StateSet const& start) const {
  if (cfg_.true_loop && start.intersects(true_loop_)) return accepting_sink();
  auto m = raw_initial_macrostate(start);
  apply_language_pruning(m, pruning_);
  return m;
}

SuccessorResult DetContext::successor(Macrostate const& m, symbol_t a) const {
  SuccessorResult res;
  if (m.accepting_sink) {
    res.unmerged = res.merged = m;
    res.priority = 0;
    res.sink = true;
    return res;
  }
  if (m.empty()) {
    res.unmerged = res.merged = m;
    res.priority = 1;
    res.sink = true;
    return res;
  }
  if (cfg_.true_loop && nba_.post(m.states(), a).intersects(true_loop_)) {
    res.unmerged = res.merged = accepting_sink();
    res.priority = 0;
    res.sink = true;
    return res;
  }

  auto next_fresh = static_cast<rank_t>(m.set_count() + 1);
  IntermediateMacrostate im;
  im.comps.reserve(m.comps.size());
  for (std::size_t i = 0; i < m.comps.size(); ++i)
    im.comps.push_back(step(m.comps[i], a, nba_, policy_.mode[i], next_fresh));
  relocate(im, nba_.post(m.buffer, a), policy_, next_fresh);
  apply_language_pruning(im, pruning_);
  auto [pruned, sig] = prune(im, policy_, nba_.accepting);
  compute_priority(sig, nba_.state_count);

  rank_t floor = 1;
  for (auto const& c : pruned.comps)
    for (auto const& s : c)
      if (!sig.has_event || s.rank < sig.k) ++floor;

  res.merged = pruned;
  merge(res.merged, sig, cfg_.merge, policy_);
  normalize(res.merged);
  res.unmerged = std::move(pruned);
  normalize(res.unmerged);
  res.merge_floor = floor;
  res.priority = sig.priority;
  res.signals = std::move(sig);
  return res;
}

namespace {

struct ExploreKey {
  Macrostate macrostate;
  StateSet node;
  friend bool operator==(ExploreKey const&, ExploreKey const&) = default;
};

struct ExploreKeyHash {
  std::size_t operator()(ExploreKey const& k) const {
    auto h = k.macrostate.hash();
    hash_combine(h, k.node.hash());
    return h;
  }
};

}  // namespace

Exploration explore(DetContext const& ctx, Macrostate const& start, StateSet const& start_node,
                    ExploreOptions const& opts) {
  auto const& nba = ctx.nba();
  auto const& cfg = ctx.config();
  Exploration ex;
  ex.symbol_count = nba.symbol_count();
  auto const hole_priority = static_cast<priority_t>(2 * (nba.state_count + 1) - 1);

  std::unordered_map<ExploreKey, std::uint32_t, ExploreKeyHash> ids;
  std::optional<SuccessorTrie> trie;
  if (cfg.smart_successors) trie.emplace();

  auto observe = [&](std::uint32_t id, StateSet const& node) {
    if (!opts.record_observed) return;
    auto& seen = ex.observed[id];
    if (std::find(seen.begin(), seen.end(), node) == seen.end()) seen.push_back(node);
  };
  auto intern = [&](Macrostate const& m, StateSet const& node) {
    ExploreKey key{m, opts.key_by_node ? node : StateSet{}};
    auto [it, fresh] = ids.try_emplace(std::move(key), static_cast<std::uint32_t>(ex.states.size()));
    if (fresh) {
      if (ex.states.size() >= cfg.state_cap) throw StateCapExceeded(cfg.state_cap);
      ex.states.push_back(m);
      ex.node.push_back(node);
      if (opts.record_observed) ex.observed.emplace_back();
    }
    observe(it->second, node);
    return it->second;
  };

  auto const first = intern(start, start_node);
  if (trie && !start.accepting_sink && !start.empty()) trie->insert(start, first);

  for (std::uint32_t id = 0; id < ex.states.size(); ++id) {
    if (cfg.deadline && std::chrono::steady_clock::now() > *cfg.deadline) throw DeadlineExceeded();
    ex.target.resize(ex.states.size() * ex.symbol_count, -1);
    ex.priority.resize(ex.states.size() * ex.symbol_count, 0);
    for (symbol_t a = 0; a < ex.symbol_count; ++a) {
      auto const slot = id * ex.symbol_count + a;
      auto const node = nba.post(ex.node[id], a);
      if (opts.in_scope && !opts.in_scope(node)) {
        ex.target[slot] = -1;
        ex.priority[slot] = hole_priority;
        if (opts.on_hole) opts.on_hole(node, ctx.successor(ex.states[id], a).merged);
        continue;
      }
      auto const res = ctx.successor(ex.states[id], a);
      ex.priority[slot] = res.priority;
      if (trie && !res.sink) {
        auto const found = trie->find(res.unmerged, res.merge_floor, ctx.policy(), [&](std::uint32_t cand) {
          return !opts.key_by_node || ex.node[cand] == node;
        });
        if (found) {
          ex.target[slot] = *found;
          observe(*found, node);
          continue;
        }
      }
      auto const target = intern(res.merged, node);
      ex.target[slot] = target;
      if (trie && !res.sink) trie->insert(res.merged, target);
    }
  }
  ex.target.resize(ex.states.size() * ex.symbol_count, -1);
  ex.priority.resize(ex.states.size() * ex.symbol_count, 0);
  return ex;
}

Dpa exploration_to_dpa(Exploration const& ex, Alphabet const& alphabet) {
  Dpa dpa(ex.states.size(), alphabet);
  std::unordered_map<StateSet, std::int64_t, StateSetHash> node_ids;
  dpa.tag.resize(ex.states.size());
  for (std::size_t s = 0; s < ex.states.size(); ++s) {
    auto [it, fresh] = node_ids.try_emplace(ex.node[s], static_cast<std::int64_t>(node_ids.size()));
    dpa.tag[s] = it->second;
    for (symbol_t a = 0; a < ex.symbol_count; ++a) {
      auto const slot = s * ex.symbol_count + a;
      dpa.set(static_cast<state_t>(s), a, static_cast<state_t>(ex.target[slot]), ex.priority[slot]);
    }
  }
  dpa.initial = 0;
  return dpa;
}

Dpa determinize(Nba const& trimmed, DetConfig const& cfg) {
  DetContext ctx(trimmed, cfg);
  auto const start = ctx.initial_macrostate(trimmed.initial);
  return exploration_to_dpa(explore(ctx, start, trimmed.initial), trimmed.alphabet);
}

}  // namespace buchidet
