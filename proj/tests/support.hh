#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "buchidet/automata.hh"
#include "buchidet/lasso.hh"

/// Fixtures and brute-force reference implementations shared by the tests.
/// The reference code deliberately avoids the library algorithms it checks.
namespace buchidet::testing {

inline constexpr symbol_t sym_b = 0;
inline constexpr symbol_t sym_a = 1;

inline Alphabet ab_alphabet() { return Alphabet{{"a"}}; }

/// Words with finitely many b: 0 loops on a,b and guesses the a-tail in 1.
inline Nba two_state_nba() {
  Nba n(2, ab_alphabet());
  n.add_edge(0, sym_a, 0);
  n.add_edge(0, sym_b, 0);
  n.add_edge(0, sym_a, 1);
  n.add_edge(1, sym_a, 1);
  n.initial = {0};
  n.accepting = {1};
  return n;
}

/// The two-state example plus the accepting state 2 mirroring state 1.
inline Nba three_state_nba() {
  Nba n(3, ab_alphabet());
  n.add_edge(0, sym_a, 0);
  n.add_edge(0, sym_b, 0);
  n.add_edge(0, sym_a, 1);
  n.add_edge(1, sym_a, 1);
  n.add_edge(0, sym_a, 2);
  n.add_edge(2, sym_a, 2);
  n.initial = {0};
  n.accepting = {1, 2};
  return n;
}

/// The DPA the construction yields for the two-state example: state 0 = ({0}^1),
/// state 1 = ({1}^2,{0}^1).
inline Dpa two_state_dpa() {
  Dpa d(2, ab_alphabet());
  d.set(0, sym_a, 1, 5);
  d.set(0, sym_b, 0, 5);
  d.set(1, sym_a, 1, 4);
  d.set(1, sym_b, 0, 3);
  return d;
}

/// Lasso membership by block relations: for each pair (p, q) decide whether
/// one pass of v leads from p to q, and whether it can do so through an
/// accepting state; then close transitively.
inline bool naive_nba_accepts(Nba const& nba, Lasso const& l) {
  auto const n = nba.state_count;
  std::set<state_t> cur;
  nba.initial.for_each([&](state_t q) { cur.insert(q); });
  for (auto a : l.prefix) {
    std::set<state_t> next;
    for (auto q : cur)
      for (state_t r = 0; r < n; ++r)
        if (nba.succ[q][a].contains(r)) next.insert(r);
    cur = std::move(next);
  }
  // block[p][q] = 0 unreachable, 1 reachable, 2 reachable via F
  std::vector<std::vector<int>> block(n, std::vector<int>(n, 0));
  for (state_t p = 0; p < n; ++p) {
    std::map<state_t, int> front{{p, nba.accepting.contains(p) ? 2 : 1}};
    for (auto a : l.cycle) {
      std::map<state_t, int> next;
      for (auto [q, f] : front)
        for (state_t r = 0; r < n; ++r)
          if (nba.succ[q][a].contains(r)) {
            auto const g = std::max(f, nba.accepting.contains(r) ? 2 : 1);
            next[r] = std::max(next[r], g);
          }
      front = std::move(next);
    }
    for (auto [q, f] : front) block[p][q] = f;
  }
  // reach[p][q]: path of >= 1 blocks; value 2 if some path visits F
  auto reach = block;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = std::max({reach[i][j], reach[i][k], reach[k][j]});
  for (auto s : cur)
    for (state_t q = 0; q < n; ++q) {
      bool const reachable = q == s || reach[s][q];
      if (reachable && reach[q][q] == 2) return true;
    }
  return false;
}

/// Runs enough cycle blocks that the block-boundary state is periodic, then
/// takes the least priority of the next state_count blocks.
inline bool naive_dpa_accepts(Dpa const& dpa, Lasso const& l) {
  auto s = dpa.initial;
  for (auto a : l.prefix) s = dpa.delta[s * dpa.symbol_count() + a];
  for (std::size_t i = 0; i < dpa.state_count; ++i)
    for (auto a : l.cycle) s = dpa.delta[s * dpa.symbol_count() + a];
  priority_t m = ~priority_t{0};
  for (std::size_t i = 0; i < dpa.state_count; ++i)
    for (auto a : l.cycle) {
      m = std::min(m, dpa.priority[s * dpa.symbol_count() + a]);
      s = dpa.delta[s * dpa.symbol_count() + a];
    }
  return m % 2 == 0;
}

/// Direct simulation as the greatest fixpoint of pair removal.
inline std::set<std::pair<state_t, state_t>> naive_simulation(Nba const& nba) {
  auto const n = nba.state_count;
  std::set<std::pair<state_t, state_t>> rel;
  for (state_t p = 0; p < n; ++p)
    for (state_t q = 0; q < n; ++q)
      if (!nba.accepting.contains(p) || nba.accepting.contains(q)) rel.insert({p, q});
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = rel.begin(); it != rel.end();) {
      auto const [p, q] = *it;
      bool ok = true;
      for (symbol_t a = 0; a < nba.symbol_count() && ok; ++a)
        for (auto p2 : nba.succ[p][a].to_vector()) {
          bool matched = false;
          for (auto q2 : nba.succ[q][a].to_vector()) matched = matched || rel.count({p2, q2});
          if (!matched) {
            ok = false;
            break;
          }
        }
      if (ok) {
        ++it;
      } else {
        it = rel.erase(it);
        changed = true;
      }
    }
  }
  return rel;
}

/// Simple cycles of the transition multigraph, each given by its edge
/// indices (state * symbols + symbol). A cycle is listed once, starting at its
/// smallest state.
inline std::vector<std::vector<std::size_t>> simple_cycles(Dpa const& dpa) {
  std::vector<std::vector<std::size_t>> out;
  auto const nsym = dpa.symbol_count();
  std::vector<bool> on_path(dpa.state_count, false);
  std::vector<std::size_t> path;
  std::function<void(state_t, state_t)> dfs = [&](state_t start, state_t v) {
    for (symbol_t a = 0; a < nsym; ++a) {
      auto const e = v * nsym + a;
      auto const w = dpa.delta[e];
      if (w < start) continue;
      path.push_back(e);
      if (w == start) {
        out.push_back(path);
      } else if (!on_path[w]) {
        on_path[w] = true;
        dfs(start, w);
        on_path[w] = false;
      }
      path.pop_back();
    }
  };
  for (state_t s = 0; s < dpa.state_count; ++s) {
    on_path[s] = true;
    dfs(s, s);
    on_path[s] = false;
  }
  return out;
}

/// Priority sequence emitted along a finite word.
inline std::vector<priority_t> output_sequence(Dpa const& dpa, std::vector<symbol_t> const& word) {
  std::vector<priority_t> out;
  auto s = dpa.initial;
  for (auto a : word) {
    out.push_back(dpa.priority[s * dpa.symbol_count() + a]);
    s = dpa.delta[s * dpa.symbol_count() + a];
  }
  return out;
}

/// Checks completeness and well-formed transition targets.
inline bool well_formed(Dpa const& dpa) {
  auto const edges = dpa.state_count * dpa.symbol_count();
  if (dpa.state_count == 0 || dpa.delta.size() != edges || dpa.priority.size() != edges) return false;
  if (dpa.initial >= dpa.state_count) return false;
  return std::all_of(dpa.delta.begin(), dpa.delta.end(), [&](state_t t) { return t < dpa.state_count; });
}

}  // namespace buchidet::testing
