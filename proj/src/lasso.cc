#include "buchidet/lasso.hh"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "buchidet/scc.hh"

namespace buchidet {

std::string format_lasso(Lasso const& l, Alphabet const& alpha) {
  auto word = [&](std::vector<symbol_t> const& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += " ";
      s += alpha.render(w[i]);
    }
    return s;
  };
  return word(l.prefix) + "|" + word(l.cycle);
}

bool nba_accepts_lasso(Nba const& nba, Lasso const& l) {
  if (l.cycle.empty()) throw std::invalid_argument("lasso cycle must not be empty");
  auto cur = nba.initial;
  for (auto a : l.prefix) cur = nba.post(cur, a);
  if (cur.empty()) return false;

  auto const len = l.cycle.size();
  auto const node = [len](state_t q, std::size_t i) { return static_cast<std::uint32_t>(q * len + i); };
  Adjacency g(nba.state_count * len);
  for (state_t q = 0; q < nba.state_count; ++q)
    for (std::size_t i = 0; i < len; ++i)
      nba.post(q, l.cycle[i]).for_each([&](state_t r) { g[node(q, i)].push_back(node(r, (i + 1) % len)); });

  std::vector<std::uint32_t> roots;
  cur.for_each([&](state_t q) { roots.push_back(node(q, 0)); });
  auto const reach = reachable_from(g, roots);
  auto const d = tarjan_scc(g);
  for (state_t q = 0; q < nba.state_count; ++q) {
    if (!nba.accepting.contains(q)) continue;
    for (std::size_t i = 0; i < len; ++i) {
      auto const v = node(q, i);
      if (reach[v] && d.nontrivial[d.comp_of[v]]) return true;
    }
  }
  return false;
}

bool dpa_accepts_lasso(Dpa const& dpa, Lasso const& l) {
  if (l.cycle.empty()) throw std::invalid_argument("lasso cycle must not be empty");
  auto s = dpa.initial;
  for (auto a : l.prefix) s = dpa.succ(s, a);
  std::unordered_map<state_t, std::size_t> seen;
  std::vector<priority_t> block_min;
  for (;;) {
    auto [it, fresh] = seen.try_emplace(s, block_min.size());
    if (!fresh) {
      auto const from = it->second;
      auto const m = *std::min_element(block_min.begin() + static_cast<std::ptrdiff_t>(from), block_min.end());
      return m % 2 == 0;
    }
    auto m = std::numeric_limits<priority_t>::max();
    for (auto a : l.cycle) {
      m = std::min(m, dpa.prio(s, a));
      s = dpa.succ(s, a);
    }
    block_min.push_back(m);
  }
}

std::optional<Lasso> bounded_equivalence(Nba const& nba, Dpa const& dpa, std::size_t max_prefix,
                                         std::size_t max_cycle) {
  if (nba.alphabet != dpa.alphabet) throw std::invalid_argument("automata have different alphabets");
  std::optional<Lasso> cex;
  for_each_lasso(nba.symbol_count(), max_prefix, max_cycle, [&](Lasso const& l) {
    if (nba_accepts_lasso(nba, l) != dpa_accepts_lasso(dpa, l)) {
      cex = l;
      return false;
    }
    return true;
  });
  return cex;
}

namespace {

struct Product {
  std::size_t nsym = 0;
  std::vector<std::pair<state_t, state_t>> nodes;
  std::vector<std::uint32_t> succ;  // node * nsym + a
  std::vector<priority_t> p1;
  std::vector<priority_t> p2;
};

Product build_product(Dpa const& a, Dpa const& b) {
  Product p;
  p.nsym = a.symbol_count();
  std::map<std::pair<state_t, state_t>, std::uint32_t> ids;
  auto intern = [&](std::pair<state_t, state_t> x) {
    auto [it, fresh] = ids.try_emplace(x, static_cast<std::uint32_t>(p.nodes.size()));
    if (fresh) p.nodes.push_back(x);
    return it->second;
  };
  intern({a.initial, b.initial});
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    auto const [s, t] = p.nodes[i];
    for (symbol_t c = 0; c < p.nsym; ++c) {
      auto const next = intern({a.succ(s, c), b.succ(t, c)});
      p.succ.push_back(next);
      p.p1.push_back(a.prio(s, c));
      p.p2.push_back(b.prio(t, c));
    }
  }
  return p;
}

/// Symbols of a shortest path from `from` to `to` using edges accepted by
/// `allowed`, exploring symbols in ascending order.
template <typename Allowed>
std::optional<std::vector<symbol_t>> find_path(Product const& p, std::uint32_t from, std::uint32_t to,
                                               Allowed&& allowed) {
  std::vector<std::int64_t> via(p.nodes.size(), -1);
  std::vector<bool> seen(p.nodes.size(), false);
  std::deque<std::uint32_t> todo{from};
  seen[from] = true;
  while (!todo.empty()) {
    auto const v = todo.front();
    todo.pop_front();
    if (v == to) break;
    for (symbol_t c = 0; c < p.nsym; ++c) {
      auto const e = v * p.nsym + c;
      auto const w = p.succ[e];
      if (seen[w] || !allowed(e)) continue;
      seen[w] = true;
      via[w] = static_cast<std::int64_t>(e);
      todo.push_back(w);
    }
  }
  if (!seen[to]) return std::nullopt;
  std::vector<symbol_t> word;
  for (auto v = to; v != from;) {
    auto const e = static_cast<std::size_t>(via[v]);
    word.push_back(static_cast<symbol_t>(e % p.nsym));
    v = static_cast<std::uint32_t>(e / p.nsym);
  }
  std::reverse(word.begin(), word.end());
  return word;
}

}  // namespace

std::optional<Lasso> dpa_equivalent(Dpa const& a, Dpa const& b) {
  if (a.alphabet != b.alphabet) throw std::invalid_argument("automata have different alphabets");
  auto const p = build_product(a, b);
  auto sorted_unique = [](std::vector<priority_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  auto const pr1 = sorted_unique(p.p1);
  auto const pr2 = sorted_unique(p.p2);
  auto const nedges = p.succ.size();

  for (auto i : pr1)
    for (auto j : pr2) {
      if (i % 2 == j % 2) continue;
      auto allowed = [&](std::size_t e) { return p.p1[e] >= i && p.p2[e] >= j; };
      Adjacency g(p.nodes.size());
      for (std::size_t e = 0; e < nedges; ++e)
        if (allowed(e)) g[e / p.nsym].push_back(p.succ[e]);
      auto const d = tarjan_scc(g);
      std::vector<std::int64_t> e1(d.size(), -1);
      std::vector<std::int64_t> e2(d.size(), -1);
      for (std::size_t e = 0; e < nedges; ++e) {
        if (!allowed(e)) continue;
        auto const c = d.comp_of[e / p.nsym];
        if (c != d.comp_of[p.succ[e]]) continue;
        if (p.p1[e] == i && e1[c] < 0) e1[c] = static_cast<std::int64_t>(e);
        if (p.p2[e] == j && e2[c] < 0) e2[c] = static_cast<std::int64_t>(e);
      }
      for (std::uint32_t c = 0; c < d.size(); ++c) {
        if (e1[c] < 0 || e2[c] < 0) continue;
        auto inside = [&](std::size_t e) {
          return allowed(e) && d.comp_of[e / p.nsym] == c && d.comp_of[p.succ[e]] == c;
        };
        auto const x1 = static_cast<std::uint32_t>(static_cast<std::size_t>(e1[c]) / p.nsym);
        auto const y1 = p.succ[static_cast<std::size_t>(e1[c])];
        auto const x2 = static_cast<std::uint32_t>(static_cast<std::size_t>(e2[c]) / p.nsym);
        auto const y2 = p.succ[static_cast<std::size_t>(e2[c])];
        Lasso l;
        l.prefix = *find_path(p, 0, x1, [](std::size_t) { return true; });
        l.cycle.push_back(static_cast<symbol_t>(static_cast<std::size_t>(e1[c]) % p.nsym));
        auto const mid = *find_path(p, y1, x2, inside);
        l.cycle.insert(l.cycle.end(), mid.begin(), mid.end());
        l.cycle.push_back(static_cast<symbol_t>(static_cast<std::size_t>(e2[c]) % p.nsym));
        auto const back = *find_path(p, y2, x1, inside);
        l.cycle.insert(l.cycle.end(), back.begin(), back.end());
        return l;
      }
    }
  return std::nullopt;
}

}  // namespace buchidet
