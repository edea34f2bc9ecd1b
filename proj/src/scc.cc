#include "buchidet/scc.hh"

#include <algorithm>
#include <limits>

namespace buchidet {

SccDecomposition tarjan_scc(Adjacency const& graph) {
  constexpr auto unvisited = std::numeric_limits<std::uint32_t>::max();
  auto const n = graph.size();
  SccDecomposition res;
  res.comp_of.assign(n, unvisited);
  std::vector<std::uint32_t> index(n, unvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  // (node, next edge position)
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  std::uint32_t counter = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos == 0 && index[v] == unvisited) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (pos < graph[v].size()) {
        auto const w = graph[v][pos++];
        if (index[w] == unvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        auto const c = static_cast<std::uint32_t>(res.members.size());
        res.members.emplace_back();
        std::uint32_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          res.comp_of[w] = c;
          res.members.back().push_back(w);
        } while (w != v);
        std::sort(res.members.back().begin(), res.members.back().end());
      }
      auto const done = v;
      call.pop_back();
      if (!call.empty()) {
        auto const parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }

  auto const count = res.members.size();
  res.topo_order.resize(count);
  for (std::size_t i = 0; i < count; ++i) res.topo_order[i] = static_cast<std::uint32_t>(count - 1 - i);
  res.nontrivial.assign(count, false);
  for (std::uint32_t v = 0; v < n; ++v)
    for (auto w : graph[v])
      if (res.comp_of[v] == res.comp_of[w]) res.nontrivial[res.comp_of[v]] = true;
  return res;
}

std::vector<bool> reachable_from(Adjacency const& graph, std::vector<std::uint32_t> const& roots) {
  std::vector<bool> seen(graph.size(), false);
  std::vector<std::uint32_t> todo;
  for (auto r : roots)
    if (!seen[r]) {
      seen[r] = true;
      todo.push_back(r);
    }
  while (!todo.empty()) {
    auto const v = todo.back();
    todo.pop_back();
    for (auto w : graph[v])
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
  }
  return seen;
}

Adjacency reverse_graph(Adjacency const& graph) {
  Adjacency rev(graph.size());
  for (std::uint32_t v = 0; v < graph.size(); ++v)
    for (auto w : graph[v]) rev[w].push_back(v);
  return rev;
}

}  // namespace buchidet
