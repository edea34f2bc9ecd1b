#include "buchidet/postprocess.hh"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "buchidet/scc.hh"

namespace buchidet {

namespace {

using EdgeList = std::vector<std::size_t>;

/// SCCs of the subgraph formed by `edges`; returns the edges internal to each
/// nontrivial SCC and the edges outside all of them.
std::pair<std::vector<EdgeList>, EdgeList> split_by_scc(Dpa const& dpa, EdgeList const& edges) {
  auto const nsym = dpa.symbol_count();
  std::unordered_map<std::size_t, std::uint32_t> local;
  std::vector<std::size_t> states;
  auto id = [&](std::size_t s) {
    auto [it, fresh] = local.try_emplace(s, static_cast<std::uint32_t>(states.size()));
    if (fresh) states.push_back(s);
    return it->second;
  };
  for (auto e : edges) {
    id(e / nsym);
    id(dpa.delta[e]);
  }
  Adjacency g(states.size());
  for (auto e : edges) g[local.at(e / nsym)].push_back(local.at(dpa.delta[e]));
  auto const d = tarjan_scc(g);
  std::vector<EdgeList> inner(d.size());
  EdgeList outer;
  for (auto e : edges) {
    auto const a = d.comp_of[local.at(e / nsym)];
    auto const b = d.comp_of[local.at(dpa.delta[e])];
    if (a == b) {
      inner[a].push_back(e);
    } else {
      outer.push_back(e);
    }
  }
  std::vector<EdgeList> result;
  for (auto& l : inner)
    if (!l.empty()) result.push_back(std::move(l));
  return {std::move(result), std::move(outer)};
}

void relabel_scc(Dpa const& dpa, EdgeList const& edges, priority_t next, std::vector<priority_t>& out) {
  auto m = dpa.priority[edges.front()];
  for (auto e : edges) m = std::min(m, dpa.priority[e]);
  if ((next % 2) != (m % 2)) ++next;
  EdgeList rest;
  for (auto e : edges) {
    if (dpa.priority[e] == m) {
      out[e] = next;
    } else {
      rest.push_back(e);
    }
  }
  if (rest.empty()) return;
  auto const [sub, outer] = split_by_scc(dpa, rest);
  for (auto e : outer) out[e] = next;
  for (auto const& s : sub) relabel_scc(dpa, s, next, out);
}

}  // namespace

Dpa minimize_priorities(Dpa const& dpa) {
  EdgeList all(dpa.priority.size());
  for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
  auto const [top, transient] = split_by_scc(dpa, all);

  std::vector<priority_t> out(dpa.priority.size(), 0);
  std::vector<bool> even_start;
  for (auto const& s : top) {
    relabel_scc(dpa, s, 0, out);
    auto m = dpa.priority[s.front()];
    for (auto e : s) m = std::min(m, dpa.priority[e]);
    even_start.push_back(m % 2 == 0);
  }

  // Even-start SCCs begin at 0 and odd-start ones at 1; shifting the even ones
  // up by two can save a value when the odd chains are longer.
  auto distinct = [&](priority_t shift) {
    std::set<priority_t> used;
    for (std::size_t i = 0; i < top.size(); ++i)
      for (auto e : top[i]) used.insert(out[e] + (even_start[i] ? shift : 0));
    return used;
  };
  auto const plain = distinct(0);
  auto const shifted = distinct(2);
  priority_t const shift = shifted.size() < plain.size() ? 2 : 0;
  if (shift)
    for (std::size_t i = 0; i < top.size(); ++i)
      if (even_start[i])
        for (auto e : top[i]) out[e] += shift;

  auto const& used = shift ? shifted : plain;
  priority_t const fill = used.empty() ? 0 : *used.begin();
  for (auto e : transient) out[e] = fill;

  Dpa r = dpa;
  r.priority = std::move(out);
  return r;
}

std::vector<std::uint32_t> mealy_partition(Dpa const& dpa) {
  auto const n = dpa.state_count;
  auto const nsym = dpa.symbol_count();
  std::vector<std::uint32_t> block(n, 0);
  std::size_t blocks = n == 0 ? 0 : 1;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> sig_ids;
    std::vector<std::uint32_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::uint32_t> sig;
      sig.reserve(1 + 2 * nsym);
      sig.push_back(block[s]);
      for (std::size_t a = 0; a < nsym; ++a) {
        auto const e = s * nsym + a;
        sig.push_back(dpa.priority[e]);
        sig.push_back(block[dpa.delta[e]]);
      }
      auto [it, fresh] = sig_ids.try_emplace(std::move(sig), static_cast<std::uint32_t>(sig_ids.size()));
      next[s] = it->second;
    }
    block = std::move(next);
    if (sig_ids.size() == blocks) break;
    blocks = sig_ids.size();
  }
  return block;
}

Dpa minimize_mealy(Dpa const& dpa) {
  if (dpa.state_count == 0) return dpa;
  auto const block = mealy_partition(dpa);
  auto const nsym = dpa.symbol_count();
  std::size_t const nblocks = *std::max_element(block.begin(), block.end()) + 1;
  std::vector<std::int64_t> rep(nblocks, -1);
  for (std::size_t s = 0; s < dpa.state_count; ++s)
    if (rep[block[s]] < 0) rep[block[s]] = static_cast<std::int64_t>(s);

  Dpa q(nblocks, dpa.alphabet);
  for (std::size_t b = 0; b < nblocks; ++b) {
    auto const s = static_cast<state_t>(rep[b]);
    for (std::size_t a = 0; a < nsym; ++a)
      q.set(static_cast<state_t>(b), static_cast<symbol_t>(a), block[dpa.succ(s, static_cast<symbol_t>(a))],
            dpa.prio(s, static_cast<symbol_t>(a)));
  }
  if (!dpa.tag.empty()) {
    q.tag.resize(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) q.tag[b] = dpa.tag[static_cast<std::size_t>(rep[b])];
  }
  q.initial = block[dpa.initial];
  return restrict_to_reachable(q);
}

Dpa restrict_to_reachable(Dpa const& dpa) {
  auto const nsym = dpa.symbol_count();
  std::vector<std::int64_t> renum(dpa.state_count, -1);
  std::vector<state_t> order{dpa.initial};
  renum[dpa.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t a = 0; a < nsym; ++a) {
      auto const t = dpa.succ(order[i], static_cast<symbol_t>(a));
      if (renum[t] < 0) {
        renum[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
    }
  Dpa r(order.size(), dpa.alphabet);
  if (!dpa.tag.empty()) r.tag.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!dpa.tag.empty()) r.tag[i] = dpa.tag[order[i]];
    for (std::size_t a = 0; a < nsym; ++a) {
      auto const s = static_cast<symbol_t>(a);
      r.set(static_cast<state_t>(i), s, static_cast<state_t>(renum[dpa.succ(order[i], s)]), dpa.prio(order[i], s));
    }
  }
  r.initial = 0;
  return r;
}

Dpa postprocess(Dpa const& dpa) {
  return normalize_priorities(minimize_mealy(minimize_priorities(dpa)));
}

}  // namespace buchidet
