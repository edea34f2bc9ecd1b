#include "buchidet/successor_trie.hh"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace buchidet {

std::optional<std::size_t> parent_index(RankedSlice const& slice, std::size_t i) {
  for (auto k = i + 1; k < slice.size(); ++k)
    if (slice[k].rank < slice[i].rank) return k;
  return std::nullopt;
}

StateSet subtree_union(RankedSlice const& slice, std::size_t i) {
  StateSet u = slice[i].states;
  for (auto j = i; j-- > 0;) {
    if (slice[j].rank < slice[i].rank) break;
    u |= slice[j].states;
  }
  return u;
}

SetSequence encode_sequence(RankedSlice const& slice) {
  StateSet all;
  for (auto const& s : slice) all |= s.states;
  std::vector<std::size_t> order(slice.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return slice[a].rank < slice[b].rank; });
  SetSequence seq{all};
  for (auto i : order) {
    auto u = subtree_union(slice, i);
    if (u != all) seq.push_back(std::move(u));
  }
  return seq;
}

namespace {

struct TreeNode {
  StateSet host;
  std::vector<TreeNode*> children;
  rank_t order = 0;
};

void linearize(TreeNode const* n, rank_t shift, bool is_virtual_root, RankedSlice& out) {
  for (auto const* c : n->children) linearize(c, shift, false, out);
  if (!is_virtual_root) out.push_back({n->host, n->order + shift});
}

}  // namespace

RankedSlice decode_sequence(SetSequence const& seq) {
  if (seq.empty()) return {};
  std::vector<std::unique_ptr<TreeNode>> pool;
  pool.push_back(std::make_unique<TreeNode>());
  pool[0]->host = seq[0];
  for (std::size_t i = 1; i < seq.size(); ++i) {
    auto const& s = seq[i];
    TreeNode* owner = nullptr;
    for (auto& n : pool)
      if (!s.empty() && s.subset_of(n->host)) {
        owner = n.get();
        break;
      }
    if (!owner)
      throw std::invalid_argument("set sequence element " + std::to_string(i) + " is not inside a tree node");
    pool.push_back(std::make_unique<TreeNode>());
    auto* child = pool.back().get();
    child->host = s;
    child->order = static_cast<rank_t>(i);
    owner->host -= s;
    owner->children.push_back(child);
  }
  for (std::size_t i = 1; i < pool.size(); ++i)
    if (pool[i]->host.empty()) throw std::invalid_argument("set sequence leaves an empty tree node");
  RankedSlice out;
  bool const root_real = !pool[0]->host.empty();
  // real root takes rank 1, so later nodes shift by one; otherwise ranks start at 1
  linearize(pool[0].get(), root_real ? 1 : 0, !root_real, out);
  return out;
}

bool is_legal_merge(Macrostate const& x, Macrostate const& y, rank_t floor, ComponentPolicy const& policy) {
  if (x.accepting_sink || y.accepting_sink) return x == y;
  if (x.buffer != y.buffer || x.comps.size() != y.comps.size()) return false;
  std::vector<std::pair<rank_t, rank_t>> run_min_to_rank;
  for (std::size_t i = 0; i < x.comps.size(); ++i) {
    auto const& xs = x.comps[i];
    auto const& ys = y.comps[i];
    std::size_t ix = 0;
    for (auto const& yset : ys) {
      StateSet acc;
      rank_t run_min = 0;
      std::size_t len = 0;
      bool low = false;
      bool dominant_inside = false;
      while (ix < xs.size() && acc != yset.states) {
        if (!xs[ix].states.subset_of(yset.states)) return false;
        // the dominating set may only absorb sets to its left (its subtree)
        dominant_inside = dominant_inside || (len > 0 && run_min == floor);
        acc |= xs[ix].states;
        run_min = len == 0 ? xs[ix].rank : std::min(run_min, xs[ix].rank);
        low = low || xs[ix].rank < floor;
        ++len;
        ++ix;
      }
      if (acc != yset.states) return false;
      if (len > 1 && (low || dominant_inside || policy.mode[i] != ComponentMode::general)) return false;
      run_min_to_rank.emplace_back(run_min, yset.rank);
    }
    if (ix != xs.size()) return false;
  }
  std::sort(run_min_to_rank.begin(), run_min_to_rank.end());
  for (std::size_t j = 1; j < run_min_to_rank.size(); ++j)
    if (run_min_to_rank[j - 1].second >= run_min_to_rank[j].second) return false;
  return true;
}

SuccessorTrie::RootKey SuccessorTrie::key_of(Macrostate const& m) {
  RootKey k;
  k.parts.push_back(m.buffer);
  for (auto const& c : m.comps) {
    StateSet u;
    for (auto const& s : c) u |= s.states;
    k.parts.push_back(std::move(u));
  }
  return k;
}

std::vector<SuccessorTrie::Element> SuccessorTrie::word_of(Macrostate const& m) {
  std::vector<std::pair<rank_t, Element>> tagged;
  for (std::size_t i = 0; i < m.comps.size(); ++i)
    for (std::size_t j = 0; j < m.comps[i].size(); ++j)
      tagged.push_back({m.comps[i][j].rank, {static_cast<std::uint32_t>(i), subtree_union(m.comps[i], j)}});
  std::sort(tagged.begin(), tagged.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
  std::vector<Element> w;
  w.reserve(tagged.size());
  for (auto& t : tagged) w.push_back(std::move(t.second));
  return w;
}

std::optional<std::uint32_t> SuccessorTrie::child(std::uint32_t node, Element const& e) const {
  for (auto c : nodes_[node].children)
    if (nodes_[c].label == e) return c;
  return std::nullopt;
}

void SuccessorTrie::insert(Macrostate const& m, std::uint32_t id) {
  auto [it, fresh] = roots_.try_emplace(key_of(m), static_cast<std::uint32_t>(nodes_.size()));
  if (fresh) nodes_.emplace_back();
  auto node = it->second;
  for (auto const& e : word_of(m)) {
    auto next = child(node, e);
    if (!next) {
      next = static_cast<std::uint32_t>(nodes_.size());
      nodes_.push_back({e, {}, -1});
      nodes_[node].children.push_back(*next);
    }
    node = *next;
  }
  if (nodes_[node].entry < 0) {
    nodes_[node].entry = static_cast<std::int64_t>(entries_.size());
    entries_.push_back({m, id});
  }
}

std::optional<std::uint32_t> SuccessorTrie::find(Macrostate const& unmerged, rank_t floor,
                                                 ComponentPolicy const& policy,
                                                 std::function<bool(std::uint32_t)> const& accept) const {
  auto const root = roots_.find(key_of(unmerged));
  if (root == roots_.end()) return std::nullopt;
  auto const word = word_of(unmerged);
  auto node = root->second;
  std::size_t depth = 0;
  for (; depth + 1 < floor && depth < word.size(); ++depth) {
    auto next = child(node, word[depth]);
    if (!next) return std::nullopt;
    node = *next;
  }

  std::vector<rank_t> max_depth;
  for (auto const& c : unmerged.comps)
    for (auto const& s : c)
      s.states.for_each([&](state_t q) {
        if (q >= max_depth.size()) max_depth.resize(q + 1, 0);
        max_depth[q] = s.rank;
      });

  std::optional<std::uint32_t> result;
  auto visit = [&](auto&& self, std::uint32_t n, std::size_t d) -> bool {
    auto const& nd = nodes_[n];
    if (nd.entry >= 0) {
      auto const& e = entries_[static_cast<std::size_t>(nd.entry)];
      if (is_legal_merge(unmerged, e.macrostate, floor, policy) && (!accept || accept(e.id))) {
        result = e.id;
        return true;
      }
    }
    for (auto c : nd.children) {
      bool ok = true;
      nodes_[c].label.states.for_each([&](state_t q) {
        if (ok && (q >= max_depth.size() || max_depth[q] < d + 1)) ok = false;
      });
      if (ok && self(self, c, d + 1)) return true;
    }
    return false;
  };
  visit(visit, node, depth);
  return result;
}

}  // namespace buchidet
