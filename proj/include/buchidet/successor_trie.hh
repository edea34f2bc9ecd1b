#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "buchidet/macrostate.hh"

namespace buchidet {

using SetSequence = std::vector<StateSet>;

/// Position of the parent in the rank-tree: the closest position to the right
/// with a smaller rank.
[[nodiscard]] std::optional<std::size_t> parent_index(RankedSlice const& slice, std::size_t i);

/// Union of the sets in the rank-tree subtree of position i.
[[nodiscard]] StateSet subtree_union(RankedSlice const& slice, std::size_t i);

/// Encodes a slice as its set of all states followed by the subtree unions in
/// ascending rank order; unions equal to the full set are left out.
[[nodiscard]] SetSequence encode_sequence(RankedSlice const& slice);

/// Inverse of encode_sequence (ranks 1..n). Throws std::invalid_argument on
/// malformed sequences.
[[nodiscard]] RankedSlice decode_sequence(SetSequence const& seq);

/// True if `y` arises from `x` by merging runs of adjacent sets in general
/// components whose ranks are all >= floor (merged set takes the smallest
/// rank of its run), followed by rank normalization. A set ranked exactly
/// `floor` ends its run: it may absorb its subtree but nothing to its right.
[[nodiscard]] bool is_legal_merge(Macrostate const& x, Macrostate const& y, rank_t floor,
                                  ComponentPolicy const& policy);

/// Tries of already constructed macrostates, one per (buffer, per-component
/// state set) key. A macrostate is stored as the word of its subtree unions
/// in ascending global rank order, each tagged with its component.
class SuccessorTrie {
 public:
  void insert(Macrostate const& m, std::uint32_t id);

  /// Searches for a stored macrostate that is a legal merge of `unmerged`
  /// with respect to `floor`. Candidates are visited in depth-first order with
  /// children in insertion order; the first one passing the legality check
  /// and `accept` is returned.
  [[nodiscard]] std::optional<std::uint32_t> find(Macrostate const& unmerged, rank_t floor,
                                                  ComponentPolicy const& policy,
                                                  std::function<bool(std::uint32_t)> const& accept = {}) const;

  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Element {
    std::uint32_t comp = 0;
    StateSet states;
    friend bool operator==(Element const&, Element const&) = default;
  };
  struct Node {
    Element label;
    std::vector<std::uint32_t> children;
    std::int64_t entry = -1;
  };
  struct Entry {
    Macrostate macrostate;
    std::uint32_t id;
  };
  struct RootKey {
    std::vector<StateSet> parts;
    friend bool operator==(RootKey const&, RootKey const&) = default;
  };
  struct RootKeyHash {
    std::size_t operator()(RootKey const& k) const {
      std::size_t h = 0;
      for (auto const& p : k.parts) hash_combine(h, p.hash());
      return h;
    }
  };

  static RootKey key_of(Macrostate const& m);
  static std::vector<Element> word_of(Macrostate const& m);
  [[nodiscard]] std::optional<std::uint32_t> child(std::uint32_t node, Element const& e) const;

  std::vector<Node> nodes_;
  std::vector<Entry> entries_;
  std::unordered_map<RootKey, std::uint32_t, RootKeyHash> roots_;
};

}  // namespace buchidet
