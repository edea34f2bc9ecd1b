#include <doctest.h>

#include <algorithm>
#include <random>

#include "buchidet/successor_trie.hh"

using namespace buchidet;

namespace {

Macrostate single(RankedSlice s) {
  Macrostate m;
  m.comps.push_back(std::move(s));
  return m;
}

/// q1..q6 of the trie figure are states 0..5.
RankedSlice figure_slice() { return {{{2, 3}, 4}, {{1}, 2}, {{4, 5}, 3}, {{0}, 1}}; }

RankedSlice random_slice(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(1, 6);
  auto const n = static_cast<std::size_t>(len(rng));
  std::vector<rank_t> ranks(n);
  for (std::size_t i = 0; i < n; ++i) ranks[i] = static_cast<rank_t>(i + 1);
  std::shuffle(ranks.begin(), ranks.end(), rng);
  RankedSlice s(n);
  state_t next = 0;
  std::uniform_int_distribution<int> size(1, 3);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = size(rng); k > 0; --k) s[i].states.insert(next++);
    s[i].rank = ranks[i];
  }
  // scatter state names so that sets are not contiguous ranges
  std::vector<state_t> perm(next);
  for (state_t q = 0; q < next; ++q) perm[q] = q;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& e : s) {
    StateSet t;
    e.states.for_each([&](state_t q) { t.insert(perm[q]); });
    e.states = t;
  }
  return s;
}

}  // namespace

TEST_SUITE("successor_trie") {
  TEST_CASE("parent index") {
    auto const s = figure_slice();
    CHECK(parent_index(s, 0) == 1);
    CHECK(parent_index(s, 1) == 3);
    CHECK(parent_index(s, 2) == 3);
    CHECK_FALSE(parent_index(s, 3).has_value());

    RankedSlice one{{{7}, 1}};
    CHECK_FALSE(parent_index(one, 0).has_value());

    RankedSlice ascending{{{0}, 1}, {{1}, 2}, {{2}, 3}};
    for (std::size_t i = 0; i < 3; ++i) CHECK_FALSE(parent_index(ascending, i).has_value());
  }

  TEST_CASE("encode") {
    CHECK(encode_sequence(figure_slice()) == SetSequence{{0, 1, 2, 3, 4, 5}, {1, 2, 3}, {4, 5}, {2, 3}});
    CHECK(encode_sequence(RankedSlice{{{0}, 1}, {{1}, 2}}) == SetSequence{{0, 1}, {0}, {1}});
    CHECK(encode_sequence(RankedSlice{{{4}, 1}}) == SetSequence{{4}});
  }

  TEST_CASE("decode inverts encode") {
    CHECK(decode_sequence(encode_sequence(figure_slice())) == figure_slice());
    std::mt19937 rng(7);
    for (int i = 0; i < 1000; ++i) {
      auto const s = random_slice(rng);
      auto const seq = encode_sequence(s);
      // every later element is a nonempty proper subset of an earlier one
      for (std::size_t j = 1; j < seq.size(); ++j) {
        CHECK_FALSE(seq[j].empty());
        bool inside = false;
        for (std::size_t k = 0; k < j; ++k) inside = inside || (seq[j].subset_of(seq[k]) && seq[j] != seq[k]);
        CHECK(inside);
      }
      CHECK(decode_sequence(seq) == s);
    }
  }

  TEST_CASE("decode rejects malformed sequences") {
    CHECK_THROWS_AS((void)decode_sequence(SetSequence{{0, 1}, {2}}), std::invalid_argument);
    CHECK_THROWS_AS((void)decode_sequence(SetSequence{{0, 1}, {0}, {0}}), std::invalid_argument);
    // the outer set is a virtual root, so one full child is a single-set slice
    CHECK(decode_sequence(SetSequence{{0, 1}, {0, 1}}) == RankedSlice{{{0, 1}, 1}});
  }

  TEST_CASE("legal merges") {
    auto const policy = ComponentPolicy::single(4);
    auto const x = single({{{0}, 3}, {{1}, 4}, {{2}, 2}, {{3}, 1}});
    CHECK(is_legal_merge(x, x, 5, policy));
    CHECK(is_legal_merge(x, single({{{0, 1, 2}, 2}, {{3}, 1}}), 2, policy));
    // rank 4 is a younger sibling of the floor set, not part of its subtree
    CHECK_FALSE(is_legal_merge(x, single({{{0, 1}, 3}, {{2}, 2}, {{3}, 1}}), 3, policy));
    // rank 2 is below the floor and must stay untouched
    CHECK_FALSE(is_legal_merge(x, single({{{0, 1, 2}, 2}, {{3}, 1}}), 3, policy));
    // merging across the set of rank 1
    CHECK_FALSE(is_legal_merge(x, single({{{0, 1, 2, 3}, 1}}), 2, policy));
    // the set of rank 2 absorbs its subtree but not its younger sibling
    auto const y = single({{{0}, 3}, {{2}, 2}, {{1}, 4}, {{3}, 1}});
    CHECK(is_legal_merge(y, single({{{0, 2}, 2}, {{1}, 3}, {{3}, 1}}), 2, policy));
    CHECK_FALSE(is_legal_merge(y, single({{{0, 1, 2}, 2}, {{3}, 1}}), 2, policy));
    CHECK(is_legal_merge(y, single({{{0}, 3}, {{2}, 2}, {{1}, 4}, {{3}, 1}}), 2, policy));
  }

  TEST_CASE("trie lookups") {
    auto const policy = ComponentPolicy::single(4);
    SuccessorTrie trie;
    auto const x = single({{{0}, 3}, {{1}, 4}, {{2}, 2}, {{3}, 1}});
    CHECK_FALSE(trie.find(x, 5, policy).has_value());

    trie.insert(x, 7);
    CHECK(trie.find(x, 5, policy) == 7u);
    auto const nodes = trie.node_count();
    trie.insert(x, 7);
    CHECK(trie.node_count() == nodes);

    auto const merged = single({{{0, 1, 2}, 2}, {{3}, 1}});
    SuccessorTrie t2;
    t2.insert(merged, 3);
    CHECK(t2.find(x, 2, policy) == 3u);
    CHECK_FALSE(t2.find(x, 3, policy).has_value());

    // differs from x in the set of rank 2, which lies below the floor
    auto const other = single({{{0}, 3}, {{1, 2}, 2}, {{3}, 1}});
    SuccessorTrie t3;
    t3.insert(other, 1);
    CHECK_FALSE(t3.find(x, 3, policy).has_value());
    CHECK(is_legal_merge(x, other, 2, policy));
    CHECK_FALSE(is_legal_merge(x, other, 3, policy));
  }

  TEST_CASE("shared prefixes share trie nodes") {
    SuccessorTrie trie;
    auto const a = single({{{0}, 2}, {{1, 2}, 1}});
    auto const b = single({{{0}, 2}, {{1}, 3}, {{2}, 1}});
    trie.insert(a, 0);
    auto const after_a = trie.node_count();
    trie.insert(b, 1);
    auto const policy = ComponentPolicy::single(3);
    CHECK(trie.find(a, 3, policy) == 0u);
    CHECK(trie.find(b, 4, policy) == 1u);
    SuccessorTrie only_b;
    only_b.insert(b, 1);
    CHECK(trie.node_count() < after_a + only_b.node_count());
  }
}
