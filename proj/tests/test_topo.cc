#include <doctest.h>

#include <set>

#include "buchidet/families.hh"
#include "buchidet/lasso.hh"
#include "buchidet/scc.hh"
#include "buchidet/topo.hh"
#include "support.hh"

using namespace buchidet;
using namespace buchidet::testing;

namespace {

/// Fragment with the given internal edges over one symbol per edge slot;
/// unused slots are holes.
PartialDpa fragment(std::size_t states, std::size_t symbols, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  PartialDpa f;
  f.ex.states.resize(states);
  f.ex.node.resize(states);
  f.ex.symbol_count = symbols;
  f.ex.target.assign(states * symbols, -1);
  f.ex.priority.assign(states * symbols, 1);
  std::vector<std::size_t> used(states, 0);
  for (auto [from, to] : edges) f.ex.target[from * symbols + used[from]++] = to;
  f.node.assign(states, 0);
  return f;
}

std::size_t scc_count(Dpa const& d) {
  Adjacency g(d.state_count);
  for (state_t s = 0; s < d.state_count; ++s)
    for (symbol_t a = 0; a < d.symbol_count(); ++a) g[s].push_back(d.succ(s, a));
  return tarjan_scc(g).size();
}

}  // namespace

TEST_SUITE("topo_pipeline") {
  TEST_CASE("The two-state example has a single powerset SCC and no holes") {
    auto const nba = two_state_nba();
    DetContext ctx(nba, DetConfig::from_opts("T"));
    auto const ps = build_powerset_structure(nba);
    auto const f = determinize_powerset_scc(ctx, ps, ps.scc.comp_of[ps.initial], ctx.initial_macrostate(nba.initial),
                                            ps.initial);
    CHECK(f.ex.states.size() == 2);
    for (auto t : f.ex.target) CHECK(t >= 0);
    CHECK(select_kept_bottom(f).size() == 2);

    auto const topo = determinize_with_topo(nba, DetConfig::from_opts("T"));
    auto const plain = determinize(nba, DetConfig::from_opts("def"));
    CHECK(topo.delta == plain.delta);
    CHECK(topo.priority == plain.priority);
  }

  TEST_CASE("empty powerset node becomes the rejecting sink") {
    Nba n(2, ab_alphabet());
    n.add_edge(0, sym_a, 1);
    n.add_edge(1, sym_a, 1);
    n.initial = {0};
    n.accepting = {1};
    auto const d = determinize_with_topo(n, DetConfig::from_opts("T"));
    CHECK(well_formed(d));
    bool found_sink = false;
    for (state_t s = 0; s < d.state_count; ++s)
      if (d.succ(s, sym_a) == s && d.succ(s, sym_b) == s && d.prio(s, sym_a) == 1 && d.prio(s, sym_b) == 1)
        found_sink = true;
    CHECK(found_sink);
    CHECK_FALSE(dpa_equivalent(d, determinize(n, DetConfig::from_opts("def"))).has_value());
  }

  TEST_CASE("kept bottom SCC selection") {
    // one SCC: 0 -> 1 -> 2 -> 0
    auto const cycle = fragment(3, 1, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(select_kept_bottom(cycle) == std::vector<std::uint32_t>{0, 1, 2});

    // 0 leads to a 5-cycle {1..5} and a 3-cycle {6,7,8}
    auto const two = fragment(9, 2, {{0, 1}, {0, 6}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {6, 7}, {7, 8}, {8, 6}});
    CHECK(select_kept_bottom(two) == std::vector<std::uint32_t>{6, 7, 8});

    // coverage requirement rules out the smaller one
    auto tagged = two;
    for (std::uint32_t s = 1; s <= 5; ++s) tagged.node[s] = 1;
    CHECK(select_kept_bottom(tagged, {1}) == std::vector<std::uint32_t>{1, 2, 3, 4, 5});
    CHECK(select_kept_bottom(tagged, {2}).empty());
  }

  TEST_CASE("node-keyed fragments cover their powerset SCC") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      auto const nba = trim(random_nba({2 + seed % 6, 2, 1.5, 0.3, seed}));
      if (nba.state_count == 0) continue;
      DetContext ctx(nba, DetConfig::from_opts("T"));
      auto const ps = build_powerset_structure(nba);
      auto const c = ps.scc.comp_of[ps.initial];
      auto const f = determinize_powerset_scc(ctx, ps, c, ctx.initial_macrostate(nba.initial), ps.initial, {}, true);
      auto const kept = select_kept_bottom(f);
      std::set<std::uint32_t> tags;
      for (auto s : kept) tags.insert(f.node[s]);
      auto const& members = ps.scc.members[c];
      CHECK(tags == std::set<std::uint32_t>(members.begin(), members.end()));
    }
  }

  TEST_CASE("C(2) shrinks under the topological optimization") {
    auto const c2 = family_c(2);
    for (auto m : {MergeStrategy::muller_schupp, MergeStrategy::safra, MergeStrategy::max_collapse}) {
      auto const t = determinize_with_topo(c2, DetConfig::from_opts("T", m));
      auto const d = determinize(c2, DetConfig::from_opts("def", m));
      CHECK(t.state_count <= d.state_count);
      CHECK_FALSE(dpa_equivalent(t, d).has_value());
    }
  }

  TEST_CASE("topological result matches the plain construction") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      auto const nba = trim(random_nba({2 + seed % 6, 2, 1.5, 0.3, seed}));
      if (nba.state_count == 0) continue;
      for (auto opts : {"", "EI", "W"}) {
        auto cfg = DetConfig::from_opts(opts);
        auto const plain = determinize(nba, cfg);
        cfg.topological = true;
        auto const topo = determinize_with_topo(nba, cfg);
        CHECK(well_formed(topo));
        CHECK(topo.state_count <= plain.state_count);
        CHECK_FALSE(dpa_equivalent(topo, plain).has_value());
        CHECK(scc_count(topo) <= build_powerset_structure(nba).scc.size());
      }
    }
  }
}
