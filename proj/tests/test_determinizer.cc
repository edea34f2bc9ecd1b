#include <doctest.h>

#include "buchidet/analysis.hh"
#include "buchidet/determinizer.hh"
#include "buchidet/families.hh"
#include "buchidet/lasso.hh"
#include "support.hh"

using namespace buchidet;
using namespace buchidet::testing;

namespace {

RankedSlice slice(std::initializer_list<RankedSet> sets) { return RankedSlice(sets); }

Macrostate single(RankedSlice s) {
  Macrostate m;
  m.comps.push_back(std::move(s));
  return m;
}

bool lasso_equivalent(Nba const& nba, Dpa const& dpa) {
  bool ok = true;
  for_each_lasso(nba.symbol_count(), 4, 4, [&](Lasso const& l) {
    ok = naive_nba_accepts(nba, l) == naive_dpa_accepts(dpa, l);
    return ok;
  });
  return ok;
}

ComponentPolicy two_components(std::size_t states, StateSet const& second, ComponentMode mode) {
  ComponentPolicy p;
  p.domain = {StateSet::full(states) - second, second};
  p.mode = {ComponentMode::general, mode};
  p.component_of.assign(states, 0);
  second.for_each([&](state_t q) { p.component_of[q] = 1; });
  p.covered = StateSet::full(states);
  return p;
}

}  // namespace

TEST_SUITE("determinizer") {
  TEST_CASE("initial macrostates") {
    auto const nba = two_state_nba();
    DetContext def(nba, DetConfig::from_opts("def"));
    CHECK(def.initial_macrostate(nba.initial) == single(slice({{{0}, 1}})));
    CHECK(def.raw_initial_macrostate(StateSet{0, 1}) == single(slice({{{0}, 1}, {{1}, 2}})));

    DetContext w(nba, DetConfig::from_opts("W"));
    auto const m = w.initial_macrostate(nba.initial);
    REQUIRE(m.comps.size() == 1);
    CHECK(w.policy().mode[0] == ComponentMode::breakpoint);
    CHECK(m.comps[0].empty());
    CHECK(m.buffer == StateSet{0});
  }

  TEST_CASE("step in a general component") {
    auto const nba = two_state_nba();
    rank_t fresh = 3;
    auto const out = step(slice({{{1}, 2}, {{0}, 1}}), sym_a, nba, ComponentMode::general, fresh);
    REQUIRE(out.size() == 4);
    CHECK(out[0].states == StateSet{1});
    CHECK(out[0].rank == 3);
    CHECK(out[0].fresh);
    CHECK(out[1].states.empty());
    CHECK(out[1].rank == 2);
    CHECK(out[2].states.empty());
    CHECK(out[2].rank == 4);
    CHECK(out[2].fresh);
    CHECK(out[3].states == StateSet{0});
    CHECK(out[3].rank == 1);
    CHECK(fresh == 5);

    rank_t f2 = 2;
    auto const on_b = step(slice({{{0}, 1}}), sym_b, nba, ComponentMode::general, f2);
    REQUIRE(on_b.size() == 2);
    CHECK(on_b[0].states.empty());
    CHECK(on_b[0].fresh);
    CHECK(on_b[1].states == StateSet{0});
    CHECK(on_b[1].rank == 1);
  }

  TEST_CASE("step in a det_no_split component keeps the leftmost occurrence") {
    Nba n(3, ab_alphabet());
    n.add_edge(0, sym_a, 2);
    n.add_edge(1, sym_a, 2);
    n.add_edge(2, sym_a, 0);
    n.initial = {0};
    rank_t fresh = 3;
    auto const out = step(slice({{{0}, 1}, {{1}, 2}}), sym_a, n, ComponentMode::det_no_split, fresh);
    REQUIRE(out.size() == 2);
    CHECK(out[0].states == StateSet{2});
    CHECK(out[0].rank == 1);
    CHECK(out[1].states.empty());
    CHECK(out[1].rank == 2);
    CHECK(fresh == 3);
  }

  TEST_CASE("relocate into an empty breakpoint component") {
    auto const nba = two_state_nba();
    DetContext w(nba, DetConfig::from_opts("W"));
    IntermediateMacrostate im;
    im.comps.resize(1);
    rank_t fresh = 1;
    relocate(im, nba.post(StateSet{0}, sym_a), w.policy(), fresh);
    REQUIRE(im.comps[0].size() == 1);
    CHECK(im.comps[0][0].states == StateSet{1});
    CHECK(im.buffer == StateSet{0});
  }

  TEST_CASE("relocate is the identity for a single component") {
    auto const policy = ComponentPolicy::single(2);
    IntermediateMacrostate im;
    im.comps.push_back({{{1}, 3, true}, {{}, 2, false}, {{0}, 1, false}});
    auto const before = im.comps;
    rank_t fresh = 4;
    relocate(im, {}, policy, fresh);
    REQUIRE(im.comps[0].size() == before[0].size());
    for (std::size_t i = 0; i < before[0].size(); ++i) CHECK(im.comps[0][i].states == before[0][i].states);
    CHECK(im.buffer.empty());
  }

  TEST_CASE("relocate does not add states already present in the component") {
    auto const policy = two_components(3, {2}, ComponentMode::det_no_split);
    IntermediateMacrostate im;
    im.comps.push_back({{{0}, 1, false}, {{2}, 3, true}});
    im.comps.push_back({{{2}, 2, false}});
    rank_t fresh = 4;
    relocate(im, {}, policy, fresh);
    CHECK(im.comps[0].size() == 2);
    CHECK(im.comps[0][1].states.empty());
    REQUIRE(im.comps[1].size() == 1);
    CHECK(im.comps[1][0].states == StateSet{2});

    IntermediateMacrostate im2;
    im2.comps.push_back({{{0}, 1, false}});
    im2.comps.push_back({});
    relocate(im2, StateSet{2}, policy, fresh);
    REQUIRE(im2.comps[1].size() == 1);
    CHECK(im2.comps[1][0].states == StateSet{2});
    CHECK(im2.comps[1][0].fresh);
  }

  TEST_CASE("prune emits a good signal when a subtree survives") {
    auto const policy = ComponentPolicy::single(2);
    IntermediateMacrostate im;
    im.comps.push_back({{{1}, 3, true}, {{}, 2, false}, {{}, 4, true}, {{0}, 1, false}});
    auto const [m, sig] = prune(im, policy, StateSet{1});
    CHECK(m == single(slice({{{1}, 2}, {{0}, 1}})));
    CHECK(sig.good == std::vector<rank_t>{2});
    CHECK(sig.bad.empty());
  }

  TEST_CASE("prune emits a bad signal for a dead subtree") {
    auto const policy = ComponentPolicy::single(2);
    IntermediateMacrostate im;
    im.comps.push_back({{{}, 3, true}, {{}, 2, false}, {{0}, 1, false}});
    auto const [m, sig] = prune(im, policy, StateSet{1});
    CHECK(m == single(slice({{{0}, 1}})));
    CHECK(sig.good.empty());
    CHECK(sig.bad == std::vector<rank_t>{2});
  }

  TEST_CASE("prune in a det_no_split component signals accepting membership") {
    auto const policy = two_components(2, {1}, ComponentMode::det_no_split);
    IntermediateMacrostate im;
    im.comps.push_back({});
    im.comps.push_back({{{1}, 1, false}});
    auto const [m, sig] = prune(im, policy, StateSet{1});
    CHECK(sig.good == std::vector<rank_t>{1});
    CHECK(m.comps[1].size() == 1);
  }

  TEST_CASE("priority formula") {
    TransitionSignals g;
    g.good = {2};
    compute_priority(g, 2);
    CHECK(g.k == 2);
    CHECK(g.priority == 4);

    TransitionSignals r;
    r.bad = {2};
    compute_priority(r, 2);
    CHECK(r.priority == 3);

    TransitionSignals none;
    compute_priority(none, 2);
    CHECK(none.k == 3);
    CHECK(none.priority == 5);
    CHECK_FALSE(none.has_event);
  }

  TEST_CASE("merge strategies") {
    auto const policy = ComponentPolicy::single(4);
    auto const base = single(slice({{{0}, 3}, {{1}, 4}, {{2}, 2}, {{3}, 1}}));
    TransitionSignals sig;
    sig.good = {2};
    compute_priority(sig, 4);

    auto mx = base;
    merge(mx, sig, MergeStrategy::max_collapse, policy);
    CHECK(mx == single(slice({{{0, 1, 2}, 2}, {{3}, 1}})));

    // rank 4 is a younger sibling of the dominating rank 2, not part of its subtree
    auto sibling = single(slice({{{0}, 3}, {{2}, 2}, {{1}, 4}, {{3}, 1}}));
    merge(sibling, sig, MergeStrategy::max_collapse, policy);
    CHECK(sibling == single(slice({{{0, 2}, 2}, {{1}, 4}, {{3}, 1}})));

    auto ms = base;
    merge(ms, sig, MergeStrategy::muller_schupp, policy);
    CHECK(ms == base);

    auto safra = single(slice({{{0}, 3}, {{1}, 2}, {{3}, 1}}));
    merge(safra, sig, MergeStrategy::safra, policy);
    CHECK(safra == single(slice({{{0, 1}, 2}, {{3}, 1}})));

    TransitionSignals quiet;
    compute_priority(quiet, 4);
    for (auto s : {MergeStrategy::muller_schupp, MergeStrategy::safra, MergeStrategy::max_collapse}) {
      auto m = base;
      merge(m, quiet, s, policy);
      CHECK(m == base);
    }
  }

  TEST_CASE("normalize compacts ranks globally") {
    auto m = single(slice({{{0}, 5}, {{1}, 2}, {{2}, 7}}));
    normalize(m);
    CHECK(m == single(slice({{{0}, 2}, {{1}, 1}, {{2}, 3}})));
    auto again = m;
    normalize(again);
    CHECK(again == m);

    Macrostate cross;
    cross.comps.push_back(slice({{{0}, 9}, {{1}, 3}}));
    cross.comps.push_back(slice({{{2}, 4}}));
    normalize(cross);
    CHECK(cross.comps[0][0].rank == 3);
    CHECK(cross.comps[0][1].rank == 1);
    CHECK(cross.comps[1][0].rank == 2);
  }

  TEST_CASE("external language pruning") {
    auto const nba = three_state_nba();
    auto const info = analyze_sccs(nba);
    auto const sim = compute_direct_simulation(nba);
    auto cfg = DetConfig::from_opts("E");
    auto const policy = ComponentPolicy::single(3);
    auto const ctx = make_pruning_context(nba, sim, info, policy, cfg);
    auto m = single(slice({{{1}, 2}, {{2}, 3}, {{0}, 1}}));
    CHECK(apply_language_pruning(m, ctx));
    CHECK(m == single(slice({{{1}, 2}, {{0}, 1}})));
  }

  TEST_CASE("internal language pruning needs the covering state on the left") {
    auto nba = three_state_nba();
    nba.add_edge(2, sym_b, 1);  // now only L(1) is contained in L(2)
    auto const info = analyze_sccs(nba);
    auto const sim = compute_direct_simulation(nba);
    REQUIRE(sim.contains(1, 2));
    REQUIRE_FALSE(sim.contains(2, 1));
    auto const policy = ComponentPolicy::single(3);
    auto const ctx = make_pruning_context(nba, sim, info, policy, DetConfig::from_opts("I"));

    auto right = single(slice({{{1}, 2}, {{2}, 3}, {{0}, 1}}));
    CHECK_FALSE(apply_language_pruning(right, ctx));

    auto left = single(slice({{{2}, 2}, {{1}, 3}, {{0}, 1}}));
    CHECK(apply_language_pruning(left, ctx));
    CHECK(left == single(slice({{{2}, 2}, {{0}, 1}})));
  }

  TEST_CASE("language pruning leaves the buffer alone") {
    auto const nba = three_state_nba();
    auto const info = analyze_sccs(nba);
    auto const sim = compute_direct_simulation(nba);
    auto const ctx = make_pruning_context(nba, sim, info, ComponentPolicy::single(3), DetConfig::from_opts("E"));
    auto m = single(slice({{{1}, 1}}));
    m.buffer = {2};
    CHECK_FALSE(apply_language_pruning(m, ctx));
    CHECK(m.buffer == StateSet{2});
  }

  TEST_CASE("successor on the two-state example") {
    auto const nba = two_state_nba();
    DetContext ctx(nba, DetConfig::from_opts("def"));
    auto const s0 = single(slice({{{0}, 1}}));
    auto const s1 = single(slice({{{1}, 2}, {{0}, 1}}));

    auto const r0a = ctx.successor(s0, sym_a);
    CHECK(r0a.merged == s1);
    CHECK(r0a.priority == 5);
    auto const r1a = ctx.successor(s1, sym_a);
    CHECK(r1a.merged == s1);
    CHECK(r1a.priority == 4);
    auto const r1b = ctx.successor(s1, sym_b);
    CHECK(r1b.merged == s0);
    CHECK(r1b.priority == 3);

    auto const again = ctx.successor(s1, sym_a);
    CHECK(again.merged == r1a.merged);
    CHECK(again.priority == r1a.priority);
  }

  TEST_CASE("true-loop states lead to the accepting sink") {
    auto nba = two_state_nba();
    nba.add_edge(1, sym_b, 1);
    DetContext ctx(nba, DetConfig::from_opts("def"));
    auto const r = ctx.successor(single(slice({{{0}, 1}})), sym_a);
    CHECK(r.sink);
    CHECK(r.merged.accepting_sink);
    CHECK(r.priority == 0);
    auto const loop = ctx.successor(r.merged, sym_b);
    CHECK(loop.merged.accepting_sink);
    CHECK(loop.priority == 0);
  }

  TEST_CASE("determinize the two-state example") {
    auto const nba = two_state_nba();
    for (auto m : {MergeStrategy::muller_schupp, MergeStrategy::safra, MergeStrategy::max_collapse}) {
      auto const d = determinize(nba, DetConfig::from_opts("def", m));
      CHECK(d.state_count == 2);
      CHECK(d.delta == two_state_dpa().delta);
      CHECK(d.priority == two_state_dpa().priority);
    }
    auto const w = determinize(nba, DetConfig::from_opts("W"));
    CHECK(well_formed(w));
    CHECK(lasso_equivalent(nba, w));
    CHECK(lasso_equivalent(nba, two_state_dpa()));
  }

  TEST_CASE("empty language gives the rejecting sink") {
    Nba empty(1, ab_alphabet());
    empty.initial = {0};
    auto const t = trim(empty);
    auto const d = determinize(t, DetConfig::from_opts("def"));
    CHECK(d.state_count == 1);
    for (auto p : d.priority) CHECK(p % 2 == 1);
  }

  TEST_CASE("invariants hold on every constructed macrostate") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      auto const nba = trim(random_nba({2 + seed % 6, 2, 1.5, 0.3, seed}));
      if (nba.state_count == 0) continue;
      for (auto opts : {"def", "EI", "A", "W", "D", "EIWD", "AD"}) {
        DetContext ctx(nba, DetConfig::from_opts(opts));
        auto const ex = explore(ctx, ctx.initial_macrostate(nba.initial), nba.initial);
        for (auto const& m : ex.states) CHECK_MESSAGE(check_invariants(m, ctx.policy()).empty(), m.to_string());
        auto const bound = 2 * (nba.state_count + 1) - 1;
        for (auto p : ex.priority) CHECK(p <= bound);
      }
    }
  }

  TEST_CASE("state cap") {
    auto cfg = DetConfig::from_opts("def", MergeStrategy::muller_schupp);
    cfg.state_cap = 3;
    CHECK_THROWS_AS((void)determinize(family_c(3), cfg), StateCapExceeded);
  }
}
