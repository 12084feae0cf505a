#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "sstcuts/automorphism.hpp"
#include "sstcuts/sst.hpp"

using namespace sstcuts;
using namespace sstcuts::testing;

namespace {

BinaryVector from_mask(std::uint32_t mask, std::size_t n) {
  BinaryVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
  return x;
}

bool stable(const Graph& g, const BinaryVector& x) {
  for (auto [u, v] : g.edges()) {
    if (x[u] && x[v]) return false;
  }
  return true;
}

Weight value(const Graph& g, const BinaryVector& x) {
  Weight s = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) s += x[v] ? g.weight(v) : 0;
  return s;
}

// Best stable-set value with and without the cuts, by full enumeration.
std::pair<Weight, Weight> brute_optima(const Graph& g, const std::vector<PlainCut>& plain,
                                       const std::vector<SstCliqueCut>& clique) {
  Weight all = 0, cut = 0;
  for (std::uint32_t m = 0; m < (1u << g.num_nodes()); ++m) {
    auto x = from_mask(m, g.num_nodes());
    if (!stable(g, x)) continue;
    all = std::max(all, value(g, x));
    if (satisfies_cuts(x, plain) && satisfies_cuts(x, clique)) cut = std::max(cut, value(g, x));
  }
  return {all, cut};
}

Graph random_weighted(std::uint64_t seed, std::size_t n) {
  Graph g = (seed % 2) ? random_tp_graph(seed, n) : random_graph(seed, n, 0.3);
  std::mt19937_64 rng(seed * 31 + 7);
  // Few distinct weights keep plenty of symmetry.
  for (NodeId v = 0; v < n; ++v) g.set_weight(v, (rng() % 4 == 0) ? 2 : 1);
  return g;
}

std::vector<NodeSet> orbit_family(const SstTable& t) {
  std::vector<NodeSet> out;
  for (const auto& r : t.rounds) out.push_back(r.orbit.members);
  return out;
}

}  // namespace

TEST(SstTable, CompleteGraphTable) {
  auto gens = automorphism_generators(complete_graph(3));
  auto t = build_sst_table(gens, OrbitRule::min_size);
  ASSERT_EQ(t.rounds.size(), 2u);
  EXPECT_EQ(t.rounds[0].leader, 0u);
  EXPECT_EQ(t.rounds[0].followers, (std::vector<Point>{1, 2}));
  EXPECT_EQ(t.rounds[1].leader, 1u);
  EXPECT_EQ(t.rounds[1].followers, (std::vector<Point>{2}));
  EXPECT_EQ(t.cuts(), (std::vector<PlainCut>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(SstTable, PathTableAndTrivialGroup) {
  auto t = build_sst_table(automorphism_generators(path_graph(3)), OrbitRule::max_size);
  EXPECT_EQ(t.cuts(), (std::vector<PlainCut>{{0, 2}}));
  EXPECT_TRUE(build_sst_table(GeneratorSet(4), OrbitRule::min_size).rounds.empty());
  EXPECT_TRUE(build_stringent_sst_table(GeneratorSet(4)).rounds.empty());
  EXPECT_THROW(build_sst_table(GeneratorSet(4), OrbitRule::min_size, 0), InputError);
}

TEST(SstTable, OrbitRuleChoosesBySize) {
  // Orbits {1,2} and {3,4,5}.
  GeneratorSet g(5, {parse_cycles("(1,2)", 5), parse_cycles("(3,4,5)", 5)});
  EXPECT_EQ(build_sst_table(g, OrbitRule::min_size).rounds[0].leader, 0u);
  EXPECT_EQ(build_sst_table(g, OrbitRule::max_size).rounds[0].leader, 2u);
  EXPECT_EQ(build_sst_table(g, OrbitRule::min_size, 1).rounds.size(), 1u);
}

TEST(SstTable, LayeredExampleNonStringentFamily) {
  Graph g = layered_tp_graph();
  auto gens = automorphism_generators(g);
  auto t = build_table_with_leaders(gens, {0, 6}, TableKind::plain);
  EXPECT_EQ(t.rounds[0].orbit.members, (std::vector<Point>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(t.rounds[1].orbit.members, (std::vector<Point>{6, 7, 8, 9, 10, 11, 12, 13}));
  EXPECT_FALSE(is_stringent(t, gens));
}

TEST(SstTable, LayeredExampleStringent) {
  Graph g = layered_tp_graph();
  auto gens = automorphism_generators(g);
  auto t = build_table_with_leaders(gens, {0, 6}, TableKind::stringent);
  EXPECT_EQ(t.rounds[1].orbit.members, (std::vector<Point>{6, 7}));
  EXPECT_TRUE(is_stringent(t, gens));

  auto t135 = build_table_with_leaders(gens, {0, 2, 4}, TableKind::plain);
  EXPECT_EQ(t135.rounds[0].orbit.members, (std::vector<Point>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(t135.rounds[1].orbit.members, (std::vector<Point>{2, 3, 4, 5}));
  EXPECT_EQ(t135.rounds[2].orbit.members, (std::vector<Point>{4, 5}));
  EXPECT_TRUE(is_stringent(t135, gens));

  // With the min rule the depth-first builder opens {19,20,21} first and
  // draws the next leader from it.
  auto dfs = build_stringent_sst_table(gens);
  EXPECT_TRUE(is_stringent(dfs, gens));
  ASSERT_GE(dfs.rounds.size(), 3u);
  EXPECT_EQ(dfs.rounds[0].leader, 18u);
  EXPECT_EQ(dfs.rounds[1].leader, 19u);
  EXPECT_EQ(dfs.rounds[1].orbit.members, (std::vector<Point>{19, 20}));
}

TEST(SstTable, SingleRoundIsStringent) {
  auto gens = automorphism_generators(path_graph(3));
  EXPECT_TRUE(is_stringent(build_sst_table(gens, OrbitRule::min_size), gens));
  SstTable wrong = build_sst_table(gens, OrbitRule::min_size);
  wrong.n = 4;
  EXPECT_THROW(is_stringent(wrong, gens), InputError);
}

TEST(SstTable, NestedOrbitsGiveSameTable) {
  auto gens = automorphism_generators(complete_graph(5));
  auto plain = build_sst_table(gens, OrbitRule::min_size);
  auto str = build_stringent_sst_table(gens);
  EXPECT_EQ(plain.cuts(), str.cuts());
}

TEST(SstTable, StructuralInvariantsOnRandomGroups) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    Graph g = random_weighted(s, 3 + s % 8);
    auto gens = automorphism_generators(g);
    auto elements = enumerate_elements(gens, 50000);
    for (auto kind : {0, 1, 2}) {
      SstTable t = kind == 2 ? build_stringent_sst_table(gens)
                             : build_sst_table(gens, kind == 0 ? OrbitRule::min_size : OrbitRule::max_size);
      EXPECT_TRUE(is_laminar(orbit_family(t)));
      if (kind == 2) {
        EXPECT_TRUE(is_stringent(t, gens));
      }
      GeneratorSet prev = gens;
      for (std::size_t r = 0; r < t.rounds.size(); ++r) {
        const auto& round = t.rounds[r];
        EXPECT_GE(round.orbit.size(), 2u);
        EXPECT_TRUE(round.orbit.contains(round.leader));
        auto h = round_group(gens, t, r);
        // Each round group is a subgroup of Γ and of the previous one when
        // the table is plain.
        StabilizerChain big(kind == 2 ? gens : prev);
        for (const auto& p : h.generators) EXPECT_TRUE(big.contains(p));
        prev = h;
      }
    }
  }
}

TEST(SstCuts, CliqueCuts) {
  Graph k3 = complete_graph(3);
  auto t = build_sst_table(automorphism_generators(k3), OrbitRule::min_size);
  auto cuts = sst_clique_cuts(t, k3);
  ASSERT_EQ(cuts.size(), 2u);
  EXPECT_EQ(cuts[0].leader, 0u);
  EXPECT_EQ(cuts[0].clique, (NodeSet{1, 2}));

  Graph g = layered_tp_graph();
  auto lt = build_table_with_leaders(automorphism_generators(g), {0}, TableKind::plain);
  auto lc = sst_clique_cuts(lt, g);
  EXPECT_EQ(lc, as_clique_cuts(lt.cuts()));
  EXPECT_EQ(lc.size(), 5u);
}

TEST(SstCuts, Satisfaction) {
  std::vector<PlainCut> cuts{{0, 1}};
  EXPECT_TRUE(satisfies_cuts(BinaryVector{0, 0}, cuts));
  EXPECT_TRUE(satisfies_cuts(BinaryVector{1, 1}, cuts));
  EXPECT_FALSE(satisfies_cuts(BinaryVector{0, 1}, cuts));
  std::vector<SstCliqueCut> cc{{0, {1, 2}}};
  EXPECT_FALSE(satisfies_cuts(BinaryVector{1, 1, 1}, cc));
  EXPECT_TRUE(satisfies_cuts(BinaryVector{1, 0, 1}, cc));
  EXPECT_THROW(satisfies_cuts(BinaryVector{1}, cuts), InputError);
}

TEST(SstCuts, CliqueCutsNeverWeakerOnStableSets) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    Graph g = random_weighted(s, 4 + s % 6);
    auto gens = automorphism_generators(g);
    auto t = build_sst_table(gens, OrbitRule::max_size);
    auto plain = t.cuts();
    auto clique = sst_clique_cuts(t, g);
    for (std::uint32_t m = 0; m < (1u << g.num_nodes()); ++m) {
      auto x = from_mask(m, g.num_nodes());
      if (!stable(g, x)) continue;
      EXPECT_EQ(satisfies_cuts(x, clique), satisfies_cuts(x, plain));
    }
  }
}

TEST(SstCuts, OptimumSurvivesEveryVariant) {
  for (std::uint64_t s = 0; s < 80; ++s) {
    Graph g = random_weighted(s, 3 + s % 8);
    auto gens = automorphism_generators(g);
    for (auto kind : {0, 1, 2}) {
      SstTable t = kind == 2 ? build_stringent_sst_table(gens)
                             : build_sst_table(gens, kind == 0 ? OrbitRule::min_size : OrbitRule::max_size);
      auto [all, cut] = brute_optima(g, t.cuts(), sst_clique_cuts(t, g));
      EXPECT_EQ(all, cut) << "seed " << s;
    }
  }
}

TEST(SstCuts, LexMaxVectorsSatisfyIndexOrderTables) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    std::size_t n = 3 + s % 6;
    Graph g = random_weighted(s, n);
    auto gens = automorphism_generators(g);
    // Leaders 1, 2, 3, ... in index order; rounds with trivial orbits add no cuts.
    std::vector<Point> leaders(n);
    for (Point i = 0; i < n; ++i) leaders[i] = i;
    auto t = build_table_with_leaders(gens, leaders, TableKind::plain);
    auto cuts = t.cuts();
    auto elements = enumerate_elements(gens, 50000);
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      auto x = from_mask(m, n);
      BinaryVector best = x;
      // Lexicographic order with coordinate 1 most significant.
      for (const auto& p : elements) {
        auto y = apply_to_vector(p, x);
        if (std::lexicographical_compare(best.begin(), best.end(), y.begin(), y.end())) best = y;
      }
      EXPECT_TRUE(satisfies_cuts(best, cuts));
    }
  }
}

TEST(Repair, CompleteGraphExample) {
  auto gens = automorphism_generators(complete_graph(3));
  auto t = build_sst_table(gens, OrbitRule::min_size);
  EXPECT_EQ(repair_solution(BinaryVector{0, 0, 1}, gens, t), (BinaryVector{1, 0, 0}));
  EXPECT_EQ(repair_solution(BinaryVector{1, 0, 0}, gens, t), (BinaryVector{1, 0, 0}));
  EXPECT_THROW(repair_solution(BinaryVector{0, 2, 0}, gens, t), InputError);
  EXPECT_THROW(repair_solution(BinaryVector{0, 1}, gens, t), InputError);
}

TEST(Repair, StaysInOrbitAndSatisfiesCuts) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    std::size_t n = 3 + s % 6;
    Graph g = random_weighted(s, n);
    auto gens = automorphism_generators(g);
    auto elements = enumerate_elements(gens, 50000);
    for (auto kind : {0, 1}) {
      SstTable t = kind ? build_stringent_sst_table(gens) : build_sst_table(gens, OrbitRule::max_size);
      for (std::uint32_t m = 0; m < (1u << n); m += 3) {
        auto x = from_mask(m, n);
        auto y = repair_solution(x, gens, t);
        EXPECT_TRUE(satisfies_cuts(y, t.cuts()));
        EXPECT_EQ(value(g, x), value(g, y));
        bool in_orbit = std::any_of(elements.begin(), elements.end(),
                                    [&](const Permutation& p) { return apply_to_vector(p, x) == y; });
        EXPECT_TRUE(in_orbit);
      }
    }
  }
}

TEST(Laminar, Predicate) {
  EXPECT_TRUE(is_laminar({{0, 1, 2}, {1, 2}, {4}}));
  EXPECT_FALSE(is_laminar({{0, 1}, {1, 2}}));
}
