#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sstcuts/automorphism.hpp"
#include "sstcuts/sst.hpp"
#include "sstcuts/tp_forest.hpp"

using namespace sstcuts;
using namespace sstcuts::testing;

namespace {

bool stable_by_edges(const Graph& g, const NodeSet& s) {
  for (NodeId a : s) {
    for (NodeId b : s) {
      if (a < b && g.has_edge(a, b)) return false;
    }
  }
  return true;
}

std::vector<NodeId> all_leaves(const ForestRep& f) { return f.leaves(); }

}  // namespace

TEST(Forest, CompleteGraphIsOnePath) {
  auto f = forest_representation(complete_graph(5));
  EXPECT_EQ(f.roots, (NodeSet{0}));
  for (NodeId v = 1; v < 5; ++v) EXPECT_EQ(f.parent[v], v - 1);
}

TEST(Forest, Obstructions) {
  EXPECT_FALSE(is_trivially_perfect(path_graph(4)));
  EXPECT_FALSE(is_trivially_perfect(cycle_graph(4)));
  EXPECT_FALSE(is_trivially_perfect(pendant_triangle()));
  EXPECT_THROW(forest_representation(path_graph(4)), InputError);
  EXPECT_TRUE(is_trivially_perfect(path_graph(3)));
  EXPECT_TRUE(is_trivially_perfect(Graph(3)));
  EXPECT_TRUE(is_trivially_perfect(Graph(0)));
}

TEST(Forest, LayeredGraphRecoversForest) {
  auto f = forest_representation(layered_tp_graph());
  EXPECT_EQ(f.parent, layered_forest_parents());
}

TEST(Forest, TwinsOrderedByWeightThenIndex) {
  Graph g = complete_graph(3);
  g.set_weights({5, 1, 1});
  auto f = forest_representation(g);
  EXPECT_EQ(f.roots, (NodeSet{1}));
  EXPECT_EQ(f.parent[2], 1u);
  EXPECT_EQ(f.parent[0], 2u);
}

TEST(Forest, RandomTpGraphsRoundTrip) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    Graph g = s % 2 ? random_tp_graph(s, 1 + s % 15) : random_symmetric_tp_graph(s, 16);
    ASSERT_TRUE(is_trivially_perfect(g));
    auto f = forest_representation(g);
    EXPECT_EQ(graph_from_forest(f.parent).edges(), g.edges());
    EXPECT_EQ(forest_cliques(f), maximal_cliques(g));
  }
}

TEST(Forest, RandomGraphsAgreeWithClosureOracle) {
  // A graph is TP iff it has no induced P4 or C4.
  for (std::uint64_t s = 0; s < 150; ++s) {
    Graph g = random_graph(s, 3 + s % 7, 0.5);
    const std::size_t n = g.num_nodes();
    bool obstruction = false;
    std::vector<NodeId> q(4);
    for (q[0] = 0; q[0] < n && !obstruction; ++q[0]) {
      for (q[1] = 0; q[1] < n && !obstruction; ++q[1]) {
        for (q[2] = 0; q[2] < n && !obstruction; ++q[2]) {
          for (q[3] = 0; q[3] < n && !obstruction; ++q[3]) {
            if (q[0] == q[1] || q[0] == q[2] || q[0] == q[3] || q[1] == q[2] || q[1] == q[3] || q[2] == q[3]) {
              continue;
            }
            bool path = g.has_edge(q[0], q[1]) && g.has_edge(q[1], q[2]) && g.has_edge(q[2], q[3]) &&
                        !g.has_edge(q[0], q[2]) && !g.has_edge(q[1], q[3]);
            if (path) obstruction = true;  // induced P4 or C4
          }
        }
      }
    }
    EXPECT_EQ(is_trivially_perfect(g), !obstruction) << "seed " << s;
  }
}

TEST(Forest, PathDisjointIffStable) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Graph g = random_tp_graph(s, 12);
    auto f = forest_representation(g);
    for (std::uint32_t m = 0; m < (1u << 12); ++m) {
      NodeSet set;
      for (NodeId v = 0; v < 12; ++v) {
        if (m >> v & 1) set.push_back(v);
      }
      ASSERT_EQ(is_path_disjoint(f, set), stable_by_edges(g, set)) << "seed " << s << " mask " << m;
    }
  }
}

TEST(Forest, ParentArrayErrors) {
  std::vector<NodeId> cyc{1, 0};
  EXPECT_THROW(forest_from_parents(cyc), InputError);
  std::vector<NodeId> out{5};
  EXPECT_THROW(forest_from_parents(out), InputError);
}

TEST(Chains, Basic) {
  auto k3 = forest_representation(complete_graph(3));
  auto chains = chain_decomposition(k3, NodeSet{0, 1, 2});
  ASSERT_EQ(chains.size(), 1u);
  EXPECT_EQ(chains[0], (std::vector<NodeId>{0, 1, 2}));

  auto layered = forest_representation(layered_tp_graph());
  EXPECT_EQ(chain_decomposition(layered, NodeSet{0, 1, 2, 3, 4, 5}).size(), 6u);

  // Path 1 -> 2 -> 3 plus isolated 4: {1, 2, 4} splits into lengths 2 and 1.
  auto f = forest_from_parents(std::vector<NodeId>{kNoNode, 0, 1, kNoNode});
  EXPECT_THROW(chain_decomposition(f, NodeSet{0, 1, 3}), ConsistencyError);
}

TEST(Chains, LayeredGraphOrbits) {
  Graph g = layered_tp_graph();
  auto f = forest_representation(g);
  auto gens = automorphism_generators(g);
  for (const auto& o : orbits(gens)) {
    auto chains = chain_decomposition(f, o.members);
    EXPECT_EQ(chains.size(), o.members.size());
    for (const auto& c : chains) EXPECT_EQ(c.size(), 1u);
  }
  // The leaves 7..14 and 15..18 share one orbit under the full group.
  EXPECT_EQ(orbit(gens, 6).members.size(), 12u);
}

TEST(Chains, TwinChainsInRandomSymmetricGraphs) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    Graph g = random_symmetric_tp_graph(s, 14);
    auto f = forest_representation(g);
    auto t = build_stringent_sst_table(automorphism_generators(g));
    for (std::size_t r = 0; r < t.rounds.size(); ++r) {
      auto chains = chain_decomposition(f, t.rounds[r].orbit.members);
      std::size_t total = 0;
      for (const auto& c : chains) {
        total += c.size();
        for (std::size_t i = 1; i < c.size(); ++i) EXPECT_EQ(f.parent[c[i]], c[i - 1]);
      }
      EXPECT_EQ(total, t.rounds[r].orbit.size());
    }
  }
}

TEST(RecursionProperty, Basics) {
  auto f = forest_from_parents(layered_forest_parents());
  EXPECT_TRUE(check_recursion_property(f, {NodeSet{0, 2}}).holds);
  EXPECT_FALSE(check_recursion_property(f, {NodeSet{0, 2}, NodeSet{2, 4}}).holds);
  EXPECT_FALSE(check_recursion_property(f, {NodeSet{0, 14}}).holds);  // not path-disjoint
  // {1} then {3}: below root 22 the subtree of 20 avoids node 1.
  auto rp = check_recursion_property(f, {NodeSet{0}, NodeSet{2}});
  EXPECT_TRUE(rp.holds);
  ASSERT_EQ(rp.d.size(), 1u);
  EXPECT_EQ(rp.d[0], 21u);
  // {3} then {1, 5}: no single d sees both 1 and 5 in avoiding subtrees
  // except the root, whose child 20 holds 3.
  EXPECT_TRUE(check_recursion_property(f, {NodeSet{2}, NodeSet{0, 4}}).holds);
  // {19, 21} then {3}: 3 lies under 20 below the root, which avoids both.
  EXPECT_TRUE(check_recursion_property(f, {NodeSet{18, 20}, NodeSet{2}}).holds);
  // {20} then {7}: 7 lies below 20 itself; T_20 has children 3, 4 free.
  EXPECT_TRUE(check_recursion_property(f, {NodeSet{19}, NodeSet{6}}).holds);
  // {3, 4} then {20}: 20 is an ancestor of earlier nodes, never below any d.
  EXPECT_FALSE(check_recursion_property(f, {NodeSet{2, 3}, NodeSet{19}}).holds);
}

TEST(RecursionProperty, RandomFamiliesHold) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    auto parent = random_forest_parents(rng, 3 + it % 10);
    auto f = forest_from_parents(parent);
    auto sets = random_rp_family(rng, parent, 4);
    EXPECT_TRUE(check_recursion_property(f, sets).holds);
  }
}

TEST(LaminarRecursionProperty, StringentEdgeFreeTables) {
  std::size_t checked = 0;
  for (std::uint64_t s = 0; s < 80; ++s) {
    Graph g = random_symmetric_tp_graph(s, 14);
    auto f = forest_representation(g);
    auto t = build_stringent_sst_table(automorphism_generators(g));
    std::vector<NodeSet> family;
    bool edge_free = true;
    for (const auto& r : t.rounds) {
      family.push_back(r.orbit.members);
      edge_free = edge_free && is_stable(g, r.orbit.members);
    }
    if (!edge_free || family.empty()) continue;
    ++checked;
    auto lrp = check_laminar_recursion_property(f, family);
    EXPECT_TRUE(lrp.holds) << "seed " << s;
  }
  EXPECT_GT(checked, 10u);
}

TEST(LaminarRecursionProperty, Negative) {
  auto f = forest_from_parents(layered_forest_parents());
  // Not laminar.
  EXPECT_FALSE(check_laminar_recursion_property(f, {NodeSet{0, 2}, NodeSet{2, 4}}).holds);
  // Union of two subsets covers the set, so no private node exists.
  EXPECT_FALSE(check_laminar_recursion_property(f, {NodeSet{0, 2}, NodeSet{0}, NodeSet{2}}).holds);
  auto ok = check_laminar_recursion_property(f, {NodeSet{0, 2, 4}, NodeSet{2, 4}, NodeSet{4}});
  EXPECT_TRUE(ok.holds);
  EXPECT_EQ(ok.u, (std::vector<NodeId>{0, 2, 4}));
}

TEST(Equicoloring, SingleNodeTree) {
  auto f = forest_from_parents(std::vector<NodeId>{kNoNode});
  auto c = equicolor_tree_paths(f, NodeSet{0}, NodeSet{0});
  EXPECT_EQ(c.sign, (std::vector<int>{-1}));
}

TEST(Equicoloring, EvenSplitUnderRoot) {
  auto f = forest_from_parents(std::vector<NodeId>{kNoNode, 0, 0});
  auto c = equicolor_tree_paths(f, NodeSet{1, 2}, NodeSet{0});
  auto d = path_deltas(f, c);
  EXPECT_EQ(d[0], 0);
  EXPECT_EQ(c.sign[1] + c.sign[2], 0);
}

TEST(Equicoloring, Errors) {
  auto f = forest_from_parents(std::vector<NodeId>{kNoNode, 0, 0});
  EXPECT_THROW(equicolor_tree_paths(f, NodeSet{1}, NodeSet{}), InputError);
  EXPECT_THROW(equicolor_tree_paths(f, NodeSet{1}, NodeSet{0, 1}), InputError);
  EXPECT_THROW(equicolor_tree_paths(f, NodeSet{0}, NodeSet{1}), InputError);  // 0 is not a leaf
  EXPECT_THROW(equicolor_recursive(f, {NodeSet{1}, NodeSet{1}}, NodeSet{1, 2}), InputError);
}

TEST(Equicoloring, SingleSetBoundOnAllSmallForests) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& parent : all_rooted_forests(n)) {
      auto f = forest_from_parents(parent);
      auto leaves = forest_leaves(parent);
      for (std::uint32_t pm = 0; pm < (1u << leaves.size()); ++pm) {
        NodeSet paths;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
          if (pm >> i & 1) paths.push_back(leaves[i]);
        }
        for (std::uint32_t sm = 1; sm < (1u << n); ++sm) {
          NodeSet s;
          for (NodeId v = 0; v < n; ++v) {
            if (sm >> v & 1) s.push_back(v);
          }
          if (!antichain(parent, s)) continue;
          auto c = equicolor_tree_paths(f, paths, s);
          ASSERT_TRUE(single_set_bound_holds(parent, paths, s, c.sign)) << "n " << n << " P " << pm << " S " << sm;
        }
      }
    }
  }
}

TEST(Equicoloring, ForestCountsMatchKnownSequence) {
  // Rooted unlabeled forests on n nodes = rooted trees on n + 1 nodes.
  const std::vector<std::size_t> expected{1, 2, 4, 9, 20, 48, 115, 286, 719, 1842};
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(all_rooted_forests(n).size(), expected[n - 1]) << n;
}

TEST(Equicoloring, DeltaRecursion) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    auto parent = random_forest_parents(rng, 2 + it % 12);
    auto f = forest_from_parents(parent);
    auto leaves = all_leaves(f);
    auto s = random_antichain(rng, parent, leaves);
    auto c = equicolor_tree_paths(f, leaves, s);
    auto d = path_deltas(f, c);
    for (NodeId v = 0; v < f.size(); ++v) {
      if (f.is_leaf(v)) continue;
      int sum = 0;
      for (NodeId w : f.children[v]) sum += d[w];
      EXPECT_EQ(d[v], sum);
    }
  }
}

TEST(Equicoloring, SiblingSubtrees) {
  // Root 0 with subtrees under 1 and 2, each with two leaves.
  std::vector<NodeId> parent{kNoNode, 0, 0, 1, 1, 2, 2};
  auto f = forest_from_parents(parent);
  NodeSet paths{3, 4, 5, 6};
  std::vector<NodeSet> sets{NodeSet{3, 4}, NodeSet{5, 6}};
  EXPECT_FALSE(check_recursion_property(f, {NodeSet{3, 5}, NodeSet{4, 6}}).holds);
  ASSERT_TRUE(check_recursion_property(f, sets).holds);
  ASSERT_TRUE(exists_recursive_coloring(parent, paths, sets));
  auto c = equicolor_recursive(f, sets, paths);
  ASSERT_TRUE(valid_equicoloring(parent, paths, c.sign));
  auto d = path_deltas(f, c);
  for (const auto& s : sets) {
    int sum = 0;
    for (NodeId v : s) sum += d[v];
    EXPECT_LE(std::abs(sum), 1);
  }
}

TEST(Equicoloring, RecursiveFamiliesOnRandomForests) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 400; ++it) {
    auto parent = random_forest_parents(rng, 2 + it % 11);
    auto f = forest_from_parents(parent);
    auto sets = random_rp_family(rng, parent, 5);
    std::vector<NodeId> paths;
    for (NodeId l : forest_leaves(parent)) {
      if (rng() % 4 != 0) paths.push_back(l);
    }
    auto c = equicolor_recursive(f, sets, paths);
    ASSERT_TRUE(valid_equicoloring(parent, paths, c.sign)) << "iteration " << it;
    auto d = path_deltas(f, c);
    for (const auto& s : sets) {
      int sum = 0;
      for (NodeId v : s) sum += d[v];
      EXPECT_LE(std::abs(sum), 1) << "iteration " << it;
    }
  }
}
