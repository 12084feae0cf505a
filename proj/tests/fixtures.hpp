#pragma once

// Small named instances shared by several suites. Node labels in comments
// are 1-based; the code is 0-based.

#include <vector>

#include "sstcuts/graph.hpp"

namespace sstcuts::testing {

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (NodeId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  g.add_edge(0, static_cast<NodeId>(n - 1));
  return g;
}

/// 22-node forest: root 22 with children 19, 20, 21; 19 -> {1,2},
/// 20 -> {3,4}, 21 -> {5,6}; leaves 15,16 under 1, 17,18 under 2, 7,8 under
/// 3, 9,10 under 4, 11,12 under 5, 13,14 under 6.
inline std::vector<NodeId> layered_forest_parents() {
  std::vector<NodeId> parent(22, kNoNode);
  auto set = [&](NodeId child, NodeId par) { parent[child - 1] = par - 1; };
  set(19, 22);
  set(20, 22);
  set(21, 22);
  set(1, 19);
  set(2, 19);
  set(3, 20);
  set(4, 20);
  set(5, 21);
  set(6, 21);
  set(15, 1);
  set(16, 1);
  set(17, 2);
  set(18, 2);
  set(7, 3);
  set(8, 3);
  set(9, 4);
  set(10, 4);
  set(11, 5);
  set(12, 5);
  set(13, 6);
  set(14, 6);
  return parent;
}

inline Graph layered_tp_graph() {
  auto parent = layered_forest_parents();
  return graph_from_forest(parent);
}

/// Triangle {1,2,3} with pendant 4 on 1 and pendant 5 on 2. Interval, not
/// trivially perfect; (1 2)(4 5) is an automorphism.
inline Graph pendant_triangle() {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  g.add_edge(1, 4);
  return g;
}

}  // namespace sstcuts::testing
