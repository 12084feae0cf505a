#pragma once

// Graph reductions implied by SST cuts on the edge formulation of the
// stable set problem.
//
// Cuts are processed in the given order against a working graph that
// changes as we go. A node is removed when
//   * it is a follower adjacent to its leader in the working graph, or
//   * it is a follower whose leader has already been removed (the cut then
//     forces it to zero as well).
// Cuts whose follower is already gone are skipped.

#include <algorithm>
#include <span>
#include <vector>

#include "sstcuts/errors.hpp"
#include "sstcuts/graph.hpp"
#include "sstcuts/sst.hpp"

namespace sstcuts {

/// Remaining proportions: nodes and edges after deletion alone, edges after
/// deletion plus addition. An empty original count gives ratio 1.
struct PresolveStats {
  double nodes = 1.0;
  double edges = 1.0;
  double edges_plus = 1.0;
};

struct PresolveResult {
  Graph reduced_graph;
  NodeSet removed_nodes;          // original indices
  std::vector<Edge> added_edges;  // original indices, in insertion order
  std::vector<NodeId> node_map;   // old -> new, kNoNode for removed nodes
  PresolveStats stats;
};

struct PresolveOptions {
  bool deletion = true;
  bool addition = false;
  bool fixpoint = false;  // repeat passes until nothing changes
};

namespace detail {

inline void check_cuts(const Graph& g, std::span<const PlainCut> cuts) {
  for (const auto& c : cuts) {
    if (c.leader >= g.num_nodes() || c.follower >= g.num_nodes()) {
      throw InputError("cut index out of range");
    }
    if (c.leader == c.follower) throw InputError("cut leader equals its follower");
  }
}

struct WorkingGraph {
  Graph graph;
  std::vector<bool> removed;
  NodeSet removed_nodes;
  std::vector<Edge> added;
};

/// One pass over the cuts. Returns true if anything changed.
inline bool presolve_pass(WorkingGraph& w, std::span<const PlainCut> cuts, const PresolveOptions& opts) {
  bool changed = false;
  auto remove = [&](NodeId v) {
    w.removed[v] = true;
    w.removed_nodes.push_back(v);
    w.graph.isolate(v);
    changed = true;
  };
  for (const auto& c : cuts) {
    if (w.removed[c.follower]) continue;
    if (w.removed[c.leader]) {
      if (opts.deletion) remove(c.follower);
      continue;
    }
    if (w.graph.has_edge(c.leader, c.follower)) {
      if (opts.deletion) remove(c.follower);
      continue;
    }
    if (opts.addition) {
      NodeSet nbrs = w.graph.neighbors(c.leader);
      for (NodeId v : nbrs) {
        if (v != c.follower && w.graph.add_edge(v, c.follower)) {
          w.added.emplace_back(std::min(v, c.follower), std::max(v, c.follower));
          changed = true;
        }
      }
    }
  }
  return changed;
}

inline PresolveResult finish(const Graph& original, WorkingGraph w) {
  PresolveResult r;
  std::vector<NodeId> keep;
  for (NodeId v = 0; v < original.num_nodes(); ++v) {
    if (!w.removed[v]) keep.push_back(v);
  }
  auto sub = induced_subgraph(w.graph, keep);
  r.reduced_graph = std::move(sub.graph);
  r.node_map = std::move(sub.old_to_new);
  std::sort(w.removed_nodes.begin(), w.removed_nodes.end());
  r.removed_nodes = std::move(w.removed_nodes);
  r.added_edges = std::move(w.added);
  return r;
}

inline PresolveResult run_presolve(const Graph& g, std::span<const PlainCut> cuts, const PresolveOptions& opts) {
  check_cuts(g, cuts);
  WorkingGraph w{g, std::vector<bool>(g.num_nodes(), false), {}, {}};
  while (presolve_pass(w, cuts, opts) && opts.fixpoint) {
  }
  return finish(g, std::move(w));
}

inline double ratio(std::size_t now, std::size_t before) {
  return before == 0 ? 1.0 : static_cast<double>(now) / static_cast<double>(before);
}

}  // namespace detail

/// The three remaining-proportion figures for a cut family.
inline PresolveStats reduction_stats(const Graph& g, std::span<const PlainCut> cuts, bool fixpoint = false) {
  auto del = detail::run_presolve(g, cuts, {true, false, fixpoint});
  auto add = detail::run_presolve(g, cuts, {true, true, fixpoint});
  PresolveStats s;
  s.nodes = detail::ratio(del.reduced_graph.num_nodes(), g.num_nodes());
  s.edges = detail::ratio(del.reduced_graph.num_edges(), g.num_edges());
  s.edges_plus = detail::ratio(add.reduced_graph.num_edges(), g.num_edges());
  return s;
}

/// Removes followers that are adjacent to their leader (or whose leader is
/// gone). The optimum value is unchanged.
inline PresolveResult deletion_operation(const Graph& g, std::span<const PlainCut> cuts) {
  auto r = detail::run_presolve(g, cuts, {true, false, false});
  r.stats = reduction_stats(g, cuts);
  return r;
}

/// For every cut whose leader and follower are not adjacent, joins the
/// follower to every current neighbour of the leader. No node is removed.
inline PresolveResult addition_operation(const Graph& g, std::span<const PlainCut> cuts) {
  auto r = detail::run_presolve(g, cuts, {false, true, false});
  r.stats = reduction_stats(g, cuts);
  return r;
}

/// Deletion, optionally interleaved with addition, in cut order. Addition
/// is only sound when no node has weight zero.
inline PresolveResult sst_presolve(const Graph& g, std::span<const PlainCut> cuts, bool use_addition,
                                   bool fixpoint = false) {
  if (use_addition) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (g.weight(v) == 0) {
        throw InputError("addition operation requires nonzero weights (node " + std::to_string(v + 1) +
                         " has weight 0)");
      }
    }
  }
  auto r = detail::run_presolve(g, cuts, {true, use_addition, fixpoint});
  r.stats = reduction_stats(g, cuts, fixpoint);
  return r;
}

/// Lifts a node set of the reduced graph back to original indices.
inline NodeSet lift_solution(const PresolveResult& r, std::span<const NodeId> reduced_members) {
  std::vector<NodeId> new_to_old(r.reduced_graph.num_nodes(), kNoNode);
  for (NodeId v = 0; v < r.node_map.size(); ++v) {
    if (r.node_map[v] != kNoNode) new_to_old[r.node_map[v]] = v;
  }
  NodeSet out;
  for (NodeId v : reduced_members) {
    if (v >= new_to_old.size()) throw InputError("reduced node index out of range");
    out.push_back(new_to_old[v]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sstcuts
