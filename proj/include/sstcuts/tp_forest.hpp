#pragma once

// Trivially perfect graphs as comparability graphs of rooted forests:
// recognition, forest representation, root-leaf paths, orbit chains, the
// (laminar) recursion property and constructive equicolorings of path sets.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sstcuts/errors.hpp"
#include "sstcuts/graph.hpp"

namespace sstcuts {

/// Rooted forest; u ~ v in the graph iff one is a proper ancestor of the
/// other. A root-leaf path is identified by its leaf.
struct ForestRep {
  std::vector<NodeId> parent;                // kNoNode for roots
  NodeSet roots;
  std::vector<std::vector<NodeId>> children;  // sorted

  std::size_t size() const { return parent.size(); }
  bool is_leaf(NodeId v) const { return children[v].empty(); }

  NodeSet leaves() const {
    NodeSet out;
    for (NodeId v = 0; v < size(); ++v) {
      if (is_leaf(v)) out.push_back(v);
    }
    return out;
  }

  bool is_ancestor(NodeId a, NodeId v) const {  // a is v or above v
    for (NodeId x = v; x != kNoNode; x = parent[x]) {
      if (x == a) return true;
    }
    return false;
  }

  NodeId root_of(NodeId v) const {
    while (parent[v] != kNoNode) v = parent[v];
    return v;
  }

  /// Leaves below v (paths through v).
  NodeSet paths_through(NodeId v) const {
    NodeSet out;
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      if (is_leaf(x)) out.push_back(x);
      for (NodeId c : children[x]) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Node set of the path from the root down to `leaf`, sorted.
  NodeSet path_nodes(NodeId leaf) const {
    NodeSet out;
    for (NodeId x = leaf; x != kNoNode; x = parent[x]) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Nodes of the subtree rooted at v, sorted.
  NodeSet subtree(NodeId v) const {
    NodeSet out;
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      out.push_back(x);
      for (NodeId c : children[x]) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline ForestRep forest_from_parents(std::span<const NodeId> parent) {
  ForestRep f;
  f.parent.assign(parent.begin(), parent.end());
  f.children.resize(parent.size());
  for (NodeId v = 0; v < parent.size(); ++v) {
    if (parent[v] == kNoNode) {
      f.roots.push_back(v);
    } else {
      if (parent[v] >= parent.size()) throw InputError("parent index out of range");
      f.children[parent[v]].push_back(v);
    }
  }
  // Acyclicity: every node must reach a root.
  for (NodeId v = 0; v < parent.size(); ++v) {
    std::size_t steps = 0;
    for (NodeId x = v; x != kNoNode; x = f.parent[x]) {
      if (++steps > parent.size()) throw InputError("parent array contains a cycle");
    }
  }
  return f;
}

namespace detail {

/// Universal-vertex peeling. Returns false if some connected piece has no
/// universal vertex.
inline bool peel(const Graph& g, NodeSet component, NodeId above, std::vector<NodeId>& parent) {
  while (!component.empty()) {
    const std::size_t k = component.size();
    std::vector<bool> in(g.num_nodes(), false);
    for (NodeId v : component) in[v] = true;
    NodeSet universal;
    for (NodeId v : component) {
      std::size_t d = 0;
      for (NodeId u : g.neighbors(v)) d += in[u] ? 1 : 0;
      if (d + 1 == k) universal.push_back(v);
    }
    if (universal.empty()) return false;
    // Twins form a chain; lighter nodes sit above heavier ones, ties by index.
    std::sort(universal.begin(), universal.end(), [&](NodeId a, NodeId b) {
      return g.weight(a) != g.weight(b) ? g.weight(a) < g.weight(b) : a < b;
    });
    for (NodeId u : universal) {
      parent[u] = above;
      above = u;
      in[u] = false;
    }
    NodeSet rest;
    for (NodeId v : component) {
      if (in[v]) rest.push_back(v);
    }
    // Split the rest into connected pieces; the last one continues the loop.
    std::vector<bool> seen(g.num_nodes(), false);
    std::vector<NodeSet> pieces;
    for (NodeId s : rest) {
      if (seen[s]) continue;
      NodeSet piece{s};
      seen[s] = true;
      for (std::size_t h = 0; h < piece.size(); ++h) {
        for (NodeId u : g.neighbors(piece[h])) {
          if (in[u] && !seen[u]) {
            seen[u] = true;
            piece.push_back(u);
          }
        }
      }
      std::sort(piece.begin(), piece.end());
      pieces.push_back(std::move(piece));
    }
    if (pieces.empty()) return true;
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
      if (!peel(g, std::move(pieces[i]), above, parent)) return false;
    }
    component = std::move(pieces.back());
  }
  return true;
}

inline std::optional<ForestRep> try_forest(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<NodeId> parent(n, kNoNode);
  std::vector<bool> seen(n, false);
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    NodeSet comp{s};
    seen[s] = true;
    for (std::size_t h = 0; h < comp.size(); ++h) {
      for (NodeId u : g.neighbors(comp[h])) {
        if (!seen[u]) {
          seen[u] = true;
          comp.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    if (!peel(g, std::move(comp), kNoNode, parent)) return std::nullopt;
  }
  ForestRep f = forest_from_parents(parent);
  // Peeling can succeed on non-TP graphs only if the ancestor closure
  // differs; check it.
  if (graph_from_forest(parent).edges() != g.edges()) return std::nullopt;
  return f;
}

}  // namespace detail

inline bool is_trivially_perfect(const Graph& g) { return detail::try_forest(g).has_value(); }

/// Forest whose ancestor relation reproduces g. Twins are stacked into a
/// chain ordered by (weight, index).
inline ForestRep forest_representation(const Graph& g) {
  auto f = detail::try_forest(g);
  if (!f) throw InputError("graph is not trivially perfect");
  return *f;
}

/// Maximal cliques of a TP graph as root-leaf path node sets, sorted.
inline std::vector<NodeSet> forest_cliques(const ForestRep& f) {
  std::vector<NodeSet> out;
  for (NodeId leaf : f.leaves()) out.push_back(f.path_nodes(leaf));
  std::sort(out.begin(), out.end());
  return out;
}

/// True iff no root-leaf path meets two nodes of `s` (equivalently, `s` is
/// stable in the graph).
inline bool is_path_disjoint(const ForestRep& f, std::span<const NodeId> s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i != j && (s[i] == s[j] || f.is_ancestor(s[i], s[j]))) return false;
    }
  }
  return true;
}

/// Splits an orbit into chains: maximal directed paths in which every node
/// but the last has exactly one child, and that child is in the orbit.
/// Each chain is listed top-down. Throws ConsistencyError if the chains do
/// not all have the same length.
inline std::vector<std::vector<NodeId>> chain_decomposition(const ForestRep& f, std::span<const NodeId> orbit) {
  std::vector<bool> in(f.size(), false);
  for (NodeId v : orbit) {
    if (v >= f.size()) throw InputError("orbit node out of range");
    in[v] = true;
  }
  auto continues = [&](NodeId v) { return f.children[v].size() == 1 && in[f.children[v][0]]; };
  NodeSet sorted(orbit.begin(), orbit.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<NodeId>> chains;
  for (NodeId v : sorted) {
    NodeId p = f.parent[v];
    if (p != kNoNode && in[p] && continues(p)) continue;  // not a chain start
    std::vector<NodeId> chain{v};
    while (continues(chain.back())) chain.push_back(f.children[chain.back()][0]);
    chains.push_back(std::move(chain));
  }
  for (const auto& c : chains) {
    if (c.size() != chains.front().size()) {
      throw ConsistencyError("orbit decomposes into chains of different lengths");
    }
  }
  return chains;
}

// ---------------------------------------------------------------------------
// Recursion property. The forest gets a virtual root (index n) above all
// real roots; it may serve as the node d.

struct RecursionCheck {
  bool holds = false;
  std::vector<NodeId> d;  // d[i] for the step from set i to set i+1; n = virtual root
};

namespace detail {

/// Roots (children of d, or real roots when d is the virtual root) whose
/// subtrees avoid every node of `avoid`.
inline NodeSet reduced_roots(const ForestRep& f, NodeId d, const std::vector<bool>& avoid) {
  const NodeSet& kids = d == f.size() ? f.roots : f.children[d];
  NodeSet out;
  for (NodeId c : kids) {
    auto sub = f.subtree(c);
    if (std::none_of(sub.begin(), sub.end(), [&](NodeId x) { return avoid[x]; })) out.push_back(c);
  }
  return out;
}

inline bool inside_roots(const ForestRep& f, const NodeSet& roots, std::span<const NodeId> s) {
  for (NodeId v : s) {
    bool ok = std::any_of(roots.begin(), roots.end(), [&](NodeId r) { return f.is_ancestor(r, v); });
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

/// Sets must be pairwise disjoint and path-disjoint, and for each i some d
/// on a root path of an earlier set node (or the virtual root) has the
/// next set inside the subtrees below d that avoid all earlier sets.
inline RecursionCheck check_recursion_property(const ForestRep& f, const std::vector<NodeSet>& sets) {
  RecursionCheck out;
  const std::size_t n = f.size();
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!is_path_disjoint(f, sets[i])) return out;
    for (NodeId v : sets[i]) {
      if (v >= n) throw InputError("set node out of range");
      if (owner[v] != -1) return out;
      owner[v] = static_cast<int>(i);
    }
  }
  std::vector<bool> avoid(n, false);
  for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
    for (NodeId v : sets[i]) avoid[v] = true;
    // Candidates: ancestors-or-self of earlier set nodes, then the virtual root.
    std::vector<bool> cand(n, false);
    for (NodeId v = 0; v < n; ++v) {
      if (!avoid[v]) continue;
      for (NodeId x = v; x != kNoNode; x = f.parent[x]) cand[x] = true;
    }
    NodeId found = kNoNode;
    for (NodeId d = 0; d <= n && found == kNoNode; ++d) {
      if (d < n && !cand[d]) continue;
      if (detail::inside_roots(f, detail::reduced_roots(f, d, avoid), sets[i + 1])) found = d;
    }
    if (found == kNoNode) return out;
    out.d.push_back(found);
  }
  out.holds = true;
  return out;
}

struct LaminarRecursionCheck {
  bool holds = false;
  std::vector<NodeId> u;  // per set: smallest node not in any proper subset member
};

/// (1) every set has a node outside all of its proper subsets in the
/// family; (2) the maximal sets, in family order, have the recursion
/// property. The family must be laminar and consist of path-disjoint sets.
inline LaminarRecursionCheck check_laminar_recursion_property(const ForestRep& f,
                                                              const std::vector<NodeSet>& family) {
  LaminarRecursionCheck out;
  std::vector<NodeSet> sorted = family;
  for (auto& s : sorted) {
    std::sort(s.begin(), s.end());
    if (!is_path_disjoint(f, s)) return out;
  }
  auto proper_subset = [](const NodeSet& a, const NodeSet& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      NodeSet common;
      std::set_intersection(sorted[i].begin(), sorted[i].end(), sorted[j].begin(), sorted[j].end(),
                            std::back_inserter(common));
      if (!common.empty() && common.size() != sorted[i].size() && common.size() != sorted[j].size()) {
        return out;  // not laminar
      }
    }
  }
  std::vector<NodeSet> maximal;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    NodeId pick = kNoNode;
    for (NodeId v : sorted[i]) {
      bool covered = false;
      for (std::size_t j = 0; j < sorted.size() && !covered; ++j) {
        if (j != i && proper_subset(sorted[j], sorted[i]) &&
            std::binary_search(sorted[j].begin(), sorted[j].end(), v)) {
          covered = true;
        }
      }
      if (!covered) {
        pick = v;
        break;
      }
    }
    if (pick == kNoNode) return out;
    out.u.push_back(pick);
    bool is_max = true;
    for (std::size_t j = 0; j < sorted.size() && is_max; ++j) {
      if (j == i) continue;
      if (proper_subset(sorted[i], sorted[j])) is_max = false;
      if (sorted[j] == sorted[i] && j < i) is_max = false;
    }
    if (is_max) maximal.push_back(sorted[i]);
  }
  if (!check_recursion_property(f, maximal).holds) return out;
  out.holds = true;
  return out;
}

// ---------------------------------------------------------------------------
// Equicolorings of path sets.

/// sign[leaf] in {+1,-1} for paths in P, 0 for leaves outside P.
struct Equicoloring {
  std::vector<int> sign;
};

/// delta_v = |P+_v| - |P-_v| for every node.
inline std::vector<int> path_deltas(const ForestRep& f, const Equicoloring& c) {
  std::vector<int> delta(f.size(), 0);
  for (NodeId leaf = 0; leaf < f.size(); ++leaf) {
    if (c.sign[leaf] == 0) continue;
    for (NodeId x = leaf; x != kNoNode; x = f.parent[x]) delta[x] += c.sign[leaf];
  }
  return delta;
}

inline bool is_equicoloring(const ForestRep& f, const Equicoloring& c) {
  auto d = path_deltas(f, c);
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= -1 && x <= 1; });
}

namespace detail {

/// Forest plus a virtual root and optional virtual group nodes. Real nodes
/// keep their indices; leaves are always real.
class AugmentedTree {
 public:
  explicit AugmentedTree(const ForestRep& f) : n_(f.size()) {
    children_.resize(n_ + 1);
    parent_.assign(n_ + 1, kNoNode);
    for (NodeId v = 0; v < n_; ++v) {
      children_[v] = f.children[v];
      parent_[v] = f.parent[v] == kNoNode ? root() : f.parent[v];
    }
    children_[root()] = f.roots;
  }

  NodeId root() const { return static_cast<NodeId>(n_); }
  /// Where a whole-forest recursion starts: the real root of a single tree
  /// (so no extra orientation happens above it), else the virtual root.
  NodeId top() const { return children_[root()].size() == 1 ? children_[root()][0] : root(); }
  std::size_t size() const { return children_.size(); }
  const std::vector<NodeId>& children(NodeId v) const { return children_[v]; }
  NodeId parent(NodeId v) const { return parent_[v]; }
  bool is_real_leaf(NodeId v) const { return v < n_ && children_[v].empty(); }

  /// Inserts a virtual node between d and the given children of d.
  NodeId group(NodeId d, const NodeSet& kids) {
    NodeId g = static_cast<NodeId>(children_.size());
    children_.emplace_back();
    parent_.push_back(d);
    auto& dk = children_[d];
    for (NodeId c : kids) {
      auto it = std::find(dk.begin(), dk.end(), c);
      if (it == dk.end()) throw ConsistencyError("group child is not below d");
      dk.erase(it);
      children_[g].push_back(c);
      parent_[c] = g;
    }
    dk.push_back(g);
    return g;
  }

  /// Current node hanging below d that holds real child c.
  NodeId holder_below(NodeId d, NodeId c) const {
    NodeId x = c;
    while (parent_[x] != d) x = parent_[x];
    return x;
  }

  void leaves_below(NodeId v, std::vector<NodeId>& out) const {
    if (is_real_leaf(v)) {
      out.push_back(v);
      return;
    }
    for (NodeId c : children_[v]) leaves_below(c, out);
  }

 private:
  std::size_t n_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> parent_;
};

/// Constructive recursion over subtree heights. Colours the P-paths below
/// v and returns (delta_v, sum of delta over S below v).
class TreeColorer {
 public:
  TreeColorer(const AugmentedTree& t, const std::vector<bool>& in_p, const std::vector<bool>& in_s,
              std::vector<int>& sign)
      : t_(t), in_p_(in_p), in_s_(in_s), sign_(sign) {}

  std::pair<int, int> solve(NodeId v) {
    if (v < in_s_.size() && in_s_[v]) {
      // Balanced alternating colouring of the subtree, starting with -1.
      std::vector<NodeId> leaves;
      t_.leaves_below(v, leaves);
      int next = -1, delta = 0;
      for (NodeId l : leaves) {
        if (!in_p_[l]) continue;
        sign_[l] = next;
        delta += next;
        next = -next;
      }
      return {delta, delta};
    }
    if (t_.is_real_leaf(v)) {
      if (!in_p_[v]) return {0, 0};
      sign_[v] = -1;
      return {-1, 0};
    }
    struct Part {
      NodeId node;
      int delta;
      int sum;
    };
    std::vector<Part> both, root_only, sum_only;
    for (NodeId c : t_.children(v)) {
      auto [d, s] = solve(c);
      if (d != 0 && s != 0) {
        if (d != s) throw ConsistencyError("component with opposite root and set sums");
        both.push_back({c, d, s});
      } else if (d != 0) {
        root_only.push_back({c, d, s});
      } else if (s != 0) {
        sum_only.push_back({c, d, s});
      }
    }
    // Orient so that signs alternate +1, -1, ... ; flips keep every delta
    // inside {0, +-1}.
    auto orient = [&](std::vector<Part>& parts, int first, bool by_delta) {
      int want = first, total = 0;
      for (auto& p : parts) {
        int have = by_delta ? p.delta : p.sum;
        if (have != want) flip(p.node, p);
        total += want;
        want = -want;
      }
      return total;
    };
    int delta_both = orient(both, +1, true);
    int delta_v = delta_both + orient(root_only, delta_both == 0 ? +1 : -1, true);
    int sum_v = delta_both + orient(sum_only, delta_both == 0 ? +1 : -1, false);
    return {delta_v, sum_v};
  }

 private:
  template <typename Part>
  void flip(NodeId v, Part& p) {
    std::vector<NodeId> leaves;
    t_.leaves_below(v, leaves);
    for (NodeId l : leaves) sign_[l] = -sign_[l];
    p.delta = -p.delta;
    p.sum = -p.sum;
  }

  const AugmentedTree& t_;
  const std::vector<bool>& in_p_;
  const std::vector<bool>& in_s_;
  std::vector<int>& sign_;
};

inline std::vector<bool> membership(std::size_t n, std::span<const NodeId> nodes) {
  std::vector<bool> in(n, false);
  for (NodeId v : nodes) {
    if (v >= n) throw InputError("node index out of range");
    in[v] = true;
  }
  return in;
}

inline std::vector<bool> path_membership(const ForestRep& f, std::span<const NodeId> paths) {
  auto in = membership(f.size(), paths);
  for (NodeId v : paths) {
    if (!f.is_leaf(v)) throw InputError("paths are identified by leaves; node " + std::to_string(v + 1) +
                                        " is not a leaf");
  }
  return in;
}

}  // namespace detail

/// Equicoloring of the paths P (given by their leaves) such that, with r a
/// virtual root above the whole forest, sum_{v in S} delta_v = -1 when
/// delta_r = -1 and lies in {0, 1} otherwise. For a single tree delta_r is
/// the root's delta. S must be non-empty and path-disjoint.
inline Equicoloring equicolor_tree_paths(const ForestRep& f, std::span<const NodeId> paths,
                                         std::span<const NodeId> s) {
  if (s.empty()) throw InputError("set must be non-empty");
  if (!is_path_disjoint(f, s)) throw InputError("set is not path-disjoint");
  auto in_p = detail::path_membership(f, paths);
  auto in_s = detail::membership(f.size(), s);
  detail::AugmentedTree t(f);
  Equicoloring c{std::vector<int>(f.size(), 0)};
  detail::TreeColorer(t, in_p, in_s, c.sign).solve(t.top());
  return c;
}

/// Equicoloring of P with sum_{v in S_i} delta_v in {0, +-1} for every set
/// of a family with the recursion property.
inline Equicoloring equicolor_recursive(const ForestRep& f, const std::vector<NodeSet>& sets,
                                        std::span<const NodeId> paths) {
  if (sets.empty()) throw InputError("family must be non-empty");
  for (const auto& s : sets) {
    if (s.empty()) throw InputError("family sets must be non-empty");
  }
  auto rp = check_recursion_property(f, sets);
  if (!rp.holds) throw InputError("family does not have the recursion property");
  const std::size_t n = f.size();
  auto in_p = detail::path_membership(f, paths);

  // Group the subtrees used by each step under a virtual node. For a fixed
  // d the groups shrink as more sets are avoided, so inserting them in step
  // order keeps the tree well formed.
  detail::AugmentedTree t(f);
  std::vector<NodeId> step_root(sets.size(), kNoNode);
  std::vector<bool> avoid(n, false);
  for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
    for (NodeId v : sets[i]) avoid[v] = true;
    NodeId d = rp.d[i];
    NodeSet roots = detail::reduced_roots(f, d, avoid);
    // Earlier groups at the same d are supersets; attach below the newest.
    NodeId attach = d;
    for (NodeId h = t.holder_below(attach, roots.front()); h > n; h = t.holder_below(attach, roots.front())) {
      attach = h;
    }
    NodeSet direct;
    for (NodeId r : roots) direct.push_back(t.holder_below(attach, r));
    std::sort(direct.begin(), direct.end());
    direct.erase(std::unique(direct.begin(), direct.end()), direct.end());
    step_root[i + 1] = t.group(attach, direct);
  }

  Equicoloring c{std::vector<int>(n, 0)};
  auto delta_of = [&](NodeId v) {
    std::vector<NodeId> leaves;
    t.leaves_below(v, leaves);
    int d = 0;
    for (NodeId l : leaves) d += c.sign[l];
    return d;
  };
  {
    auto in_s = detail::membership(n, sets[0]);
    detail::TreeColorer(t, in_p, in_s, c.sign).solve(t.top());
  }
  for (std::size_t k = 1; k < sets.size(); ++k) {
    NodeId r = step_root[k];
    int before = delta_of(r);
    auto in_s = detail::membership(n, sets[k]);
    detail::TreeColorer(t, in_p, in_s, c.sign).solve(r);
    int after = delta_of(r);
    if (after != before) {
      if (after != -before) throw ConsistencyError("subtree parity changed while recolouring");
      std::vector<NodeId> leaves;
      t.leaves_below(r, leaves);
      for (NodeId l : leaves) c.sign[l] = -c.sign[l];
    }
  }
  return c;
}

}  // namespace sstcuts
