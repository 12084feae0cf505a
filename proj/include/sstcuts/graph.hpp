#pragma once

// Weighted undirected graphs, DIMACS I/O, cliques and instance generators.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sstcuts/errors.hpp"

namespace sstcuts {

using NodeId = std::uint32_t;
using Weight = std::int64_t;
using NodeSet = std::vector<NodeId>;  // sorted ascending
using Edge = std::pair<NodeId, NodeId>;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Simple undirected graph with integer node weights (default 1). Keeps
/// sorted adjacency lists and a dense adjacency matrix.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : weights_(n, 1), adj_(n), matrix_(n * n, 0) {}

  Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t num_nodes() const { return adj_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  bool has_edge(NodeId u, NodeId v) const { return matrix_[u * num_nodes() + v] != 0; }
  const NodeSet& neighbors(NodeId v) const { return adj_[v]; }
  std::size_t degree(NodeId v) const { return adj_[v].size(); }

  Weight weight(NodeId v) const { return weights_[v]; }
  const std::vector<Weight>& weights() const { return weights_; }
  void set_weight(NodeId v, Weight w) {
    check_node(v);
    weights_[v] = w;
  }
  void set_weights(std::vector<Weight> w) {
    if (w.size() != num_nodes()) throw InputError("weight vector length differs from node count");
    weights_ = std::move(w);
  }

  /// Returns false when the edge was already present. Loops are rejected.
  bool add_edge(NodeId u, NodeId v) {
    check_node(u);
    check_node(v);
    if (u == v) throw InputError("loop edges are not allowed");
    if (has_edge(u, v)) return false;
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
    matrix_[u * num_nodes() + v] = matrix_[v * num_nodes() + u] = 1;
    ++num_edges_;
    return true;
  }

  bool remove_edge(NodeId u, NodeId v) {
    check_node(u);
    check_node(v);
    if (u == v || !has_edge(u, v)) return false;
    std::erase(adj_[u], v);
    std::erase(adj_[v], u);
    matrix_[u * num_nodes() + v] = matrix_[v * num_nodes() + u] = 0;
    --num_edges_;
    return true;
  }

  /// Drops every edge at v; v stays as an isolated node.
  void isolate(NodeId v) {
    for (NodeId u : NodeSet(adj_[v])) remove_edge(u, v);
  }

  /// Edges (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (NodeId u = 0; u < num_nodes(); ++u) {
      for (NodeId v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.weights_ == b.weights_ && a.adj_ == b.adj_;
  }

 private:
  void check_node(NodeId v) const {
    if (v >= num_nodes()) throw InputError("node index out of range");
  }
  static void insert_sorted(NodeSet& s, NodeId v) {
    s.insert(std::upper_bound(s.begin(), s.end(), v), v);
  }

  std::vector<Weight> weights_;
  std::vector<NodeSet> adj_;
  std::vector<std::uint8_t> matrix_;
  std::size_t num_edges_ = 0;
};

// ---------------------------------------------------------------------------
// DIMACS .col

/// Parses `c` comments, one `p edge <n> <m>` line (`p col` also accepted),
/// `e <u> <v>` edges and the `w <v> <c>` weight extension. Points are
/// 1-based. Duplicate edges collapse.
inline Graph parse_dimacs(std::string_view text) {
  Graph g;
  bool have_problem = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw InputError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    std::istringstream in(line);
    std::string tag;
    if (!(in >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      long long n = -1, m = -1;
      if (have_problem) fail("duplicate 'p' line");
      if (!(in >> kind >> n >> m) || n < 0 || m < 0) fail("malformed 'p' line");
      if (kind != "edge" && kind != "col" && kind != "edges") fail("unsupported problem kind '" + kind + "'");
      g = Graph(static_cast<std::size_t>(n));
      have_problem = true;
    } else if (tag == "e") {
      if (!have_problem) fail("edge before 'p' line");
      long long u = 0, v = 0;
      if (!(in >> u >> v)) fail("malformed 'e' line");
      auto n = static_cast<long long>(g.num_nodes());
      if (u < 1 || v < 1 || u > n || v > n) fail("node index out of range");
      if (u == v) fail("loop edge");
      g.add_edge(static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1));
    } else if (tag == "w") {
      if (!have_problem) fail("weight before 'p' line");
      long long v = 0;
      long long c = 0;
      if (!(in >> v >> c)) fail("malformed 'w' line");
      if (v < 1 || v > static_cast<long long>(g.num_nodes())) fail("node index out of range");
      g.set_weight(static_cast<NodeId>(v - 1), c);
    } else if (tag == "n") {
      // Some DIMACS variants use `n <v> <c>` for node values.
      if (!have_problem) fail("node line before 'p' line");
      long long v = 0, c = 0;
      if (!(in >> v >> c)) fail("malformed 'n' line");
      if (v < 1 || v > static_cast<long long>(g.num_nodes())) fail("node index out of range");
      g.set_weight(static_cast<NodeId>(v - 1), c);
    } else {
      fail("unknown line tag '" + tag + "'");
    }
  }
  if (!have_problem) {
    line_no = 0;
    fail("missing 'p' line");
  }
  return g;
}

/// Writes `w` lines only for weights different from 1.
inline std::string write_dimacs(const Graph& g, std::string_view comment = {}) {
  std::ostringstream out;
  if (!comment.empty()) out << "c " << comment << '\n';
  out << "p edge " << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.weight(v) != 1) out << "w " << v + 1 << ' ' << g.weight(v) << '\n';
  }
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Structural helpers

inline bool is_clique(const Graph& g, std::span<const NodeId> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (!g.has_edge(nodes[i], nodes[j])) return false;
    }
  }
  return true;
}

inline bool is_stable(const Graph& g, std::span<const NodeId> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (g.has_edge(nodes[i], nodes[j])) return false;
    }
  }
  return true;
}

inline Graph complement(const Graph& g) {
  Graph c(g.num_nodes());
  c.set_weights(g.weights());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v = u + 1; v < g.num_nodes(); ++v) {
      if (!g.has_edge(u, v)) c.add_edge(u, v);
    }
  }
  return c;
}

/// Induced subgraph with the index maps in both directions.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> new_to_old;
  std::vector<NodeId> old_to_new;  // kNoNode for dropped nodes
};

inline Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  Subgraph s;
  s.old_to_new.assign(g.num_nodes(), kNoNode);
  NodeSet keep(nodes.begin(), nodes.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (NodeId v : keep) {
    if (v >= g.num_nodes()) throw InputError("node index out of range");
    s.old_to_new[v] = static_cast<NodeId>(s.new_to_old.size());
    s.new_to_old.push_back(v);
  }
  s.graph = Graph(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    s.graph.set_weight(static_cast<NodeId>(i), g.weight(keep[i]));
    for (NodeId u : g.neighbors(keep[i])) {
      NodeId j = s.old_to_new[u];
      if (j != kNoNode && j > i) s.graph.add_edge(static_cast<NodeId>(i), j);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Cliques

struct CliqueOptions {
  std::size_t max_nodes = 200;
};

namespace detail {

inline void bron_kerbosch(const Graph& g, NodeSet& r, NodeSet p, NodeSet x,
                          std::vector<NodeSet>& out) {
  if (p.empty()) {
    if (x.empty()) {
      NodeSet c = r;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
    }
    return;
  }
  // Tomita pivot: the vertex of P u X with most neighbours in P.
  NodeId pivot = kNoNode;
  std::size_t best = 0;
  for (const NodeSet* set : {&p, &x}) {
    for (NodeId u : *set) {
      std::size_t cnt = 0;
      for (NodeId v : p) cnt += g.has_edge(u, v) ? 1 : 0;
      if (pivot == kNoNode || cnt > best) {
        pivot = u;
        best = cnt;
      }
    }
  }
  NodeSet candidates;
  for (NodeId v : p) {
    if (!g.has_edge(pivot, v)) candidates.push_back(v);
  }
  for (NodeId v : candidates) {
    NodeSet np, nx;
    for (NodeId u : p) {
      if (g.has_edge(v, u)) np.push_back(u);
    }
    for (NodeId u : x) {
      if (g.has_edge(v, u)) nx.push_back(u);
    }
    r.push_back(v);
    bron_kerbosch(g, r, std::move(np), std::move(nx), out);
    r.pop_back();
    std::erase(p, v);
    x.insert(std::upper_bound(x.begin(), x.end(), v), v);
  }
}

}  // namespace detail

/// All inclusionwise maximal cliques (Bron-Kerbosch with pivoting), each
/// sorted, the list sorted lexicographically. Isolated nodes are singleton
/// cliques.
inline std::vector<NodeSet> maximal_cliques(const Graph& g, CliqueOptions opts = {}) {
  if (g.num_nodes() > opts.max_nodes) {
    throw ResourceLimit("maximal clique enumeration capped at " + std::to_string(opts.max_nodes) +
                        " nodes; use the forest representation for trivially perfect graphs");
  }
  std::vector<NodeSet> out;
  NodeSet r, p(g.num_nodes()), x;
  for (NodeId v = 0; v < g.num_nodes(); ++v) p[v] = v;
  detail::bron_kerbosch(g, r, std::move(p), std::move(x), out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Clique-node incidence matrix: one row per maximal clique.
struct CliqueMatrix {
  std::size_t num_nodes = 0;
  std::vector<NodeSet> rows;

  int entry(std::size_t row, NodeId v) const {
    return std::binary_search(rows[row].begin(), rows[row].end(), v) ? 1 : 0;
  }
};

inline CliqueMatrix clique_matrix(const Graph& g, CliqueOptions opts = {}) {
  return CliqueMatrix{g.num_nodes(), maximal_cliques(g, opts)};
}

/// Partition of `subset` into cliques of g: repeatedly start a clique at the
/// smallest uncovered node and extend it by the smallest-index uncovered
/// nodes adjacent to every member so far.
inline std::vector<NodeSet> greedy_clique_cover(const Graph& g, std::span<const NodeId> subset) {
  NodeSet rest(subset.begin(), subset.end());
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  for (NodeId v : rest) {
    if (v >= g.num_nodes()) throw InputError("node index out of range");
  }
  std::vector<NodeSet> cover;
  std::vector<bool> covered(rest.size(), false);
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (covered[i]) continue;
    NodeSet clique{rest[i]};
    covered[i] = true;
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      if (covered[j]) continue;
      bool ok = std::all_of(clique.begin(), clique.end(),
                            [&](NodeId c) { return g.has_edge(c, rest[j]); });
      if (ok) {
        clique.push_back(rest[j]);
        covered[j] = true;
      }
    }
    cover.push_back(std::move(clique));
  }
  return cover;
}

// ---------------------------------------------------------------------------
// Generators. All randomness goes through std::mt19937_64 with explicit
// modulo reduction so outputs are identical across standard libraries.

namespace detail {

inline std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

inline bool bernoulli(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

inline std::vector<NodeId> shuffled_labels(std::mt19937_64& rng, std::size_t n) {
  std::vector<NodeId> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<NodeId>(i);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(labels[i - 1], labels[uniform(rng, i)]);
  }
  return labels;
}

}  // namespace detail

/// Comparability graph of a rooted forest: u ~ v iff one is an ancestor of
/// the other. `parent[v] == kNoNode` marks roots.
inline Graph graph_from_forest(std::span<const NodeId> parent) {
  const std::size_t n = parent.size();
  Graph g(n);
  for (NodeId v = 0; v < n; ++v) {
    std::size_t steps = 0;
    for (NodeId a = parent[v]; a != kNoNode; a = parent[a]) {
      if (a >= n || ++steps > n) throw InputError("parent array does not describe a forest");
      g.add_edge(a, v);
    }
  }
  return g;
}

/// Random trivially perfect graph on n nodes: a random rooted forest (each
/// node, in a random order, either starts a new tree or hangs below an
/// earlier node) closed under the ancestor relation.
inline Graph random_tp_graph(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw InputError("random_tp_graph needs n >= 1");
  std::mt19937_64 rng(seed);
  auto order = detail::shuffled_labels(rng, n);
  std::vector<NodeId> parent(n, kNoNode);
  for (std::size_t i = 1; i < n; ++i) {
    std::uint64_t pick = detail::uniform(rng, i + 1);
    if (pick < i) parent[order[i]] = order[pick];
  }
  return graph_from_forest(parent);
}

/// G(n, p) with a fixed seed.
inline Graph random_graph(std::uint64_t seed, std::size_t n, double p) {
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (detail::bernoulli(rng, p)) g.add_edge(u, v);
    }
  }
  return g;
}

/// Random trivially perfect graph with many automorphisms: sibling subtrees
/// are frequently copies of one another. At most n nodes (at least 1).
inline Graph random_symmetric_tp_graph(std::uint64_t seed, std::size_t max_nodes) {
  if (max_nodes == 0) throw InputError("random_symmetric_tp_graph needs max_nodes >= 1");
  std::mt19937_64 rng(seed);
  // A shape is a parent array over local ids, root is 0.
  using Shape = std::vector<NodeId>;
  auto copy_into = [](std::vector<NodeId>& parent, const Shape& shape, NodeId attach) {
    NodeId offset = static_cast<NodeId>(parent.size());
    for (std::size_t k = 0; k < shape.size(); ++k) {
      parent.push_back(shape[k] == kNoNode ? attach : shape[k] + offset);
    }
  };
  // Recursive shape generation with a node budget.
  auto make_shape = [&](auto&& self, std::size_t budget, int depth) -> Shape {
    Shape shape{kNoNode};
    if (budget <= 1 || depth > 4) return shape;
    std::size_t left = budget - 1;
    std::size_t kids = 1 + detail::uniform(rng, 3);
    bool copies = detail::bernoulli(rng, 0.7);
    if (copies) {
      std::size_t per = left / kids;
      if (per == 0) return shape;
      Shape child = self(self, 1 + detail::uniform(rng, per), depth + 1);
      for (std::size_t k = 0; k < kids; ++k) copy_into(shape, child, 0);
    } else {
      for (std::size_t k = 0; k < kids && left > 0; ++k) {
        Shape child = self(self, 1 + detail::uniform(rng, left), depth + 1);
        if (child.size() > left) break;
        left -= child.size();
        copy_into(shape, child, 0);
      }
    }
    return shape;
  };
  std::vector<NodeId> parent;
  std::size_t roots = 1 + detail::uniform(rng, 3);
  bool copy_roots = detail::bernoulli(rng, 0.6);
  Shape first = make_shape(make_shape, std::max<std::size_t>(1, max_nodes / roots), 0);
  for (std::size_t r = 0; r < roots; ++r) {
    Shape s = (r == 0 || copy_roots) ? first
                                     : make_shape(make_shape, std::max<std::size_t>(1, max_nodes / roots), 0);
    if (parent.size() + s.size() > max_nodes) break;
    copy_into(parent, s, kNoNode);
  }
  // Relabel randomly so structure is not aligned with indices.
  auto labels = detail::shuffled_labels(rng, parent.size());
  std::vector<NodeId> relabeled(parent.size(), kNoNode);
  for (std::size_t v = 0; v < parent.size(); ++v) {
    relabeled[labels[v]] = parent[v] == kNoNode ? kNoNode : labels[parent[v]];
  }
  return graph_from_forest(relabeled);
}

}  // namespace sstcuts
