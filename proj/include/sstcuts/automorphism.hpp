#pragma once

// Generators of the weight-preserving automorphism group of a graph by
// colour refinement and individualization search.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sstcuts/errors.hpp"
#include "sstcuts/graph.hpp"
#include "sstcuts/group.hpp"
#include "sstcuts/permutation.hpp"

namespace sstcuts {

/// True iff p maps edges to edges, non-edges to non-edges and preserves
/// node weights.
inline bool is_automorphism(const Graph& g, const Permutation& p) {
  if (p.size() != g.num_nodes()) return false;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.weight(p(v)) != g.weight(v)) return false;
    if (g.degree(p(v)) != g.degree(v)) return false;
    for (NodeId u : g.neighbors(v)) {
      if (!g.has_edge(p(u), p(v))) return false;
    }
  }
  return true;
}

struct AutomorphismOptions {
  std::size_t max_nodes = 500;
  std::size_t node_budget = 2'000'000;
};

/// Vertex colouring with cells numbered 0..k-1 in a canonical order.
struct ColoredPartition {
  std::vector<std::uint32_t> color;
  std::uint32_t num_colors = 0;

  bool discrete() const { return num_colors == color.size(); }
};

namespace detail {

class AutomorphismSearch {
 public:
  AutomorphismSearch(const Graph& g, AutomorphismOptions opts) : g_(g), opts_(opts) {}

  GeneratorSet run() {
    const std::size_t n = g_.num_nodes();
    GeneratorSet found(n);
    if (n == 0) return found;

    ColoredPartition root = initial_partition();
    std::vector<std::uint32_t> root_trace;
    refine(root, root_trace);

    // First path: always individualize the smallest vertex of the target cell.
    first_.clear();
    first_.push_back(Level{root, root_trace, kNoNode, {}});
    while (!first_.back().partition.discrete()) {
      Level& cur = first_.back();
      auto cell = target_cell(cur.partition);
      cur.cell = cell;
      cur.chosen = cell.front();
      ColoredPartition next = individualize(cur.partition, cur.chosen);
      std::vector<std::uint32_t> trace;
      refine(next, trace);
      first_.push_back(Level{std::move(next), std::move(trace), kNoNode, {}});
    }
    first_leaf_ = leaf_labelling(first_.back().partition);

    // Bottom-up: gens found at levels >= i fix the chosen vertices above i,
    // so the orbit of chosen[i] under them is pruned.
    std::vector<Permutation> gens;
    for (std::size_t i = first_.size() - 1; i-- > 0;) {
      const Level& lvl = first_[i];
      GeneratorSet current(n, gens);
      std::vector<bool> in_orbit(n, false);
      for (Point p : orbit(current, lvl.chosen).members) in_orbit[p] = true;
      for (NodeId w : lvl.cell) {
        if (in_orbit[w]) continue;
        ColoredPartition child = individualize(lvl.partition, w);
        auto perm = search(child, i + 1);
        if (perm) {
          gens.push_back(std::move(*perm));
          current = GeneratorSet(n, gens);
          std::fill(in_orbit.begin(), in_orbit.end(), false);
          for (Point p : orbit(current, lvl.chosen).members) in_orbit[p] = true;
        }
      }
    }
    found.generators = std::move(gens);
    return normalized(std::move(found));
  }

 private:
  struct Level {
    ColoredPartition partition;
    std::vector<std::uint32_t> trace;
    NodeId chosen;
    std::vector<NodeId> cell;
  };

  ColoredPartition initial_partition() const {
    const std::size_t n = g_.num_nodes();
    std::vector<Weight> distinct(g_.weights());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    ColoredPartition p;
    p.color.resize(n);
    for (NodeId v = 0; v < n; ++v) {
      p.color[v] = static_cast<std::uint32_t>(
          std::lower_bound(distinct.begin(), distinct.end(), g_.weight(v)) - distinct.begin());
    }
    p.num_colors = static_cast<std::uint32_t>(distinct.size());
    return p;
  }

  /// Iterated refinement by (colour, sorted neighbour colours) until the
  /// number of cells is stable. `trace` receives an isomorphism-invariant
  /// description of the final partition and its quotient.
  void refine(ColoredPartition& p, std::vector<std::uint32_t>& trace) const {
    const std::size_t n = g_.num_nodes();
    std::vector<std::vector<std::uint32_t>> keys(n);
    std::vector<NodeId> order(n);
    for (;;) {
      for (NodeId v = 0; v < n; ++v) {
        auto& k = keys[v];
        k.clear();
        k.push_back(p.color[v]);
        for (NodeId u : g_.neighbors(v)) k.push_back(p.color[u]);
        std::sort(k.begin() + 1, k.end());
      }
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](NodeId a, NodeId b) { return keys[a] < keys[b]; });
      std::vector<std::uint32_t> next(n);
      std::uint32_t c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && keys[order[i]] != keys[order[i - 1]]) ++c;
        next[order[i]] = c;
      }
      std::uint32_t count = n == 0 ? 0 : c + 1;
      bool stable = count == p.num_colors;
      p.color = std::move(next);
      p.num_colors = count;
      if (stable) break;
    }
    trace.clear();
    trace.push_back(p.num_colors);
    std::vector<bool> done(p.num_colors, false);
    for (std::size_t i = 0; i < n; ++i) {
      NodeId v = order[i];
      std::uint32_t c = p.color[v];
      if (done[c]) continue;
      done[c] = true;
      std::size_t size = 0;
      for (std::size_t j = i; j < n && p.color[order[j]] == c; ++j) ++size;
      trace.push_back(static_cast<std::uint32_t>(size));
      // At stability keys hold the current colours: own colour followed by
      // the sorted neighbour colours, identical across the cell.
      trace.push_back(static_cast<std::uint32_t>(keys[v].size()));
      trace.insert(trace.end(), keys[v].begin(), keys[v].end());
    }
  }

  std::vector<NodeId> target_cell(const ColoredPartition& p) const {
    std::vector<std::size_t> size(p.num_colors, 0);
    for (auto c : p.color) ++size[c];
    std::uint32_t best = p.num_colors;
    for (std::uint32_t c = 0; c < p.num_colors; ++c) {
      if (size[c] > 1 && (best == p.num_colors || size[c] < size[best])) best = c;
    }
    std::vector<NodeId> cell;
    for (NodeId v = 0; v < p.color.size(); ++v) {
      if (p.color[v] == best) cell.push_back(v);
    }
    return cell;
  }

  /// v gets its own cell placed just before the rest of its old cell.
  static ColoredPartition individualize(const ColoredPartition& p, NodeId v) {
    ColoredPartition out;
    out.color.resize(p.color.size());
    for (NodeId u = 0; u < p.color.size(); ++u) {
      out.color[u] = p.color[u] + (p.color[u] > p.color[v] || (p.color[u] == p.color[v] && u != v) ? 1 : 0);
    }
    out.num_colors = p.num_colors + 1;
    return out;
  }

  static std::vector<NodeId> leaf_labelling(const ColoredPartition& p) {
    std::vector<NodeId> at(p.color.size());
    for (NodeId v = 0; v < p.color.size(); ++v) at[p.color[v]] = v;
    return at;
  }

  /// Exhaustive search below `p` (at depth `depth` of the first path) for a
  /// leaf equivalent to the first leaf. Returns the automorphism found.
  std::optional<Permutation> search(ColoredPartition p, std::size_t depth) {
    if (++nodes_ > opts_.node_budget) {
      throw ResourceLimit("automorphism search exceeded node budget of " +
                          std::to_string(opts_.node_budget));
    }
    std::vector<std::uint32_t> trace;
    refine(p, trace);
    if (depth >= first_.size() || trace != first_[depth].trace) return std::nullopt;
    if (p.discrete()) {
      auto at = leaf_labelling(p);
      std::vector<Point> img(at.size());
      for (std::size_t c = 0; c < at.size(); ++c) img[first_leaf_[c]] = at[c];
      Permutation perm(std::move(img));
      if (is_automorphism(g_, perm)) return perm;
      return std::nullopt;
    }
    for (NodeId w : target_cell(p)) {
      auto r = search(individualize(p, w), depth + 1);
      if (r) return r;
    }
    return std::nullopt;
  }

  const Graph& g_;
  AutomorphismOptions opts_;
  std::vector<Level> first_;
  std::vector<NodeId> first_leaf_;
  std::size_t nodes_ = 0;
};

}  // namespace detail

/// Generators of the full group of adjacency- and weight-preserving
/// permutations. Throws ResourceLimit when the search budget runs out.
inline GeneratorSet automorphism_generators(const Graph& g, AutomorphismOptions opts = {}) {
  if (g.num_nodes() > opts.max_nodes) {
    throw ResourceLimit("automorphism computation capped at " + std::to_string(opts.max_nodes) +
                        " nodes");
  }
  GeneratorSet gens = detail::AutomorphismSearch(g, opts).run();
  for (const auto& p : gens.generators) {
    if (!is_automorphism(g, p)) throw ConsistencyError("search produced a non-automorphism");
  }
  return gens;
}

/// Validates externally supplied symmetries. Throws InputError naming the
/// first offending generator (1-based).
inline void validate_symmetries(const Graph& g, const GeneratorSet& gens) {
  if (gens.n != g.num_nodes()) throw InputError("generator degree differs from node count");
  for (std::size_t i = 0; i < gens.generators.size(); ++i) {
    if (!is_automorphism(g, gens.generators[i])) {
      throw InputError("generator " + std::to_string(i + 1) + " (" +
                       format_cycles(gens.generators[i]) + ") is not a weight-preserving automorphism");
    }
  }
}

}  // namespace sstcuts
