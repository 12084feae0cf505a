#pragma once

// Exact maximum-weight stable set: exhaustive enumeration for small graphs
// and a depth-first branch and bound with clique-cover bounds and SST cut
// propagation.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "sstcuts/errors.hpp"
#include "sstcuts/graph.hpp"
#include "sstcuts/sst.hpp"

namespace sstcuts {

struct StableSetSolution {
  NodeSet members;
  Weight value = 0;
  std::uint64_t nodes_explored = 0;
};

inline constexpr std::size_t kBruteForceMaxNodes = 25;

namespace detail {

inline void check_clique_cuts(const Graph& g, std::span<const SstCliqueCut> cuts) {
  for (const auto& c : cuts) {
    if (c.leader >= g.num_nodes()) throw InputError("cut index out of range");
    for (NodeId f : c.clique) {
      if (f >= g.num_nodes()) throw InputError("cut index out of range");
      if (f == c.leader) throw InputError("cut leader equals its follower");
    }
  }
}

/// Calls visit(mask, value) for every stable set that satisfies the cuts.
template <typename Visit>
void for_each_stable_set(const Graph& g, std::span<const SstCliqueCut> cuts, Visit&& visit) {
  const std::size_t n = g.num_nodes();
  if (n > kBruteForceMaxNodes) {
    throw ResourceLimit("exhaustive stable set search capped at " + std::to_string(kBruteForceMaxNodes) +
                        " nodes");
  }
  check_clique_cuts(g, cuts);
  std::vector<std::uint32_t> nbr(n, 0);
  for (auto [u, v] : g.edges()) {
    nbr[u] |= 1u << v;
    nbr[v] |= 1u << u;
  }
  std::vector<std::uint32_t> cut_masks;
  for (const auto& c : cuts) {
    std::uint32_t m = 0;
    for (NodeId f : c.clique) m |= 1u << f;
    cut_masks.push_back(m);
  }
  auto feasible = [&](std::uint32_t mask) {
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      int sum = std::popcount(mask & cut_masks[k]);
      int lead = (mask >> cuts[k].leader) & 1;
      if (sum > lead) return false;
    }
    return true;
  };
  // Depth-first over nodes in index order; `blocked` holds neighbours of
  // chosen nodes.
  auto rec = [&](auto&& self, NodeId v, std::uint32_t mask, std::uint32_t blocked, Weight value) -> void {
    if (v == n) {
      if (feasible(mask)) visit(mask, value);
      return;
    }
    self(self, v + 1, mask, blocked, value);
    if (!((blocked >> v) & 1)) self(self, v + 1, mask | (1u << v), blocked | nbr[v], value + g.weight(v));
  };
  rec(rec, 0, 0, 0, 0);
}

inline NodeSet mask_to_set(std::uint32_t mask) {
  NodeSet s;
  for (NodeId v = 0; mask; ++v, mask >>= 1) {
    if (mask & 1) s.push_back(v);
  }
  return s;
}

}  // namespace detail

/// Exhaustive optimum; ties go to the lexicographically smallest member
/// list. At most 25 nodes.
inline StableSetSolution brute_force_max_stable(const Graph& g, std::span<const SstCliqueCut> cuts = {}) {
  StableSetSolution best;
  bool have = false;
  detail::for_each_stable_set(g, cuts, [&](std::uint32_t mask, Weight value) {
    ++best.nodes_explored;
    if (!have || value > best.value) {
      best.value = value;
      best.members = detail::mask_to_set(mask);
      have = true;
      return;
    }
    if (value == best.value) {
      NodeSet s = detail::mask_to_set(mask);
      if (s < best.members) best.members = std::move(s);
    }
  });
  return best;
}

inline StableSetSolution brute_force_max_stable(const Graph& g, std::span<const PlainCut> cuts) {
  auto cc = as_clique_cuts(cuts);
  return brute_force_max_stable(g, std::span<const SstCliqueCut>(cc));
}

/// Every optimal stable set (sorted lexicographically). At most 25 nodes.
inline std::vector<NodeSet> all_max_stable_sets(const Graph& g, std::span<const SstCliqueCut> cuts = {}) {
  Weight best = 0;
  std::vector<std::uint32_t> masks;
  bool have = false;
  detail::for_each_stable_set(g, cuts, [&](std::uint32_t mask, Weight value) {
    if (!have || value > best) {
      best = value;
      masks.clear();
      have = true;
    }
    if (value == best) masks.push_back(mask);
  });
  std::vector<NodeSet> out;
  for (auto m : masks) out.push_back(detail::mask_to_set(m));
  std::sort(out.begin(), out.end());
  return out;
}

struct BranchAndBoundOptions {
  std::uint64_t node_limit = 0;  // 0: unlimited
};

namespace detail {

class StableSetSearch {
 public:
  StableSetSearch(const Graph& g, std::span<const SstCliqueCut> cuts, BranchAndBoundOptions opts)
      : g_(g), cuts_(cuts.begin(), cuts.end()), opts_(opts), state_(g.num_nodes(), kFree),
        as_follower_(g.num_nodes()), as_leader_(g.num_nodes()) {
    check_clique_cuts(g, cuts);
    for (std::size_t k = 0; k < cuts_.size(); ++k) {
      as_leader_[cuts_[k].leader].push_back(k);
      for (NodeId f : cuts_[k].clique) as_follower_[f].push_back(k);
    }
  }

  StableSetSolution run() {
    best_.members.clear();
    best_.value = 0;  // the empty set is always feasible
    search();
    best_.nodes_explored = explored_;
    return best_;
  }

 private:
  static constexpr std::int8_t kFree = -1;

  /// Forces v to val and propagates. Returns false on a conflict; all
  /// assignments made are on the trail either way.
  bool assign(NodeId v0, std::int8_t val0) {
    std::vector<std::pair<NodeId, std::int8_t>> queue{{v0, val0}};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [v, val] = queue[head];
      if (state_[v] == val) continue;
      if (state_[v] != kFree) return false;
      state_[v] = val;
      trail_.push_back(v);
      if (val == 1) {
        value_ += g_.weight(v);
        for (NodeId u : g_.neighbors(v)) queue.emplace_back(u, 0);
        // x_v <= x_leader and the other clique members must be zero.
        for (std::size_t k : as_follower_[v]) {
          queue.emplace_back(cuts_[k].leader, 1);
          for (NodeId f : cuts_[k].clique) {
            if (f != v) queue.emplace_back(f, 0);
          }
        }
      } else {
        for (std::size_t k : as_leader_[v]) {
          for (NodeId f : cuts_[k].clique) queue.emplace_back(f, 0);
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      NodeId v = trail_.back();
      trail_.pop_back();
      if (state_[v] == 1) value_ -= g_.weight(v);
      state_[v] = kFree;
    }
  }

  /// Current value plus, for a greedy clique cover of the free
  /// positive-weight nodes, the heaviest weight of each clique.
  Weight bound(std::vector<NodeId>& free_pos) const {
    Weight b = value_;
    std::vector<bool> covered(free_pos.size(), false);
    for (std::size_t i = 0; i < free_pos.size(); ++i) {
      if (covered[i]) continue;
      covered[i] = true;
      std::vector<NodeId> clique{free_pos[i]};
      Weight heaviest = g_.weight(free_pos[i]);
      for (std::size_t j = i + 1; j < free_pos.size(); ++j) {
        if (covered[j]) continue;
        NodeId u = free_pos[j];
        if (std::all_of(clique.begin(), clique.end(), [&](NodeId c) { return g_.has_edge(c, u); })) {
          clique.push_back(u);
          covered[j] = true;
          heaviest = std::max(heaviest, g_.weight(u));
        }
      }
      b += heaviest;
    }
    return b;
  }

  void search() {
    ++explored_;
    if (opts_.node_limit != 0 && explored_ > opts_.node_limit) {
      throw ResourceLimit("branch and bound exceeded node limit of " + std::to_string(opts_.node_limit));
    }
    // Setting every free node to zero is feasible: included followers have
    // already forced their leaders.
    if (value_ > best_.value) record();

    std::vector<NodeId> free_pos;
    for (NodeId v = 0; v < g_.num_nodes(); ++v) {
      if (state_[v] == kFree && g_.weight(v) > 0) free_pos.push_back(v);
    }
    if (free_pos.empty()) return;
    // Heavier nodes first gives a tighter greedy cover.
    std::stable_sort(free_pos.begin(), free_pos.end(),
                     [&](NodeId a, NodeId b) { return g_.weight(a) > g_.weight(b); });
    if (bound(free_pos) <= best_.value) return;

    NodeId pick = kNoNode;
    std::size_t pick_deg = 0;
    for (NodeId v = 0; v < g_.num_nodes(); ++v) {
      if (state_[v] != kFree || g_.weight(v) <= 0) continue;
      std::size_t deg = 0;
      for (NodeId u : g_.neighbors(v)) deg += state_[u] == kFree ? 1 : 0;
      if (pick == kNoNode || deg > pick_deg) {
        pick = v;
        pick_deg = deg;
      }
    }
    for (std::int8_t val : {std::int8_t{1}, std::int8_t{0}}) {
      std::size_t mark = trail_.size();
      if (assign(pick, val)) search();
      undo(mark);
    }
  }

  void record() {
    best_.value = value_;
    best_.members.clear();
    for (NodeId v = 0; v < g_.num_nodes(); ++v) {
      if (state_[v] == 1) best_.members.push_back(v);
    }
  }

  const Graph& g_;
  std::vector<SstCliqueCut> cuts_;
  BranchAndBoundOptions opts_;
  std::vector<std::int8_t> state_;
  std::vector<std::vector<std::size_t>> as_follower_;
  std::vector<std::vector<std::size_t>> as_leader_;
  std::vector<NodeId> trail_;
  Weight value_ = 0;
  StableSetSolution best_;
  std::uint64_t explored_ = 0;
};

}  // namespace detail

/// Exact optimum by branch and bound. Branches on the free positive-weight
/// node with most free neighbours (smallest index on ties), include first.
inline StableSetSolution branch_and_bound_max_stable(const Graph& g, std::span<const SstCliqueCut> cuts = {},
                                                     BranchAndBoundOptions opts = {}) {
  return detail::StableSetSearch(g, cuts, opts).run();
}

inline StableSetSolution branch_and_bound_max_stable(const Graph& g, std::span<const PlainCut> cuts,
                                                     BranchAndBoundOptions opts = {}) {
  auto cc = as_clique_cuts(cuts);
  return detail::StableSetSearch(g, cc, opts).run();
}

}  // namespace sstcuts
