#pragma once

// Schreier-Sims table cuts: table construction (plain and stringent), clique
// strengthening, feasibility checks and the repair of arbitrary solutions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sstcuts/errors.hpp"
#include "sstcuts/graph.hpp"
#include "sstcuts/group.hpp"
#include "sstcuts/permutation.hpp"

namespace sstcuts {

enum class OrbitRule { min_size, max_size };
enum class TableKind { plain, stringent };

inline constexpr std::size_t kDefaultMaxRounds = 50;

/// x_follower <= x_leader
struct PlainCut {
  Point leader = 0;
  Point follower = 0;
  friend bool operator==(const PlainCut&, const PlainCut&) = default;
  friend auto operator<=>(const PlainCut&, const PlainCut&) = default;
};

/// sum_{f in clique} x_f <= x_leader
struct SstCliqueCut {
  Point leader = 0;
  NodeSet clique;
  friend bool operator==(const SstCliqueCut&, const SstCliqueCut&) = default;
};

struct SstRound {
  Point leader = 0;
  Orbit orbit;                  // orbit of the leader under the round's group
  std::vector<Point> followers;  // orbit minus leader, ascending
};

struct SstTable {
  std::size_t n = 0;
  TableKind kind = TableKind::plain;
  std::vector<SstRound> rounds;

  std::vector<Point> leaders() const {
    std::vector<Point> out;
    for (const auto& r : rounds) out.push_back(r.leader);
    return out;
  }

  /// All (leader, follower) pairs in round order.
  std::vector<PlainCut> cuts() const {
    std::vector<PlainCut> out;
    for (const auto& r : rounds) {
      for (Point f : r.followers) out.push_back({r.leader, f});
    }
    return out;
  }
};

/// True iff every two sets are disjoint or nested.
inline bool is_laminar(const std::vector<NodeSet>& family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const auto& a = family[i];
      const auto& b = family[j];
      NodeSet common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (!common.empty() && common.size() != a.size() && common.size() != b.size()) return false;
    }
  }
  return true;
}

namespace detail {

inline SstRound make_round(Point leader, Orbit o) {
  SstRound r;
  r.leader = leader;
  for (Point p : o.members) {
    if (p != leader) r.followers.push_back(p);
  }
  r.orbit = std::move(o);
  return r;
}

/// Union of the inclusionwise maximal orbits among rounds[0..count) that do
/// not contain `leader`.
inline std::vector<Point> stringent_fixed_points(const std::vector<SstRound>& rounds,
                                                 std::size_t count, Point leader) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Orbit& o = rounds[i].orbit;
    bool maximal = true;
    for (std::size_t j = 0; j < count && maximal; ++j) {
      if (j == i) continue;
      const Orbit& other = rounds[j].orbit;
      if (other.size() > o.size() &&
          std::includes(other.members.begin(), other.members.end(), o.members.begin(), o.members.end())) {
        maximal = false;
      }
      // Equal orbits: keep only the earliest as the representative.
      if (other.members == o.members && j < i) maximal = false;
    }
    if (maximal && !o.contains(leader)) out.insert(out.end(), o.members.begin(), o.members.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Points fixed by the group of round `r`: earlier leaders, plus for
/// stringent tables the maximal earlier orbits not containing the leader.
inline std::vector<Point> round_fixed_points(const std::vector<SstRound>& rounds, std::size_t r,
                                             Point leader, TableKind kind) {
  std::vector<Point> fixed;
  for (std::size_t i = 0; i < r; ++i) fixed.push_back(rounds[i].leader);
  if (kind == TableKind::stringent) {
    auto extra = stringent_fixed_points(rounds, r, leader);
    fixed.insert(fixed.end(), extra.begin(), extra.end());
  }
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  return fixed;
}

inline const Orbit* choose_orbit(const std::vector<Orbit>& candidates, OrbitRule rule) {
  const Orbit* best = nullptr;
  for (const auto& o : candidates) {
    if (o.size() < 2) continue;
    if (best == nullptr) {
      best = &o;
      continue;
    }
    bool better = rule == OrbitRule::min_size ? o.size() < best->size() : o.size() > best->size();
    // Candidates are ordered by smallest member, so ties keep the earlier one.
    if (better) best = &o;
  }
  return best;
}

inline void check_table(const GeneratorSet& g, const SstTable& t) {
  if (t.n != g.n) throw InputError("table and group act on different point counts");
  for (const auto& r : t.rounds) {
    if (r.leader >= g.n) throw InputError("table leader out of range");
  }
}

}  // namespace detail

/// Group used to compute the orbit of round r of the table.
inline GeneratorSet round_group(const GeneratorSet& g, const SstTable& t, std::size_t r) {
  detail::check_table(g, t);
  auto fixed = detail::round_fixed_points(t.rounds, r, t.rounds[r].leader, t.kind);
  return pointwise_stabilizer(g, fixed);
}

/// Plain table: repeatedly pick the nontrivial orbit of minimum or maximum
/// size (ties: smallest contained point), take its smallest point as leader
/// and pass to the leader's stabilizer. Stops at the trivial group or after
/// max_rounds rounds.
inline SstTable build_sst_table(const GeneratorSet& g, OrbitRule rule,
                                std::size_t max_rounds = kDefaultMaxRounds) {
  if (max_rounds == 0) throw InputError("max_rounds must be at least 1");
  SstTable t;
  t.n = g.n;
  t.kind = TableKind::plain;
  GeneratorSet current = normalized(g);
  while (t.rounds.size() < max_rounds && !current.is_trivial()) {
    auto orbs = orbits(current);
    const Orbit* chosen = detail::choose_orbit(orbs, rule);
    if (chosen == nullptr) break;
    Point leader = chosen->members.front();
    t.rounds.push_back(detail::make_round(leader, orbit(current, leader)));
    current = pointwise_stabilizer(current, {leader});
  }
  return t;
}

/// Stringent table with depth-first leader order: after a leader is chosen,
/// the next leaders are taken from its orbit (smallest index first) until
/// that orbit is exhausted; only then is a fresh orbit opened, using the
/// orbit rule. Every orbit is computed under the stabilizer of all earlier
/// leaders and of the maximal earlier orbits not containing the leader.
inline SstTable build_stringent_sst_table(const GeneratorSet& g,
                                          std::size_t max_rounds = kDefaultMaxRounds,
                                          OrbitRule rule = OrbitRule::min_size) {
  if (max_rounds == 0) throw InputError("max_rounds must be at least 1");
  SstTable t;
  t.n = g.n;
  t.kind = TableKind::stringent;
  const GeneratorSet base = normalized(g);
  if (base.is_trivial()) return t;

  std::vector<bool> is_leader(g.n, false);
  std::vector<std::size_t> stack;  // indices of rounds whose orbits are open
  auto try_leader = [&](Point c) -> bool {
    auto fixed = detail::round_fixed_points(t.rounds, t.rounds.size(), c, TableKind::stringent);
    GeneratorSet h = pointwise_stabilizer(base, fixed);
    Orbit o = orbit(h, c);
    if (o.size() < 2) return false;
    t.rounds.push_back(detail::make_round(c, std::move(o)));
    is_leader[c] = true;
    stack.push_back(t.rounds.size() - 1);
    return true;
  };

  while (t.rounds.size() < max_rounds) {
    bool placed = false;
    while (!stack.empty() && !placed) {
      const Orbit& top = t.rounds[stack.back()].orbit;
      std::vector<Point> members = top.members;
      for (Point c : members) {
        if (is_leader[c]) continue;
        if (try_leader(c)) {
          placed = true;
          break;
        }
      }
      if (!placed) stack.pop_back();
    }
    if (placed) continue;
    // Fresh orbit: stabilize all leaders and all recorded orbits.
    std::vector<Point> fixed;
    for (const auto& r : t.rounds) {
      fixed.push_back(r.leader);
      fixed.insert(fixed.end(), r.orbit.members.begin(), r.orbit.members.end());
    }
    GeneratorSet h = pointwise_stabilizer(base, fixed);
    if (h.is_trivial()) break;
    const auto orbs = orbits(h);
    const Orbit* chosen = detail::choose_orbit(orbs, rule);
    if (chosen == nullptr) break;
    Point leader = chosen->members.front();
    if (!try_leader(leader)) throw ConsistencyError("fresh stringent orbit became trivial");
  }
  return t;
}

/// Table for a prescribed leader sequence. Rounds whose leader has a
/// trivial orbit are kept (with no followers).
inline SstTable build_table_with_leaders(const GeneratorSet& g, std::span<const Point> leaders,
                                         TableKind kind) {
  SstTable t;
  t.n = g.n;
  t.kind = kind;
  const GeneratorSet base = normalized(g);
  for (Point leader : leaders) {
    if (leader >= g.n) throw InputError("leader out of range");
    auto fixed = detail::round_fixed_points(t.rounds, t.rounds.size(), leader, kind);
    if (std::binary_search(fixed.begin(), fixed.end(), leader)) {
      throw InputError("leader " + std::to_string(leader + 1) + " is already fixed");
    }
    GeneratorSet h = pointwise_stabilizer(base, fixed);
    t.rounds.push_back(detail::make_round(leader, orbit(h, leader)));
  }
  return t;
}

inline SstTable build_table_with_leaders(const GeneratorSet& g, std::initializer_list<Point> leaders,
                                         TableKind kind) {
  std::vector<Point> v(leaders);
  return build_table_with_leaders(g, std::span<const Point>(v), kind);
}

/// Recomputes every orbit under the definitional stringent group and
/// compares with the recorded orbit.
inline bool is_stringent(const SstTable& t, const GeneratorSet& g) {
  detail::check_table(g, t);
  const GeneratorSet base = normalized(g);
  for (std::size_t r = 0; r < t.rounds.size(); ++r) {
    auto fixed = detail::round_fixed_points(t.rounds, r, t.rounds[r].leader, TableKind::stringent);
    if (std::binary_search(fixed.begin(), fixed.end(), t.rounds[r].leader)) return false;
    GeneratorSet h = pointwise_stabilizer(base, fixed);
    if (orbit(h, t.rounds[r].leader).members != t.rounds[r].orbit.members) return false;
  }
  return true;
}

/// One clique cut per clique of the greedy cover of each round's followers.
inline std::vector<SstCliqueCut> sst_clique_cuts(const SstTable& t, const Graph& graph) {
  if (t.n != graph.num_nodes()) throw InputError("table and graph sizes differ");
  std::vector<SstCliqueCut> out;
  for (const auto& r : t.rounds) {
    for (auto& c : greedy_clique_cover(graph, r.followers)) out.push_back({r.leader, std::move(c)});
  }
  return out;
}

inline std::vector<SstCliqueCut> as_clique_cuts(std::span<const PlainCut> cuts) {
  std::vector<SstCliqueCut> out;
  for (const auto& c : cuts) out.push_back({c.leader, {c.follower}});
  return out;
}

inline std::vector<PlainCut> expand_clique_cuts(std::span<const SstCliqueCut> cuts) {
  std::vector<PlainCut> out;
  for (const auto& c : cuts) {
    for (Point f : c.clique) out.push_back({c.leader, f});
  }
  return out;
}

using BinaryVector = std::vector<std::uint8_t>;

inline bool satisfies_cuts(std::span<const std::uint8_t> x, std::span<const PlainCut> cuts) {
  for (const auto& c : cuts) {
    if (c.leader >= x.size() || c.follower >= x.size()) throw InputError("cut index out of range");
    if (x[c.follower] > x[c.leader]) return false;
  }
  return true;
}

inline bool satisfies_cuts(std::span<const std::uint8_t> x, std::span<const SstCliqueCut> cuts) {
  for (const auto& c : cuts) {
    if (c.leader >= x.size()) throw InputError("cut index out of range");
    int sum = 0;
    for (Point f : c.clique) {
      if (f >= x.size()) throw InputError("cut index out of range");
      sum += x[f];
    }
    if (sum > x[c.leader]) return false;
  }
  return true;
}

/// Maps x into the region described by the table while staying in its
/// group orbit: round by round, move the largest entry of the round's orbit
/// (smallest index on ties) onto the leader with an element of the round's
/// group.
inline BinaryVector repair_solution(std::span<const std::uint8_t> x, const GeneratorSet& g,
                                    const SstTable& t) {
  detail::check_table(g, t);
  if (x.size() != g.n) throw InputError("solution length differs from group degree");
  for (auto v : x) {
    if (v > 1) throw InputError("solution is not a 0/1 vector");
  }
  BinaryVector cur(x.begin(), x.end());
  for (std::size_t r = 0; r < t.rounds.size(); ++r) {
    const SstRound& round = t.rounds[r];
    Point best = round.orbit.members.front();
    for (Point p : round.orbit.members) {
      if (cur[p] > cur[best]) best = p;
    }
    if (cur[best] <= cur[round.leader]) continue;
    GeneratorSet h = round_group(g, t, r);
    auto gamma = element_mapping(h, best, round.leader);
    if (!gamma) throw ConsistencyError("round orbit does not match its group");
    cur = apply_to_vector(*gamma, cur);
  }
  auto cuts = t.cuts();
  if (!satisfies_cuts(cur, cuts)) throw ConsistencyError("repaired solution violates table cuts");
  return cur;
}

}  // namespace sstcuts
