#pragma once

// Orbits, stabilizer chains and small-group enumeration.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "sstcuts/errors.hpp"
#include "sstcuts/permutation.hpp"

namespace sstcuts {

struct Orbit {
  Point representative = 0;
  std::vector<Point> members;  // sorted ascending

  std::size_t size() const { return members.size(); }
  bool contains(Point p) const {
    return std::binary_search(members.begin(), members.end(), p);
  }
  friend bool operator==(const Orbit&, const Orbit&) = default;
};

/// Breadth-first closure of {i} under the generators.
inline Orbit orbit(const GeneratorSet& g, Point i) {
  if (i >= g.n) throw InputError("orbit point out of range");
  std::vector<bool> seen(g.n, false);
  std::vector<Point> members{i};
  seen[i] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    Point x = members[head];
    for (const auto& s : g.generators) {
      Point y = s(x);
      if (!seen[y]) {
        seen[y] = true;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Orbit{i, std::move(members)};
}

/// Orbit partition of all points; each orbit is represented by its smallest
/// member and the list is ordered by representative.
inline std::vector<Orbit> orbits(const GeneratorSet& g) {
  std::vector<Orbit> out;
  std::vector<bool> done(g.n, false);
  for (Point i = 0; i < g.n; ++i) {
    if (done[i]) continue;
    Orbit o = orbit(g, i);
    for (Point m : o.members) done[m] = true;
    out.push_back(std::move(o));
  }
  return out;
}

/// Orbit of a root point with a Schreier vector: every orbit point x records
/// the generator that first reached it, which yields a transversal element
/// u_x with u_x(root) = x.
class SchreierTree {
 public:
  SchreierTree() = default;

  SchreierTree(std::size_t n, Point root, std::vector<Permutation> gens)
      : root_(root), via_(n, kAbsent), gens_(std::move(gens)) {
    inverses_.reserve(gens_.size());
    for (const auto& s : gens_) inverses_.push_back(s.inverse());
    via_[root] = kRoot;
    points_.push_back(root);
    grow();
  }

  Point root() const { return root_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool contains(Point x) const { return via_[x] != kAbsent; }
  const std::vector<Permutation>& generators() const { return gens_; }

  /// u_x with u_x(root) = x.
  Permutation transversal(Point x) const {
    if (!contains(x)) throw ConsistencyError("transversal requested for a non-orbit point");
    Permutation u(via_.size());
    while (via_[x] != kRoot) {
      std::uint32_t k = via_[x];
      u = compose(u, gens_[k]);
      x = inverses_[k](x);
    }
    return u;
  }

  /// Generator index and predecessor used to reach x (x != root).
  std::uint32_t via(Point x) const { return via_[x]; }

 private:
  static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kRoot = kAbsent - 1;

  void grow() {
    for (std::size_t head = 0; head < points_.size(); ++head) {
      Point y = points_[head];
      for (std::uint32_t k = 0; k < gens_.size(); ++k) {
        Point z = gens_[k](y);
        if (via_[z] == kAbsent) {
          via_[z] = k;
          points_.push_back(z);
        }
      }
    }
  }

  Point root_ = 0;
  std::vector<std::uint32_t> via_;
  std::vector<Point> points_;
  std::vector<Permutation> gens_;
  std::vector<Permutation> inverses_;
};

/// Base and strong generating set built by the deterministic Schreier-Sims
/// algorithm. The base starts with a caller-supplied prefix, so the strong
/// generators fixing the first k prefix points generate the pointwise
/// stabilizer of those points.
///
/// Schreier generators are reduced by sifting through the partial chain.
/// Cost grows roughly with n^5 for large symmetric groups; intended for the
/// few-hundred-point range.
class StabilizerChain {
 public:
  StabilizerChain(const GeneratorSet& g, std::span<const Point> base_prefix = {})
      : n_(g.n), base_(base_prefix.begin(), base_prefix.end()) {
    for (Point b : base_) {
      if (b >= n_) throw InputError("base point out of range");
    }
    for (const auto& s : normalized(g).generators) {
      if (s.size() != n_) throw InputError("generator degree differs from group degree");
      strong_.push_back(s);
    }
    for (const auto& s : strong_) ensure_moves_base(s);
    build();
  }

  std::size_t degree() const { return n_; }
  const std::vector<Point>& base() const { return base_; }
  const std::vector<Permutation>& strong_generators() const { return strong_; }

  /// Orbit of base()[level] under the stabilizer of base()[0..level).
  const SchreierTree& level(std::size_t i) const { return levels_[i]; }
  std::size_t depth() const { return levels_.size(); }

  /// Strong generators fixing base()[0..k); they generate the pointwise
  /// stabilizer of those points.
  GeneratorSet stabilizer_generators(std::size_t k) const {
    GeneratorSet out(n_);
    for (const auto& s : strong_) {
      if (fixes_prefix(s, k)) out.generators.push_back(s);
    }
    return normalized(std::move(out));
  }

  /// Group order, saturating at UINT64_MAX.
  std::uint64_t order() const {
    std::uint64_t ord = 1;
    for (const auto& lvl : levels_) {
      std::uint64_t s = lvl.size();
      if (ord > std::numeric_limits<std::uint64_t>::max() / s) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      ord *= s;
    }
    return ord;
  }

  bool contains(const Permutation& p) const {
    if (p.size() != n_) return false;
    auto [residue, lvl] = sift(p, 0);
    return lvl == levels_.size() && residue.is_identity();
  }

 private:
  bool fixes_prefix(const Permutation& s, std::size_t k) const {
    for (std::size_t j = 0; j < k && j < base_.size(); ++j) {
      if (s(base_[j]) != base_[j]) return false;
    }
    return true;
  }

  void ensure_moves_base(const Permutation& s) {
    if (fixes_prefix(s, base_.size()) && !s.is_identity()) {
      base_.push_back(static_cast<Point>(s.first_moved_point()));
    }
  }

  std::vector<Permutation> level_generators(std::size_t i) const {
    std::vector<Permutation> gens;
    for (const auto& s : strong_) {
      if (fixes_prefix(s, i)) gens.push_back(s);
    }
    return gens;
  }

  void rebuild_level(std::size_t i) {
    levels_[i] = SchreierTree(n_, base_[i], level_generators(i));
  }

  /// Strips p through levels [from, depth). Returns the residue and the
  /// level at which stripping stopped (depth() when it went through).
  std::pair<Permutation, std::size_t> sift(Permutation p, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      Point x = p(base_[i]);
      if (!levels_[i].contains(x)) return {std::move(p), i};
      p = compose(levels_[i].transversal(x).inverse(), p);
    }
    return {std::move(p), levels_.size()};
  }

  void build() {
    levels_.clear();
    levels_.resize(base_.size());
    for (std::size_t i = 0; i < base_.size(); ++i) rebuild_level(i);
    // tested[i] holds (orbit point, strong generator index) pairs whose
    // Schreier generator already sifted to the identity.
    std::vector<std::set<std::pair<Point, std::size_t>>> tested(base_.size());

    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(base_.size()) - 1;
    while (i >= 0) {
      const auto lvl = static_cast<std::size_t>(i);
      bool extended = false;
      const SchreierTree& tree = levels_[lvl];
      for (std::size_t pi = 0; !extended && pi < tree.points().size(); ++pi) {
        Point y = tree.points()[pi];
        Permutation uy = tree.transversal(y);
        for (std::size_t k = 0; k < strong_.size(); ++k) {
          if (!fixes_prefix(strong_[k], lvl)) continue;
          if (tested[lvl].contains({y, k})) continue;
          const Permutation& s = strong_[k];
          Permutation h = compose(tree.transversal(s(y)).inverse(), compose(s, uy));
          tested[lvl].insert({y, k});
          if (h.is_identity()) continue;
          auto [residue, stop] = sift(std::move(h), lvl + 1);
          if (stop == levels_.size() && residue.is_identity()) continue;
          // New strong generator fixing base_[0..stop).
          if (stop == levels_.size()) {
            base_.push_back(static_cast<Point>(residue.first_moved_point()));
            levels_.emplace_back();
            tested.emplace_back();
          }
          strong_.push_back(std::move(residue));
          for (std::size_t j = lvl + 1; j <= stop; ++j) {
            rebuild_level(j);
            tested[j].clear();
          }
          i = static_cast<std::ptrdiff_t>(stop);
          extended = true;
          break;
        }
      }
      if (!extended) --i;
    }
  }

  std::size_t n_;
  std::vector<Point> base_;
  std::vector<Permutation> strong_;
  std::vector<SchreierTree> levels_;
};

/// Generators of {g in G : g(i) = i for all i in fixed}.
inline GeneratorSet pointwise_stabilizer(const GeneratorSet& g, std::span<const Point> fixed) {
  for (Point p : fixed) {
    if (p >= g.n) throw InputError("stabilized point out of range");
  }
  std::vector<Point> prefix(fixed.begin(), fixed.end());
  std::sort(prefix.begin(), prefix.end());
  prefix.erase(std::unique(prefix.begin(), prefix.end()), prefix.end());
  if (prefix.empty()) return normalized(g);
  StabilizerChain chain(g, prefix);
  return chain.stabilizer_generators(prefix.size());
}

inline GeneratorSet pointwise_stabilizer(const GeneratorSet& g, std::initializer_list<Point> fixed) {
  std::vector<Point> v(fixed);
  return pointwise_stabilizer(g, std::span<const Point>(v));
}

inline std::uint64_t group_order(const GeneratorSet& g) { return StabilizerChain(g).order(); }

/// All elements by closure under composition, sorted lexicographically by
/// image array. Throws GroupTooLarge as soon as more than `cap` elements
/// are found.
inline std::vector<Permutation> enumerate_elements(const GeneratorSet& g, std::size_t cap) {
  if (cap == 0) throw InputError("enumeration cap must be positive");
  std::set<Permutation> seen;
  std::vector<Permutation> queue{Permutation::identity(g.n)};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& s : g.generators) {
      Permutation next = compose(s, queue[head]);
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw GroupTooLarge("group order exceeds enumeration cap");
        queue.push_back(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

/// Some element of the group mapping `from` to `to`, found by walking the
/// Schreier tree of `from`. Empty when `to` is not in the orbit.
inline std::optional<Permutation> element_mapping(const GeneratorSet& g, Point from, Point to) {
  if (from >= g.n || to >= g.n) throw InputError("point out of range");
  SchreierTree tree(g.n, from, normalized(g).generators);
  if (!tree.contains(to)) return std::nullopt;
  return tree.transversal(to);
}

}  // namespace sstcuts
