#pragma once

// Permutations of {0, ..., n-1}. Points are 0-based everywhere inside the
// library; the cycle-notation text format is 1-based.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sstcuts/errors.hpp"

namespace sstcuts {

using Point = std::uint32_t;

class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t n) : images_(n) {
    for (std::size_t i = 0; i < n; ++i) images_[i] = static_cast<Point>(i);
  }

  /// Takes the image array; throws InputError unless it is a bijection.
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) {
        throw InputError("permutation image array is not a bijection");
      }
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t n) { return Permutation(n); }

  /// Builds a permutation from 0-based disjoint cycles.
  static Permutation from_cycles(std::size_t n,
                                 const std::vector<std::vector<Point>>& cycles) {
    Permutation p(n);
    std::vector<bool> used(n, false);
    for (const auto& cycle : cycles) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        Point a = cycle[k];
        if (a >= n) throw InputError("cycle point out of range");
        if (used[a]) throw InputError("point repeated in cycle notation");
        used[a] = true;
        p.images_[a] = cycle[(k + 1) % cycle.size()];
      }
    }
    return p;
  }

  std::size_t size() const { return images_.size(); }
  Point operator()(Point i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    Permutation inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      inv.images_[images_[i]] = static_cast<Point>(i);
    }
    return inv;
  }

  /// Smallest point moved, or size() for the identity.
  std::size_t first_moved_point() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return i;
    }
    return images_.size();
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

/// (outer o inner)(i) = outer(inner(i)): apply `inner` first.
inline Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) {
    throw InputError("composing permutations of different degree");
  }
  std::vector<Point> img(inner.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = outer(inner(static_cast<Point>(i)));
  return Permutation(std::move(img));
}

/// Coordinate action: result[p(i)] = x[i], i.e. result_i = x_{p^-1(i)}.
template <typename T>
std::vector<T> apply_to_vector(const Permutation& p, std::span<const T> x) {
  if (x.size() != p.size()) {
    throw InputError("vector length does not match permutation degree");
  }
  std::vector<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[p(static_cast<Point>(i))] = x[i];
  return out;
}

template <typename T>
std::vector<T> apply_to_vector(const Permutation& p, const std::vector<T>& x) {
  return apply_to_vector(p, std::span<const T>(x));
}

/// Disjoint cycles of p, each starting at its smallest point, ordered by
/// that point. Fixed points are omitted.
inline std::vector<std::vector<Point>> cycles_of(const Permutation& p) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p(static_cast<Point>(i)) == i) continue;
    std::vector<Point> cycle;
    Point j = static_cast<Point>(i);
    while (!seen[j]) {
      seen[j] = true;
      cycle.push_back(j);
      j = p(j);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

/// 1-based cycle notation such as "(1,2,3)(5,6)"; "()" for the identity.
inline std::string format_cycles(const Permutation& p) {
  auto cycles = cycles_of(p);
  if (cycles.empty()) return "()";
  std::string out;
  for (const auto& c : cycles) {
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(c[k] + 1);
    }
    out += ')';
  }
  return out;
}

/// Parses 1-based cycle notation on n points. Separators inside a cycle may
/// be commas or whitespace. Fixed points may be omitted.
inline Permutation parse_cycles(std::string_view text, std::size_t n) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
  };
  skip_ws();
  if (i == text.size()) throw InputError("empty permutation text");
  while (i < text.size()) {
    if (text[i] != '(') throw InputError("expected '(' in cycle notation");
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        if (cycle.empty()) throw InputError("stray ',' in cycle notation");
        ++i;
        skip_ws();
      }
      if (i >= text.size()) throw InputError("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] < '0' || text[i] > '9') throw InputError("invalid character in cycle notation");
      std::uint64_t v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > n) throw InputError("cycle point out of range");
        ++i;
      }
      if (v == 0) throw InputError("cycle points are 1-based");
      cycle.push_back(static_cast<Point>(v - 1));
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip_ws();
  }
  return Permutation::from_cycles(n, cycles);
}

/// Generators of a permutation group on n points. No generators: trivial group.
struct GeneratorSet {
  std::size_t n = 0;
  std::vector<Permutation> generators;

  GeneratorSet() = default;
  explicit GeneratorSet(std::size_t degree) : n(degree) {}
  GeneratorSet(std::size_t degree, std::vector<Permutation> gens)
      : n(degree), generators(std::move(gens)) {
    for (const auto& g : generators) {
      if (g.size() != n) throw InputError("generator degree differs from group degree");
    }
  }

  bool is_trivial() const {
    return std::all_of(generators.begin(), generators.end(),
                       [](const Permutation& g) { return g.is_identity(); });
  }
};

/// Removes identities and duplicates; sorts lexicographically.
inline GeneratorSet normalized(GeneratorSet g) {
  std::erase_if(g.generators, [](const Permutation& p) { return p.is_identity(); });
  std::sort(g.generators.begin(), g.generators.end());
  g.generators.erase(std::unique(g.generators.begin(), g.generators.end()),
                     g.generators.end());
  return g;
}

/// One permutation per line in cycle notation. Blank lines and lines
/// starting with '#' are skipped. Errors name the offending line.
inline GeneratorSet parse_generator_file(std::string_view text, std::size_t n) {
  GeneratorSet out(n);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    try {
      out.generators.push_back(parse_cycles(line, n));
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (end == text.size()) break;
  }
  return out;
}

inline std::string format_generator_file(const GeneratorSet& g) {
  std::string out;
  for (const auto& p : g.generators) {
    out += format_cycles(p);
    out += '\n';
  }
  return out;
}

}  // namespace sstcuts
