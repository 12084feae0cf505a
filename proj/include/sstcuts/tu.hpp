#pragma once

// Total unimodularity of clique matrices extended by SST cut rows: matrix
// construction, two exact checkers and the contracted auxiliary graph used
// for trivially perfect graphs.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "sstcuts/errors.hpp"
#include "sstcuts/graph.hpp"
#include "sstcuts/presolve.hpp"
#include "sstcuts/sst.hpp"
#include "sstcuts/tp_forest.hpp"

namespace sstcuts {

using IntMatrix = std::vector<std::vector<int>>;

enum class RowKind { clique, cut };

struct RowTag {
  RowKind kind = RowKind::clique;
  NodeId leader = kNoNode;  // cut rows only
  NodeSet nodes;            // clique members, or followers of a cut
};

/// Rows are cliques then cuts (leader -1, followers +1); columns are the
/// original node ids that survive.
struct ExtendedMatrix {
  IntMatrix entries;
  std::vector<RowTag> rows;
  std::vector<NodeId> columns;

  std::size_t num_rows() const { return entries.size(); }
  std::size_t num_cols() const { return columns.size(); }
};

/// M(G) extended by one row per cut. With `apply_deletion` the columns of
/// nodes removed by the deletion operation are dropped, together with rows
/// left empty.
inline ExtendedMatrix extended_clique_matrix(const Graph& g, std::span<const SstCliqueCut> cuts,
                                             bool apply_deletion) {
  const std::size_t n = g.num_nodes();
  for (const auto& c : cuts) {
    if (c.leader >= n) throw InputError("cut index out of range");
    for (NodeId f : c.clique) {
      if (f >= n) throw InputError("cut index out of range");
    }
  }
  std::vector<bool> keep(n, true);
  if (apply_deletion) {
    auto plain = expand_clique_cuts(cuts);
    for (NodeId v : deletion_operation(g, plain).removed_nodes) keep[v] = false;
  }
  ExtendedMatrix m;
  std::vector<std::size_t> col_of(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (keep[v]) {
      col_of[v] = m.columns.size();
      m.columns.push_back(v);
    }
  }
  auto add_row = [&](RowTag tag, const std::vector<std::pair<NodeId, int>>& cells) {
    std::vector<int> row(m.columns.size(), 0);
    bool nonzero = false;
    for (auto [v, x] : cells) {
      if (!keep[v]) continue;
      row[col_of[v]] = x;
      nonzero = true;
    }
    if (!nonzero) return;
    m.entries.push_back(std::move(row));
    m.rows.push_back(std::move(tag));
  };
  // Root-leaf paths give the cliques of TP graphs without enumeration.
  auto forest = detail::try_forest(g);
  const auto cliques = forest ? forest_cliques(*forest) : maximal_cliques(g);
  for (const auto& c : cliques) {
    std::vector<std::pair<NodeId, int>> cells;
    for (NodeId v : c) cells.emplace_back(v, 1);
    add_row({RowKind::clique, kNoNode, c}, cells);
  }
  for (const auto& c : cuts) {
    NodeSet followers;
    for (NodeId f : c.clique) {
      if (keep[f]) followers.push_back(f);
    }
    if (followers.empty()) continue;
    std::sort(followers.begin(), followers.end());
    std::vector<std::pair<NodeId, int>> cells{{c.leader, -1}};
    for (NodeId f : followers) cells.emplace_back(f, 1);
    add_row({RowKind::cut, c.leader, followers}, cells);
  }
  return m;
}

inline ExtendedMatrix extended_clique_matrix(const Graph& g, std::span<const PlainCut> cuts, bool apply_deletion) {
  auto cc = as_clique_cuts(cuts);
  return extended_clique_matrix(g, std::span<const SstCliqueCut>(cc), apply_deletion);
}

// ---------------------------------------------------------------------------

/// Square submatrix with determinant outside {0, +-1}. Indices refer to the
/// matrix passed to the checker.
struct TuWitness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::int64_t det = 0;
};

struct TuResult {
  bool totally_unimodular = true;
  std::optional<TuWitness> witness;
  std::uint64_t work = 0;  // submatrices or row subsets examined
};

struct TuOptions {
  std::size_t max_dim = 16;  // cap on min(rows, cols)
};

inline constexpr std::size_t kGhouilaHouriMaxDim = 24;

/// Exact integer determinant (fraction-free elimination).
inline std::int64_t bareiss_determinant(IntMatrix a) {
  const std::size_t k = a.size();
  if (k == 0) return 1;
  std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i].size() != k) throw InputError("determinant of a non-square matrix");
    for (std::size_t j = 0; j < k; ++j) m[i][j] = a[i][j];
  }
  std::int64_t sign = 1, prev = 1;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (m[p][p] == 0) {
      std::size_t s = p + 1;
      while (s < k && m[s][p] == 0) ++s;
      if (s == k) return 0;
      std::swap(m[p], m[s]);
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j) {
        m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
      }
    }
    prev = m[p][p];
  }
  return sign * m[k - 1][k - 1];
}

inline IntMatrix submatrix(const IntMatrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  IntMatrix out;
  for (std::size_t r : rows) {
    std::vector<int> row;
    for (std::size_t c : cols) row.push_back(a[r][c]);
    out.push_back(std::move(row));
  }
  return out;
}

namespace detail {

inline std::size_t matrix_cols(const IntMatrix& a) {
  std::size_t k = a.empty() ? 0 : a.front().size();
  for (const auto& r : a) {
    if (r.size() != k) throw InputError("matrix rows have different lengths");
  }
  return k;
}

inline std::optional<TuWitness> entry_witness(const IntMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (std::abs(a[i][j]) > 1) return TuWitness{{i}, {j}, a[i][j]};
    }
  }
  return std::nullopt;
}

/// Enumerates every square submatrix with determinant +-1 exactly once by
/// reverse search over unimodular pivots. Rows are added in increasing
/// order; a column c may extend (R, C) only if c is the smallest column of
/// C + c whose removal leaves a nonsingular submatrix on R. The tableau
/// then holds, for rows outside R, the ratios det(A[R+r, C+c]) / det(A[R, C]).
class PivotSearch {
 public:
  PivotSearch(const IntMatrix& a, std::size_t cols) : a_(a), m_(a.size()), k_(cols) {}

  TuResult run() {
    TuResult out;
    if (auto w = entry_witness(a_)) {
      out.totally_unimodular = false;
      out.witness = std::move(w);
      return out;
    }
    const std::size_t depth = std::min(m_, k_) + 1;
    levels_.assign(depth, std::vector<std::int64_t>(m_ * k_, 0));
    allowed_.assign(depth, std::vector<char>(k_, 0));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) levels_[0][i * k_ + j] = a_[i][j];
    }
    prow_.assign(k_, kNone);
    dfs(0, 0);
    out.work = visited_;
    if (best_) {
      out.totally_unimodular = false;
      best_->det = bareiss_determinant(submatrix(a_, best_->rows, best_->cols));
      out.witness = std::move(best_);
    }
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void offer(std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    if (!best_ || rows.size() < best_->rows.size() ||
        (rows.size() == best_->rows.size() && std::tie(rows, cols) < std::tie(best_->rows, best_->cols))) {
      best_ = TuWitness{std::move(rows), std::move(cols), 0};
    }
  }

  // Level d holds the tableau after d pivots. Only pivot rows and rows at
  // or after `first` are kept current; the others are never read again.
  void dfs(std::size_t d, std::size_t first) {
    ++visited_;
    const std::int64_t* t = levels_[d].data();
    if (!best_ || rows_.size() + 1 <= best_->rows.size()) {
      for (std::size_t r = first; r < m_; ++r) {
        for (std::size_t c = 0; c < k_; ++c) {
          if (prow_[c] == kNone && std::llabs(t[r * k_ + c]) > 1) {
            auto wr = rows_, wc = cols_;
            wr.push_back(r);
            wc.push_back(c);
            offer(std::move(wr), std::move(wc));
          }
        }
      }
    }
    if (best_ && rows_.size() + 2 > best_->rows.size()) return;
    if (d + 1 >= levels_.size()) return;
    // Column c extends canonically if no smaller pivot column could be
    // exchanged for it.
    auto& allowed = allowed_[d];
    for (std::size_t c = 0; c < k_; ++c) {
      bool ok = prow_[c] == kNone;
      for (std::size_t c2 = 0; c2 < c && ok; ++c2) {
        if (prow_[c2] != kNone && t[prow_[c2] * k_ + c] != 0) ok = false;
      }
      allowed[c] = ok;
    }
    for (std::size_t r = first; r < m_; ++r) {
      for (std::size_t c = 0; c < k_; ++c) {
        if (!allowed[c] || std::llabs(t[r * k_ + c]) != 1) continue;
        pivot_into(d, r, c);
        rows_.push_back(r);
        cols_.push_back(c);
        prow_[c] = r;
        dfs(d + 1, r + 1);
        prow_[c] = kNone;
        rows_.pop_back();
        cols_.pop_back();
      }
    }
  }

  void pivot_into(std::size_t d, std::size_t r, std::size_t c) {
    const std::int64_t* src = levels_[d].data();
    std::int64_t* dst = levels_[d + 1].data();
    const std::int64_t p = src[r * k_ + c];  // +-1
    std::int64_t* pr = dst + r * k_;
    for (std::size_t j = 0; j < k_; ++j) pr[j] = src[r * k_ + j] * p;
    auto update = [&](std::size_t i) {
      const std::int64_t* si = src + i * k_;
      std::int64_t* di = dst + i * k_;
      const std::int64_t f = si[c];
      if (f == 0) {
        std::copy(si, si + k_, di);
      } else {
        for (std::size_t j = 0; j < k_; ++j) di[j] = si[j] - f * pr[j];
      }
    };
    for (std::size_t i : rows_) update(i);
    for (std::size_t i = r + 1; i < m_; ++i) update(i);
  }

  const IntMatrix& a_;
  std::size_t m_, k_;
  std::vector<std::vector<std::int64_t>> levels_;
  std::vector<std::vector<char>> allowed_;
  std::vector<std::size_t> rows_, cols_, prow_;
  std::uint64_t visited_ = 0;
  std::optional<TuWitness> best_;
};

inline IntMatrix transpose(const IntMatrix& a, std::size_t cols) {
  IntMatrix t(cols, std::vector<int>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  }
  return t;
}

inline void check_dims(std::size_t rows, std::size_t cols, const TuOptions& opts) {
  if (std::min(rows, cols) > opts.max_dim) {
    throw ResourceLimit("TU check capped at min(rows, cols) <= " + std::to_string(opts.max_dim) + ", got " +
                        std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace detail

/// Determinant-based check over all square submatrices. On failure the
/// witness is a smallest violating submatrix, lexicographically first by
/// (rows, cols).
inline TuResult is_tu_determinant(const IntMatrix& a, TuOptions opts = {}) {
  const std::size_t k = detail::matrix_cols(a);
  detail::check_dims(a.size(), k, opts);
  return detail::PivotSearch(a, k).run();
}

/// Ghouila-Houri: every subset of rows must admit signs making each column
/// sum lie in {0, +-1}. Subsets are taken from the smaller dimension (the
/// matrix is transposed when it has fewer columns than rows) in order of
/// increasing size; the witness rows/cols hold the first unbalanceable
/// subset on the side that was enumerated.
inline TuResult is_tu_ghouila_houri(const IntMatrix& a, TuOptions opts = {kGhouilaHouriMaxDim}) {
  const std::size_t k = detail::matrix_cols(a);
  detail::check_dims(a.size(), k, opts);
  TuResult out;
  if (auto w = detail::entry_witness(a)) {
    out.totally_unimodular = false;
    out.witness = std::move(w);
    return out;
  }
  const bool flip = k < a.size();
  const IntMatrix b = flip ? detail::transpose(a, k) : a;
  const std::size_t m = b.size(), cols = flip ? a.size() : k;

  std::vector<int> sums(cols, 0);
  std::vector<std::size_t> subset;
  // Last position in `subset` touching each column, for early checks.
  std::vector<std::size_t> last(cols);
  auto balanced = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == subset.size()) return true;
    const auto& row = b[subset[pos]];
    for (int s : {1, -1}) {
      if (pos == 0 && s == -1) break;  // global sign symmetry
      bool ok = true;
      for (std::size_t j = 0; j < cols; ++j) {
        sums[j] += s * row[j];
        if (last[j] == pos && std::abs(sums[j]) > 1) ok = false;
      }
      if (ok && self(self, pos + 1)) {
        for (std::size_t j = 0; j < cols; ++j) sums[j] -= s * row[j];
        return true;
      }
      for (std::size_t j = 0; j < cols; ++j) sums[j] -= s * row[j];
    }
    return false;
  };
  for (std::size_t size = 1; size <= m; ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      subset = idx;
      ++out.work;
      std::fill(last.begin(), last.end(), static_cast<std::size_t>(-1));
      for (std::size_t p = 0; p < size; ++p) {
        for (std::size_t j = 0; j < cols; ++j) {
          if (b[subset[p]][j] != 0) last[j] = p;
        }
      }
      if (!balanced(balanced, 0)) {
        out.totally_unimodular = false;
        TuWitness w;
        if (flip) {
          w.cols = subset;
        } else {
          w.rows = subset;
        }
        out.witness = std::move(w);
        return out;
      }
      // Next combination.
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == m - size + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Graph obtained from a TP graph by contracting every chain met by a table
/// orbit. Chains sharing a node are merged; each class is represented by its
/// earliest leader, or its smallest node if it holds no leader.
struct AuxiliaryGraph {
  Graph graph;
  std::vector<NodeId> class_of;       // original node -> new node
  std::vector<NodeSet> members;       // new node -> original nodes
  std::vector<NodeId> representative;  // new node -> original representative
  std::vector<PlainCut> cuts;         // simple cuts in new indices
};

inline AuxiliaryGraph auxiliary_graph(const Graph& g, const SstTable& t) {
  if (t.n != g.num_nodes()) throw InputError("table and graph sizes differ");
  const std::size_t n = g.num_nodes();
  const ForestRep f = forest_representation(g);
  std::vector<NodeId> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](NodeId v) {
    while (uf[v] != v) v = uf[v] = uf[uf[v]];
    return v;
  };
  for (const auto& r : t.rounds) {
    for (const auto& chain : chain_decomposition(f, r.orbit.members)) {
      for (std::size_t i = 1; i < chain.size(); ++i) uf[find(chain[i])] = find(chain[0]);
    }
  }
  std::vector<NodeId> rep(n, kNoNode);  // by union-find root
  for (const auto& r : t.rounds) {
    NodeId root = find(r.leader);
    if (rep[root] == kNoNode) rep[root] = r.leader;
  }
  for (NodeId v = 0; v < n; ++v) {
    NodeId root = find(v);
    if (rep[root] == kNoNode) rep[root] = v;  // smallest member, scanning upwards
  }
  AuxiliaryGraph out;
  NodeSet reps;
  for (NodeId v = 0; v < n; ++v) {
    if (find(v) == v) reps.push_back(rep[v]);
  }
  std::sort(reps.begin(), reps.end());
  std::vector<NodeId> new_of_rep(n, kNoNode);
  for (NodeId i = 0; i < reps.size(); ++i) new_of_rep[reps[i]] = i;
  out.class_of.resize(n);
  out.members.resize(reps.size());
  for (NodeId v = 0; v < n; ++v) {
    out.class_of[v] = new_of_rep[rep[find(v)]];
    out.members[out.class_of[v]].push_back(v);
  }
  out.representative = reps;
  auto sub = induced_subgraph(g, reps);
  out.graph = std::move(sub.graph);
  for (const auto& c : t.cuts()) {
    PlainCut m{out.class_of[c.leader], out.class_of[c.follower]};
    if (m.leader == m.follower) continue;
    if (std::find(out.cuts.begin(), out.cuts.end(), m) == out.cuts.end()) out.cuts.push_back(m);
  }
  return out;
}

}  // namespace sstcuts
