#pragma once

// JSON and text serialisation of tables, statistics, solutions, matrices
// and TU verdicts. Node indices are written 1-based.

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sstcuts/errors.hpp"
#include "sstcuts/graph.hpp"
#include "sstcuts/presolve.hpp"
#include "sstcuts/solver.hpp"
#include "sstcuts/sst.hpp"
#include "sstcuts/tu.hpp"

namespace sstcuts {

using Json = nlohmann::ordered_json;

inline Json one_based(std::span<const NodeId> nodes) {
  Json a = Json::array();
  for (NodeId v : nodes) a.push_back(v + 1);
  return a;
}

inline Json clique_list_json(const std::vector<NodeSet>& cliques) {
  Json a = Json::array();
  for (const auto& c : cliques) a.push_back(one_based(c));
  return a;
}

/// Rounds in order; with a graph, each round also lists the greedy cover
/// cliques of its followers.
inline Json table_to_json(const SstTable& t, const Graph* graph = nullptr) {
  Json j;
  j["n"] = t.n;
  j["kind"] = t.kind == TableKind::stringent ? "stringent" : "plain";
  Json rounds = Json::array();
  for (const auto& r : t.rounds) {
    Json jr;
    jr["leader"] = r.leader + 1;
    jr["orbit"] = one_based(r.orbit.members);
    jr["followers"] = one_based(r.followers);
    if (graph) jr["cliques"] = clique_list_json(greedy_clique_cover(*graph, r.followers));
    rounds.push_back(std::move(jr));
  }
  j["rounds"] = std::move(rounds);
  return j;
}

inline Json stats_to_json(const PresolveStats& s) {
  Json j;
  j["nodes"] = s.nodes;
  j["edges"] = s.edges;
  j["edges_plus"] = s.edges_plus;
  return j;
}

inline Json solution_to_json(const StableSetSolution& s) {
  Json j;
  j["value"] = s.value;
  j["members"] = one_based(s.members);
  j["nodes_explored"] = s.nodes_explored;
  return j;
}

// ---------------------------------------------------------------------------
// Matrices

/// Rows of space-separated integers; blank lines and '#' comments skipped.
inline IntMatrix parse_dense_matrix(std::string_view text) {
  IntMatrix m;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      int x = 0;
      try {
        x = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw InputError("line " + std::to_string(line_no) + ": bad entry '" + tok + "'");
      row.push_back(x);
    }
    if (!m.empty() && row.size() != m.front().size()) {
      throw InputError("line " + std::to_string(line_no) + ": row length differs from the first row");
    }
    m.push_back(std::move(row));
  }
  return m;
}

inline std::string write_dense_matrix(const IntMatrix& m) {
  std::string out;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(row[j]);
    }
    out += '\n';
  }
  return out;
}

inline Json row_tag_json(const RowTag& tag) {
  Json j;
  if (tag.kind == RowKind::clique) {
    j["type"] = "clique";
    j["nodes"] = one_based(tag.nodes);
  } else {
    j["type"] = "cut";
    j["leader"] = tag.leader + 1;
    j["followers"] = one_based(tag.nodes);
  }
  return j;
}

inline Json matrix_to_json(const ExtendedMatrix& m) {
  Json j;
  j["columns"] = one_based(m.columns);
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.num_rows(); ++i) {
    Json r = row_tag_json(m.rows[i]);
    r["entries"] = m.entries[i];
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

/// Verdict with the witness named by row tags and original node ids when a
/// tagged matrix is given; plain 1-based indices otherwise.
inline Json tu_result_to_json(const TuResult& r, const ExtendedMatrix* tags = nullptr) {
  Json j;
  j["totally_unimodular"] = r.totally_unimodular;
  if (r.witness) {
    Json w;
    Json rows = Json::array(), cols = Json::array();
    for (auto i : r.witness->rows) rows.push_back(tags ? row_tag_json(tags->rows[i]) : Json(i + 1));
    for (auto c : r.witness->cols) cols.push_back(tags ? Json(tags->columns[c] + 1) : Json(c + 1));
    // The Ghouila-Houri witness is a row (or column) subset only.
    if (!rows.empty()) w["rows"] = std::move(rows);
    if (!cols.empty()) w["cols"] = std::move(cols);
    if (!r.witness->rows.empty() && !r.witness->cols.empty()) w["det"] = r.witness->det;
    j["witness"] = std::move(w);
  }
  return j;
}

}  // namespace sstcuts
