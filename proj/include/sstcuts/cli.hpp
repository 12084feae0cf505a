#pragma once

// Command-line front end. `run` parses arguments, performs one command and
// returns the process exit code:
//   0 success (or TU), 1 internal error, 2 input error, 3 negative verdict,
//   4 resource cap exceeded.
// Outputs are produced only after all work succeeded, so a failing command
// leaves no partial files behind.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sstcuts/automorphism.hpp"
#include "sstcuts/errors.hpp"
#include "sstcuts/graph.hpp"
#include "sstcuts/json_io.hpp"
#include "sstcuts/presolve.hpp"
#include "sstcuts/solver.hpp"
#include "sstcuts/sst.hpp"
#include "sstcuts/tu.hpp"

namespace sstcuts::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNegative = 3;
inline constexpr int kExitResource = 4;

struct RunConfig {
  std::string command;
  std::string input;
  std::string symmetry_file;
  std::string orbit_rule = "min";
  bool stringent = false;
  std::size_t max_rounds = kDefaultMaxRounds;
  bool addition = false;
  bool fixpoint = false;
  std::string cuts;  // plain | clique | none; empty: command default
  std::string output;
  std::string json_path;
  std::uint64_t seed = 0;
  bool timing = false;
  std::vector<std::size_t> leaders;  // 1-based, optional
  // check-tu
  std::string matrix_path;
  std::string matrix_out;
  std::string method = "both";
  bool no_deletion = false;
  std::size_t max_dim = 16;
  std::size_t gh_max_dim = kGhouilaHouriMaxDim;
  // solve / bench
  bool presolve = false;
  bool brute_force = false;
  std::uint64_t node_limit = 0;
  bool no_solve = false;
  // generate
  std::string family;
  std::size_t n = 10;
  double p = 0.3;
  std::size_t k = 3;
  std::size_t size = 4;
  std::size_t depth = 3;
  std::size_t branching = 2;
  std::size_t twins = 1;
  std::vector<std::size_t> sizes;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Writes to `path`, or to `out` when path is empty or "-".
inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << content;
}

inline Graph load_graph(const RunConfig& c) {
  if (c.input.empty()) throw InputError("no input graph given");
  const std::string text = read_file(c.input);
  try {
    return parse_dimacs(text);
  } catch (const InputError& e) {
    throw InputError(c.input + ": " + e.what());
  }
}

/// Computed generators, or the symmetry file validated line by line.
inline GeneratorSet load_symmetries(const Graph& g, const RunConfig& c) {
  if (c.symmetry_file.empty()) return automorphism_generators(g);
  const std::string text = read_file(c.symmetry_file);
  GeneratorSet gens(g.num_nodes());
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string where = c.symmetry_file + " line " + std::to_string(line_no);
    Permutation p;
    try {
      p = parse_cycles(line, g.num_nodes());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    if (!is_automorphism(g, p)) {
      throw InputError(where + ": " + format_cycles(p) + " is not a weight-preserving automorphism");
    }
    gens.generators.push_back(std::move(p));
  }
  return gens;
}

inline OrbitRule orbit_rule(const RunConfig& c) {
  return c.orbit_rule == "max" ? OrbitRule::max_size : OrbitRule::min_size;
}

inline SstTable build_table(const GeneratorSet& gens, const RunConfig& c) {
  if (!c.leaders.empty()) {
    std::vector<Point> ls;
    for (auto l : c.leaders) {
      if (l == 0 || l > gens.n) throw InputError("leader " + std::to_string(l) + " out of range");
      ls.push_back(static_cast<Point>(l - 1));
    }
    return build_table_with_leaders(gens, ls, c.stringent ? TableKind::stringent : TableKind::plain);
  }
  if (c.stringent) return build_stringent_sst_table(gens, c.max_rounds, orbit_rule(c));
  return build_sst_table(gens, orbit_rule(c), c.max_rounds);
}

inline std::vector<SstCliqueCut> table_cuts(const SstTable& t, const Graph& g, const std::string& kind) {
  if (kind == "none") return {};
  if (kind == "clique") return sst_clique_cuts(t, g);
  auto plain = t.cuts();
  return as_clique_cuts(plain);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_symmetries(const RunConfig& c, std::ostream& out) {
  Graph g = load_graph(c);
  GeneratorSet gens = load_symmetries(g, c);
  emit(c.output, format_generator_file(gens), out);
  return kExitOk;
}

inline int cmd_table(const RunConfig& c, std::ostream& out) {
  Graph g = load_graph(c);
  SstTable t = build_table(load_symmetries(g, c), c);
  const bool clique = c.cuts != "plain";
  Json j = table_to_json(t, clique ? &g : nullptr);
  emit(c.json_path, dump(j), out);
  return kExitOk;
}

inline int cmd_presolve(const RunConfig& c, std::ostream& out) {
  Graph g = load_graph(c);
  SstTable t = build_table(load_symmetries(g, c), c);
  auto cuts = t.cuts();
  PresolveResult r = sst_presolve(g, cuts, c.addition, c.fixpoint);
  const std::string stats = dump(stats_to_json(r.stats));
  const std::string reduced = write_dimacs(r.reduced_graph, "reduced by SST presolve");
  if (!c.output.empty()) emit(c.output, reduced, out);
  emit(c.json_path, stats, out);
  return kExitOk;
}

inline int cmd_check_tu(const RunConfig& c, std::ostream& out) {
  ExtendedMatrix m;
  if (!c.matrix_path.empty()) {
    m.entries = parse_dense_matrix(read_file(c.matrix_path));
    std::size_t cols = m.entries.empty() ? 0 : m.entries.front().size();
    for (std::size_t j = 0; j < cols; ++j) m.columns.push_back(static_cast<NodeId>(j));
    for (std::size_t i = 0; i < m.entries.size(); ++i) m.rows.push_back({RowKind::clique, kNoNode, {}});
  } else {
    Graph g = load_graph(c);
    std::vector<SstCliqueCut> cuts;
    const std::string kind = c.cuts.empty() ? "clique" : c.cuts;
    if (kind != "none") cuts = table_cuts(build_table(load_symmetries(g, c), c), g, kind);
    m = extended_clique_matrix(g, cuts, !c.no_deletion);
  }
  const bool tagged = c.matrix_path.empty();
  std::optional<TuResult> det, gh;
  if (c.method == "both" || c.method == "det") {
    try {
      det = is_tu_determinant(m.entries, TuOptions{c.max_dim});
    } catch (const ResourceLimit& e) {
      throw ResourceLimit(std::string(e.what()) + "; use --method gh or raise --max-dim");
    }
  }
  if (c.method == "both" || c.method == "gh") gh = is_tu_ghouila_houri(m.entries, TuOptions{c.gh_max_dim});
  if (det && gh && det->totally_unimodular != gh->totally_unimodular) {
    throw ConsistencyError("TU checkers disagree");
  }
  const bool tu = det ? det->totally_unimodular : gh->totally_unimodular;
  Json j;
  j["rows"] = m.num_rows();
  j["cols"] = m.num_cols();
  j["totally_unimodular"] = tu;
  if (det) j["determinant"] = tu_result_to_json(*det, tagged ? &m : nullptr);
  if (gh) j["ghouila_houri"] = tu_result_to_json(*gh, tagged ? &m : nullptr);
  if (!c.matrix_out.empty()) emit(c.matrix_out, write_dense_matrix(m.entries), out);
  emit(c.json_path, dump(j), out);
  return tu ? kExitOk : kExitNegative;
}

inline int cmd_solve(const RunConfig& c, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Graph g = load_graph(c);
  const std::string kind = c.cuts.empty() ? "none" : c.cuts;
  std::vector<SstCliqueCut> cuts;
  std::optional<SstTable> table;
  if (kind != "none" || c.presolve) {
    table = build_table(load_symmetries(g, c), c);
    cuts = table_cuts(*table, g, kind);
  }
  auto solve = [&](const Graph& h, std::span<const SstCliqueCut> cs) {
    return c.brute_force ? brute_force_max_stable(h, cs)
                         : branch_and_bound_max_stable(h, cs, BranchAndBoundOptions{c.node_limit});
  };
  StableSetSolution s;
  if (c.presolve) {
    // The reduced graph is solved without cuts: the presolve already used
    // them, and indices change.
    PresolveResult r = sst_presolve(g, table->cuts(), c.addition, c.fixpoint);
    s = solve(r.reduced_graph, {});
    s.members = lift_solution(r, s.members);
  } else {
    s = solve(g, cuts);
  }
  Json j = solution_to_json(s);
  if (c.timing) j["wall_time_s"] = elapsed(start);
  emit(c.json_path, dump(j), out);
  return kExitOk;
}

inline int cmd_bench(const RunConfig& c, std::ostream& out) {
  namespace fs = std::filesystem;
  if (c.input.empty() || !fs::is_directory(c.input)) throw InputError("bench needs a directory of .col files");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(c.input)) {
    if (e.is_regular_file() && e.path().extension() == ".col") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  if (files.empty()) throw InputError("no .col files in " + c.input);

  std::ostringstream csv;
  csv << "instance,n,m,rounds_min,removed_min,nodes_min,edges_min,edges_plus_min,"
         "rounds_max,removed_max,nodes_max,edges_max,edges_plus_max";
  if (!c.no_solve) csv << ",value,value_presolved,values_equal,bb_nodes,bb_nodes_cuts";
  if (c.timing) csv << ",time_s";
  csv << '\n';
  // Geometric means over the six ratio columns (and time).
  std::vector<double> log_sum(7, 0.0);
  std::vector<bool> has_zero(7, false);
  auto add_log = [&](std::size_t i, double x) {
    if (x <= 0) {
      has_zero[i] = true;
    } else {
      log_sum[i] += std::log(x);
    }
  };
  for (const auto& path : files) {
    const auto start = std::chrono::steady_clock::now();
    RunConfig one = c;
    one.input = path.string();
    Graph g = load_graph(one);
    GeneratorSet gens = load_symmetries(g, one);
    csv << path.filename().string() << ',' << g.num_nodes() << ',' << g.num_edges();
    std::vector<PlainCut> selected;
    for (int rule = 0; rule < 2; ++rule) {
      one.orbit_rule = rule == 0 ? "min" : "max";
      SstTable t = build_table(gens, one);
      auto cuts = t.cuts();
      auto del = deletion_operation(g, cuts);
      PresolveStats s = reduction_stats(g, cuts, c.fixpoint);
      csv << ',' << t.rounds.size() << ',' << del.removed_nodes.size() << ',' << fixed(s.nodes) << ','
          << fixed(s.edges) << ',' << fixed(s.edges_plus);
      add_log(rule * 3 + 0, s.nodes);
      add_log(rule * 3 + 1, s.edges);
      add_log(rule * 3 + 2, s.edges_plus);
      if (one.orbit_rule == c.orbit_rule) selected = cuts;
    }
    if (!c.no_solve) {
      BranchAndBoundOptions opts{c.node_limit};
      auto raw = branch_and_bound_max_stable(g, std::span<const SstCliqueCut>{}, opts);
      auto with_cuts = branch_and_bound_max_stable(g, std::span<const PlainCut>(selected), opts);
      bool nonzero = std::all_of(g.weights().begin(), g.weights().end(), [](Weight w) { return w != 0; });
      PresolveResult r = sst_presolve(g, selected, c.addition && nonzero, c.fixpoint);
      auto reduced = branch_and_bound_max_stable(r.reduced_graph, std::span<const SstCliqueCut>{}, opts);
      csv << ',' << raw.value << ',' << reduced.value << ',' << (raw.value == reduced.value ? "true" : "false")
          << ',' << raw.nodes_explored << ',' << with_cuts.nodes_explored;
    }
    if (c.timing) {
      double t = elapsed(start);
      add_log(6, t);
      csv << ',' << fixed(t);
    }
    csv << '\n';
  }
  auto geo = [&](std::size_t i) {
    return has_zero[i] ? 0.0 : std::exp(log_sum[i] / static_cast<double>(files.size()));
  };
  csv << "geomean,,,," << ',' << fixed(geo(0)) << ',' << fixed(geo(1)) << ',' << fixed(geo(2)) << ",," << ','
      << fixed(geo(3)) << ',' << fixed(geo(4)) << ',' << fixed(geo(5));
  if (!c.no_solve) csv << ",,,,,";
  if (c.timing) csv << ',' << fixed(geo(6));
  csv << '\n';
  emit(c.output, csv.str(), out);
  return kExitOk;
}

/// Disjoint union of cliques with the given sizes.
inline Graph clique_union(const std::vector<std::size_t>& sizes) {
  std::size_t n = 0;
  for (auto s : sizes) n += s;
  if (n > 5000) throw InputError("clique union too large");
  Graph g(n);
  NodeId base = 0;
  for (auto s : sizes) {
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = i + 1; j < s; ++j) g.add_edge(static_cast<NodeId>(base + i), static_cast<NodeId>(base + j));
    }
    base += static_cast<NodeId>(s);
  }
  return g;
}

/// Comparability graph of the complete `branching`-ary tree of the given
/// depth (depth 0: a single node), each tree node blown up into a clique of
/// `twins` true twins.
inline Graph layered_tp(std::size_t depth, std::size_t branching, std::size_t twins = 1) {
  std::vector<NodeId> parent;
  // Appends a chain of `twins` forest nodes below p and returns its bottom.
  auto chain = [&](NodeId p) {
    for (std::size_t i = 0; i < twins; ++i) {
      parent.push_back(p);
      p = static_cast<NodeId>(parent.size() - 1);
    }
    return p;
  };
  std::vector<NodeId> level{chain(kNoNode)};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<NodeId> next;
    for (NodeId p : level) {
      for (std::size_t b = 0; b < branching; ++b) next.push_back(chain(p));
    }
    if (parent.size() > 5000) throw InputError("layered graph too large");
    level = std::move(next);
  }
  return graph_from_forest(parent);
}

inline int cmd_generate(const RunConfig& c, std::ostream& out) {
  Graph g;
  std::string comment = c.family + " seed " + std::to_string(c.seed);
  if (c.family == "tp") {
    g = random_tp_graph(c.seed, c.n);
  } else if (c.family == "symmetric-tp") {
    g = random_symmetric_tp_graph(c.seed, c.n);
  } else if (c.family == "gnp") {
    g = random_graph(c.seed, c.n, c.p);
  } else if (c.family == "cliques") {
    std::vector<std::size_t> sizes = c.sizes;
    if (sizes.empty()) sizes.assign(c.k, c.size);
    g = clique_union(sizes);
    comment = "union of cliques of sizes";
    for (auto s : sizes) comment += " " + std::to_string(s);
  } else if (c.family == "layered") {
    g = layered_tp(c.depth, c.branching, c.twins);
    comment = "layered TP graph, depth " + std::to_string(c.depth) + ", branching " + std::to_string(c.branching) +
              ", twins " + std::to_string(c.twins);
  } else {
    throw InputError("unknown family " + c.family);
  }
  emit(c.output, write_dimacs(g, comment), out);
  return kExitOk;
}

}  // namespace detail

/// Runs the CLI on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"SST cuts for the stable set problem: symmetries, tables, presolve, TU checks, solving"};
  app.require_subcommand(1);

  auto add_graph = [&](CLI::App* sub) { sub->add_option("graph", c.input, "DIMACS .col file")->required(); };
  auto add_symmetry = [&](CLI::App* sub) {
    sub->add_option("--symmetry-file", c.symmetry_file, "use and validate generators from this file");
  };
  auto add_table = [&](CLI::App* sub) {
    add_symmetry(sub);
    sub->add_option("--orbit-rule", c.orbit_rule, "orbit choice per round")
        ->check(CLI::IsMember({"min", "max"}));
    sub->add_flag("--stringent", c.stringent, "build a stringent table");
    sub->add_option("--max-rounds", c.max_rounds, "maximum number of rounds")->check(CLI::PositiveNumber);
    sub->add_option("--leaders", c.leaders, "explicit 1-based leaders, in order")->delimiter(',');
  };
  auto add_json = [&](CLI::App* sub) { sub->add_option("--json", c.json_path, "write JSON here instead of stdout"); };

  auto* sym = app.add_subcommand("symmetries", "compute or validate automorphism generators");
  add_graph(sym);
  add_symmetry(sym);
  sym->add_option("-o,--output", c.output, "generator file (default stdout)");

  auto* tab = app.add_subcommand("table", "build an SST table");
  add_graph(tab);
  add_table(tab);
  add_json(tab);
  tab->add_option("--cuts", c.cuts, "include greedy cover cliques unless plain")
      ->check(CLI::IsMember({"plain", "clique"}));

  auto* pre = app.add_subcommand("presolve", "deletion (and addition) reductions; prints stats JSON");
  add_graph(pre);
  add_table(pre);
  add_json(pre);
  pre->add_flag("--addition", c.addition, "also apply the addition operation");
  pre->add_flag("--fixpoint", c.fixpoint, "repeat passes until nothing changes");
  pre->add_option("-o,--output", c.output, "write the reduced graph here");

  auto* tu = app.add_subcommand("check-tu", "total unimodularity of the extended clique matrix");
  auto* tu_graph = tu->add_option("graph", c.input, "DIMACS .col file");
  tu->add_option("--matrix", c.matrix_path, "check a dense text matrix instead")->excludes(tu_graph);
  add_table(tu);
  add_json(tu);
  tu->add_option("--cuts", c.cuts, "cut rows (default clique)")->check(CLI::IsMember({"plain", "clique", "none"}));
  tu->add_flag("--no-deletion", c.no_deletion, "keep columns of deletable followers");
  tu->add_option("--method", c.method, "checker")->check(CLI::IsMember({"both", "det", "gh"}));
  tu->add_option("--max-dim", c.max_dim, "determinant checker cap on min(rows, cols)");
  tu->add_option("--gh-max-dim", c.gh_max_dim, "Ghouila-Houri cap on min(rows, cols)");
  tu->add_option("--matrix-out", c.matrix_out, "write the matrix as dense text");

  auto* sol = app.add_subcommand("solve", "maximum-weight stable set");
  add_graph(sol);
  add_table(sol);
  add_json(sol);
  sol->add_option("--cuts", c.cuts, "enforce SST cuts (default none)")
      ->check(CLI::IsMember({"plain", "clique", "none"}));
  sol->add_flag("--presolve", c.presolve, "solve the presolved graph and lift the solution");
  sol->add_flag("--addition", c.addition, "use the addition operation when presolving");
  sol->add_flag("--fixpoint", c.fixpoint, "presolve to a fixpoint");
  sol->add_flag("--brute-force", c.brute_force, "exhaustive search (at most 25 nodes)");
  sol->add_option("--node-limit", c.node_limit, "branch-and-bound node budget (0: none)");
  sol->add_flag("--timing", c.timing, "report wall time");

  auto* ben = app.add_subcommand("bench", "per-instance reduction statistics for a directory of .col files");
  ben->add_option("dir", c.input, "directory")->required();
  add_table(ben);
  ben->add_flag("--addition", c.addition, "use addition in the presolved solve");
  ben->add_flag("--fixpoint", c.fixpoint, "presolve to a fixpoint");
  ben->add_flag("--no-solve", c.no_solve, "skip the solver columns");
  ben->add_option("--node-limit", c.node_limit, "branch-and-bound node budget (0: none)");
  ben->add_flag("--timing", c.timing, "add a time column");
  ben->add_option("-o,--output", c.output, "CSV file (default stdout)");

  auto* gen = app.add_subcommand("generate", "write a synthetic instance");
  gen->add_option("family", c.family, "tp | symmetric-tp | gnp | cliques | layered")
      ->required()
      ->check(CLI::IsMember({"tp", "symmetric-tp", "gnp", "cliques", "layered"}));
  gen->add_option("--seed", c.seed, "random seed");
  gen->add_option("--n", c.n, "nodes (tp, gnp) or node cap (symmetric-tp)")->check(CLI::PositiveNumber);
  gen->add_option("--p", c.p, "edge probability (gnp)")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--k", c.k, "number of cliques")->check(CLI::PositiveNumber);
  gen->add_option("--size", c.size, "clique size")->check(CLI::PositiveNumber);
  gen->add_option("--sizes", c.sizes, "comma-separated clique sizes (overrides --k/--size)")->delimiter(',');
  gen->add_option("--depth", c.depth, "tree depth (layered)");
  gen->add_option("--branching", c.branching, "children per node (layered)")->check(CLI::PositiveNumber);
  gen->add_option("--twins", c.twins, "clique size per tree node (layered)")->check(CLI::PositiveNumber);
  gen->add_option("-o,--output", c.output, "DIMACS file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  try {
    if (sym->parsed()) return detail::cmd_symmetries(c, out);
    if (tab->parsed()) return detail::cmd_table(c, out);
    if (pre->parsed()) return detail::cmd_presolve(c, out);
    if (tu->parsed()) {
      if (c.input.empty() && c.matrix_path.empty()) throw InputError("check-tu needs a graph or --matrix");
      return detail::cmd_check_tu(c, out);
    }
    if (sol->parsed()) return detail::cmd_solve(c, out);
    if (ben->parsed()) return detail::cmd_bench(c, out);
    if (gen->parsed()) return detail::cmd_generate(c, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace sstcuts::cli
