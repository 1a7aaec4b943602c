// blockline: order metro-style lines on embedded graphs with few block
// crossings. Subcommands cover validation, the solvers, exact oracles,
// bounds, instance generation, verification and SVG rendering.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "blockline/bench.hpp"
#include "blockline/generators.hpp"
#include "blockline/graph_solver.hpp"
#include "blockline/io.hpp"
#include "blockline/oracle.hpp"
#include "blockline/ordering.hpp"
#include "blockline/path_solver.hpp"
#include "blockline/permutation.hpp"
#include "blockline/render.hpp"
#include "blockline/tree_solver.hpp"
#include "blockline/verify.hpp"

using namespace blockline;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVerification = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUsage = 4;

bool g_records = false;

int exit_code_for(Code c) {
  switch (c) {
    case Code::NON_SIMPLE_LINE:
    case Code::TERMINAL_DEGREE:
    case Code::SHARED_TERMINAL:
    case Code::NON_PATH_INTERSECTION:
    case Code::BAD_ROTATION:
    case Code::NOT_A_PATH:
    case Code::BAD_TERMINAL_ORDER:
    case Code::NOT_A_TREE:
    case Code::NOT_UPWARD:
      return kExitValidation;
    case Code::BUDGET_EXCEEDED:
      return kExitBudget;
    default:
      return kExitUsage;
  }
}

void emit_error(Code code, const std::string& detail) {
  if (g_records)
    std::cout << "error code=" << code_name(code) << " detail=\"" << detail << "\"\n";
  else
    std::cout << "error: " << code_name(code) << ": " << detail << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Code::PARSE_ERROR, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Code::PARSE_ERROR, "cannot write " + path);
  out << content;
}

Instance load_instance(const std::string& path) {
  InstanceDoc doc = parse_instance(read_file(path));
  ValidationResult res = validate_instance(doc);
  if (!res.ok()) {
    for (const ValidationIssue& i : res.issues) emit_error(i.code, i.detail);
    throw CLI::RuntimeError(kExitValidation);
  }
  return *std::move(res.instance);
}

/// Whitespace-separated integers, or nothing if the text is not a permutation.
std::optional<Permutation> parse_permutation(const std::string& text) {
  std::istringstream in(text);
  Permutation p;
  int v;
  while (in >> v) p.elems.push_back(v);
  if (!in.eof() || p.elems.empty() || !p.valid()) return std::nullopt;
  return p;
}

void print_report(const Instance& inst, const CrossingReport& r) {
  if (g_records) {
    std::cout << "report block_crossings=" << r.block_crossings
              << " pairwise_crossings=" << r.pairwise_crossings
              << " consistent=" << (r.consistent ? "true" : "false")
              << " monotone=" << (r.monotone ? "true" : "false") << "\n";
    for (const auto& [e, t] : r.per_edge)
      if (t > 0) std::cout << "edge id=" << inst.edge_id(e) << " crossings=" << t << "\n";
  } else {
    std::cout << "block crossings:    " << r.block_crossings << "\n";
    std::cout << "pairwise crossings: " << r.pairwise_crossings << "\n";
    std::cout << "consistent:         " << (r.consistent ? "yes" : "no") << "\n";
    std::cout << "monotone:           " << (r.monotone ? "yes" : "no") << "\n";
    for (const auto& [e, t] : r.per_edge)
      if (t > 0) std::cout << "  " << inst.edge_id(e) << ": " << t << "\n";
  }
}

/// Greedy single-edge sorter for instances whose skeleton is one busy edge.
Solution solve_single_edge(const Instance& inst) {
  int busy = -1;
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (inst.edge_lines[e].size() >= 2) {
      if (busy >= 0)
        throw Error(Code::INVALID_PARAMS, "edge algorithm expects a single busy edge; use path or graph");
      busy = e;
    }
  }
  Solution sol;
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (inst.edge_lines[e].empty() || e == busy) continue;
    EdgeSolution es;
    es.edge = e;
    es.initial_order = inst.edge_lines[e];
    sol.edges[e] = es;
  }
  if (busy < 0) return sol;
  auto lookup = [&](int, int) { return busy; };
  auto [u, v] = inst.edge_ends[busy];
  std::vector<int> sigma = ordering::required_end_order(inst, busy, u, inst.edge_lines[busy], lookup);
  std::vector<int> tau = ordering::required_end_order(inst, busy, v, inst.edge_lines[busy], lookup);
  std::vector<int> target(tau.rbegin(), tau.rend());
  std::map<int, int> tpos;
  for (std::size_t i = 0; i < target.size(); ++i) tpos[target[i]] = static_cast<int>(i) + 1;
  Permutation rel;
  for (int l : sigma) rel.elems.push_back(tpos.at(l));
  EdgeSolution es;
  es.edge = busy;
  es.initial_order = sigma;
  es.moves = greedy_sort_monotone(rel);
  sol.edges[busy] = es;
  return sol;
}

std::string auto_algorithm(const Instance& inst) {
  try {
    classify_path(inst);
    return "path";
  } catch (const Error&) {
  }
  try {
    treedetail::require_forest(inst);
    return "tree";
  } catch (const Error&) {
  }
  return "graph";
}

/// Monotone lower bound for an instance: per busy edge, the bound of the
/// permutation between its forced end orders. Summing is sound when every
/// line pair shares at most one edge; otherwise the largest edge bound holds.
long instance_bound(const Instance& inst, bool& summed) {
  summed = true;
  for (int a = 0; a < inst.num_lines() && summed; ++a)
    for (int b = a + 1; b < inst.num_lines() && summed; ++b)
      if (inst.shared_edges(a, b).size() > 1) summed = false;
  long total = 0, best = 0;
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (inst.edge_lines[e].size() < 2) continue;
    auto lookup = [&](int, int) { return e; };
    auto [u, v] = inst.edge_ends[e];
    std::vector<int> sigma = ordering::required_end_order(inst, e, u, inst.edge_lines[e], lookup);
    std::vector<int> tau = ordering::required_end_order(inst, e, v, inst.edge_lines[e], lookup);
    std::vector<int> target(tau.rbegin(), tau.rend());
    std::map<int, int> tpos;
    for (std::size_t i = 0; i < target.size(); ++i) tpos[target[i]] = static_cast<int>(i) + 1;
    Permutation rel;
    for (int l : sigma) rel.elems.push_back(tpos.at(l));
    long lb = lower_bound_monotone(rel);
    total += lb;
    best = std::max(best, lb);
  }
  return summed ? total : best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"block crossing minimization for lines on embedded graphs"};
  app.require_subcommand(1);
  std::string format = "plain";
  app.add_option("--format", format, "output style")->check(CLI::IsMember({"plain", "records"}));

  // validate
  std::string validate_path;
  CLI::App* cmd_validate = app.add_subcommand("validate", "check the instance invariants");
  cmd_validate->add_option("instance", validate_path)->required();

  // solve
  std::string solve_path, solve_out, solve_start_edge, solve_edge_order = "id";
  std::string solve_algorithm = "auto";
  CLI::App* cmd_solve = app.add_subcommand("solve", "order the lines of an instance");
  cmd_solve->add_option("instance", solve_path)->required();
  cmd_solve->add_option("--algorithm", solve_algorithm, "solver to run")
      ->check(CLI::IsMember({"auto", "edge", "path", "path-monotone", "tree", "upward", "graph"}));
  cmd_solve->add_option("-o,--output", solve_out, "solution file (default: <instance>.sol.json)");
  cmd_solve->add_option("--start-edge", solve_start_edge, "tree solver start edge id");
  cmd_solve->add_option("--edge-order", solve_edge_order, "graph solver edge order")
      ->check(CLI::IsMember({"id", "input"}));

  // bound
  std::string bound_arg;
  CLI::App* cmd_bound = app.add_subcommand("bound", "monotone lower bound of a permutation or instance");
  cmd_bound->add_option("input", bound_arg, "instance file or quoted permutation")->required();

  // verify
  std::string verify_inst, verify_sol;
  bool verify_monotone_flag = false;
  CLI::App* cmd_verify = app.add_subcommand("verify", "check a solution against an instance");
  cmd_verify->add_option("instance", verify_inst)->required();
  cmd_verify->add_option("solution", verify_sol)->required();
  cmd_verify->add_flag("--monotone", verify_monotone_flag, "also require monotonicity");

  // oracle
  std::string oracle_arg;
  bool oracle_monotone = false;
  CLI::App* cmd_oracle = app.add_subcommand("oracle", "exact optimum by exhaustive search");
  cmd_oracle->add_option("input", oracle_arg, "instance file or quoted permutation")->required();
  cmd_oracle->add_flag("--monotone", oracle_monotone);

  // generate
  std::string gen_kind = "path", gen_out, gen_perm;
  int gen_lines = 4, gen_length = 3, gen_vertices = 6, gen_extra = 2, gen_q = 2;
  std::uint64_t gen_seed = 1;
  CLI::App* cmd_gen = app.add_subcommand("generate", "write a seeded instance");
  cmd_gen->add_option("--kind", gen_kind)
      ->check(CLI::IsMember({"edge", "path", "tree", "upward", "graph", "worstcase"}));
  cmd_gen->add_option("--lines", gen_lines);
  cmd_gen->add_option("--length", gen_length);
  cmd_gen->add_option("--vertices", gen_vertices);
  cmd_gen->add_option("--extra-edges", gen_extra);
  cmd_gen->add_option("--q", gen_q, "projective order for worstcase");
  cmd_gen->add_option("--perm", gen_perm, "explicit permutation for the edge kind");
  cmd_gen->add_option("--seed", gen_seed);
  cmd_gen->add_option("-o,--output", gen_out, "instance file (default stdout)");

  // render
  std::string render_inst, render_sol, render_out;
  double render_spacing = 7;
  int render_palette = 0;
  CLI::App* cmd_render = app.add_subcommand("render", "draw an instance (and solution) as SVG");
  cmd_render->add_option("instance", render_inst)->required();
  cmd_render->add_option("solution", render_sol);
  cmd_render->add_option("-o,--output", render_out)->required();
  cmd_render->add_option("--strand-spacing", render_spacing);
  cmd_render->add_option("--palette-seed", render_palette);

  // bench
  CLI::App* cmd_bench = app.add_subcommand("bench", "run the acceptance checks and print a table");

  for (CLI::App* sub : {cmd_validate, cmd_solve, cmd_bound, cmd_verify, cmd_oracle, cmd_gen,
                        cmd_render, cmd_bench})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  g_records = format == "records";

  try {
    if (*cmd_validate) {
      Instance inst = load_instance(validate_path);
      if (g_records)
        std::cout << "valid vertices=" << inst.num_vertices() << " edges=" << inst.num_edges()
                  << " lines=" << inst.num_lines() << "\n";
      else
        std::cout << "valid: " << inst.num_vertices() << " vertices, " << inst.num_edges()
                  << " edges, " << inst.num_lines() << " lines\n";
      return kExitOk;
    }

    if (*cmd_solve) {
      Instance inst = load_instance(solve_path);
      std::string algo = solve_algorithm == "auto" ? auto_algorithm(inst) : solve_algorithm;
      Solution sol;
      if (algo == "edge") {
        sol = solve_single_edge(inst);
      } else if (algo == "path") {
        sol = solve_path_bcm(inst);
      } else if (algo == "path-monotone") {
        sol = solve_path_mbcm(inst);
      } else if (algo == "tree") {
        TreeSolveOptions opts;
        opts.start_edge = solve_start_edge;
        sol = solve_tree_insertion(inst, opts);
      } else if (algo == "upward") {
        sol = solve_upward_mbcm(make_upward(inst));
      } else {
        GraphSolveOptions opts;
        opts.edge_order = solve_edge_order == "input" ? EdgeOrder::ByInput : EdgeOrder::ById;
        sol = solve_graph(inst, opts);
      }
      std::string out_path = solve_out;
      if (out_path.empty()) out_path = solve_path + ".sol.json";
      std::string text = serialize_solution(sol, inst);
      if (out_path == "-")
        std::cout << text;
      else
        write_file(out_path, text);
      CrossingReport report = full_report(inst, sol);
      if (!g_records) std::cout << "algorithm: " << algo << "\n";
      print_report(inst, report);
      if (!report.consistent) return kExitVerification;
      return kExitOk;
    }

    if (*cmd_bound) {
      if (std::optional<Permutation> p = parse_permutation(bound_arg)) {
        std::cout << lower_bound_monotone(*p) << "\n";
        return kExitOk;
      }
      Instance inst = load_instance(bound_arg);
      bool summed = false;
      long lb = instance_bound(inst, summed);
      if (g_records)
        std::cout << "bound value=" << lb << " summed=" << (summed ? "true" : "false") << "\n";
      else
        std::cout << (summed ? "monotone lower bound: " : "monotone lower bound (single edge): ")
                  << lb << "\n";
      return kExitOk;
    }

    if (*cmd_verify) {
      Instance inst = load_instance(verify_inst);
      Solution sol = parse_solution(read_file(verify_sol), inst);
      CrossingReport report = full_report(inst, sol);
      print_report(inst, report);
      ConsistencyResult cons = verify_consistency(inst, sol);
      for (const ConsistencyViolation& v : cons.violations) emit_error(Code::BAD_ROTATION, v.detail);
      if (!cons.ok) return kExitVerification;
      if (verify_monotone_flag) {
        MonotoneResult mono = verify_monotone(inst, sol);
        if (!mono.ok) {
          emit_error(Code::INVALID_PARAMS, mono.detail);
          return kExitVerification;
        }
      }
      return kExitOk;
    }

    if (*cmd_oracle) {
      if (std::optional<Permutation> p = parse_permutation(oracle_arg)) {
        std::cout << (oracle_monotone ? exact_mbc(*p) : exact_bc(*p)) << "\n";
        return kExitOk;
      }
      Instance inst = load_instance(oracle_arg);
      TinyResult r = exact_bcm_tiny(inst, oracle_monotone);
      if (g_records)
        std::cout << "oracle optimum=" << r.optimum << "\n";
      else
        std::cout << "optimum: " << r.optimum << "\n";
      return kExitOk;
    }

    if (*cmd_gen) {
      if (const char* env = std::getenv("BLOCKLINE_SEED")) gen_seed = std::strtoull(env, nullptr, 10);
      Instance inst = [&] {
        if (gen_kind == "worstcase") return gen_worstcase_graph(gen_q);
        RandomParams params;
        params.lines = gen_lines;
        params.length = gen_length;
        params.vertices = gen_vertices;
        params.extra_edges = gen_extra;
        params.seed = gen_seed;
        if (!gen_perm.empty()) {
          std::optional<Permutation> p = parse_permutation(gen_perm);
          if (!p) throw Error(Code::INVALID_PARAMS, "--perm is not a permutation");
          params.perm = p->elems;
        }
        RandomKind kind = gen_kind == "edge"     ? RandomKind::Edge
                          : gen_kind == "path"   ? RandomKind::Path
                          : gen_kind == "tree"   ? RandomKind::Tree
                          : gen_kind == "upward" ? RandomKind::Upward
                                                 : RandomKind::Graph;
        return gen_random(kind, params);
      }();
      std::string text = serialize_instance(inst.doc);
      if (gen_out.empty() || gen_out == "-")
        std::cout << text;
      else
        write_file(gen_out, text);
      return kExitOk;
    }

    if (*cmd_render) {
      Instance inst = load_instance(render_inst);
      Solution sol;
      bool have_sol = !render_sol.empty();
      if (have_sol) {
        sol = parse_solution(read_file(render_sol), inst);
      } else {
        for (int e = 0; e < inst.num_edges(); ++e) {
          if (inst.edge_lines[e].empty()) continue;
          EdgeSolution es;
          es.edge = e;
          es.initial_order = inst.edge_lines[e];
          sol.edges[e] = es;
        }
      }
      RenderSpec spec;
      spec.strand_spacing = render_spacing;
      spec.palette_seed = render_palette;
      write_file(render_out, render_svg(inst, &sol, spec));
      if (!g_records) std::cout << "wrote " << render_out << "\n";
      return kExitOk;
    }

    if (*cmd_bench) {
      std::vector<bench::CriterionResult> results = bench::run_acceptance();
      bool ok = bench::report(std::cout, results);
      return ok ? kExitOk : kExitVerification;
    }
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();
  } catch (const Error& e) {
    emit_error(e.code(), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    emit_error(Code::INVALID_PARAMS, e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
