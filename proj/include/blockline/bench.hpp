#pragma once

#include <chrono>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blockline/generators.hpp"
#include "blockline/graph_solver.hpp"
#include "blockline/io.hpp"
#include "blockline/oracle.hpp"
#include "blockline/path_solver.hpp"
#include "blockline/permutation.hpp"
#include "blockline/render.hpp"
#include "blockline/tree_solver.hpp"
#include "blockline/verify.hpp"

namespace blockline::bench {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;

  CriterionResult(int id_, std::string name_) : id(id_), name(std::move(name_)) {}
};

namespace detail {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

/// Per-move metric deltas along a sorting sequence; returns the number of violations.
inline long check_move_deltas(const Permutation& p, const std::vector<BlockMove>& moves) {
  long bad = 0;
  std::vector<int> cur = p.elems;
  for (const BlockMove& m : moves) {
    Metrics before = metrics(Permutation{cur});
    cur = apply_block_move(cur, m);
    Metrics after = metrics(Permutation{cur});
    if (after.des < before.des - 1) ++bad;
    if (after.gap < before.gap - 2) ++bad;
    if (after.inv_des < before.inv_des - 1) ++bad;
    if (after.inv_gap < before.inv_gap - 2) ++bad;
  }
  return bad;
}

inline std::vector<Permutation> permutations_up_to(int max_n) {
  std::vector<Permutation> out;
  for (int n = 1; n <= max_n; ++n) {
    Permutation p = Permutation::identity(n);
    do out.push_back(p);
    while (std::next_permutation(p.elems.begin(), p.elems.end()));
  }
  return out;
}

}  // namespace detail

inline long oracle_rank(const Permutation& p) { return blockline::detail::perm_rank(p.elems); }

inline std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> results;
  // solutions produced by the solver criteria, reused by the round-trip check
  std::vector<std::pair<Instance, Solution>> produced;

  {  // 1: the two reference distances of [3 2 5 4 1]
    detail::Timer t;
    CriterionResult r{1, "reference permutation distances"};
    int bc = exact_bc(Permutation{{3, 2, 5, 4, 1}});
    int mbc = exact_mbc(Permutation{{3, 2, 5, 4, 1}});
    r.seconds = t.elapsed();
    r.pass = bc == 2 && mbc == 3 && r.seconds < 1.0;
    r.detail = "bc=" + std::to_string(bc) + " mbc=" + std::to_string(mbc);
    results.push_back(r);
  }

  std::vector<std::vector<int>> mbc_tables(8);
  {  // 2: lower bound never exceeds the exact monotone distance, n <= 7
    detail::Timer t;
    CriterionResult r{2, "monotone lower bound soundness (5913 permutations)"};
    long violations = 0, total = 0;
    for (int n = 1; n <= 7; ++n) mbc_tables[n] = mbc_distance_table(n);
    for (int n = 1; n <= 7; ++n) {
      Permutation p = Permutation::identity(n);
      do {
        ++total;
        if (lower_bound_monotone(p) > mbc_tables[n][oracle_rank(p)]) ++violations;
      } while (std::next_permutation(p.elems.begin(), p.elems.end()));
    }
    r.seconds = t.elapsed();
    r.pass = violations == 0 && total == 5913 && r.seconds < 120.0;
    r.detail = std::to_string(total) + " permutations, " + std::to_string(violations) + " violations";
    results.push_back(r);
  }

  long delta_violations = 0;
  {  // 3: greedy three-approximation, n <= 7
    detail::Timer t;
    CriterionResult r{3, "greedy sorter: monotone, sorting, <= bp and <= 3 opt"};
    long violations = 0;
    for (int n = 1; n <= 7; ++n) {
      Permutation p = Permutation::identity(n);
      do {
        std::vector<BlockMove> moves = greedy_sort_monotone(p);
        int opt = mbc_tables[n][oracle_rank(p)];
        if (static_cast<int>(moves.size()) > 3 * opt) ++violations;
        if (static_cast<int>(moves.size()) > metrics(p).bp) ++violations;
        std::vector<int> cur = p.elems;
        for (const BlockMove& m : moves) {
          if (!is_monotone_move(cur, m)) ++violations;
          cur = apply_block_move(cur, m);
        }
        if (!Permutation{cur}.is_identity()) ++violations;
        delta_violations += detail::check_move_deltas(p, moves);
      } while (std::next_permutation(p.elems.begin(), p.elems.end()));
    }
    r.seconds = t.elapsed();
    r.pass = violations == 0;
    r.detail = std::to_string(violations) + " violations";
    results.push_back(r);
  }

  {  // 4: unit-block sorter hits n - lis exactly, 1000 seeded permutations
    detail::Timer t;
    CriterionResult r{4, "unit-move sorter: exactly n - lis monotone unit moves"};
    long violations = 0;
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 1000; ++trial) {
      int n = 1 + static_cast<int>(rng() % 10);
      std::vector<int> v(n);
      std::iota(v.begin(), v.end(), 1);
      std::shuffle(v.begin(), v.end(), rng);
      Permutation p{v};
      std::vector<BlockMove> moves = sort_by_unit_moves(p);
      if (static_cast<int>(moves.size()) != n - lis(p)) ++violations;
      std::vector<int> cur = p.elems;
      for (const BlockMove& m : moves) {
        if (!(m.i == m.j || m.j + 1 == m.k)) ++violations;
        if (!is_monotone_move(cur, m)) ++violations;
        cur = apply_block_move(cur, m);
      }
      if (!Permutation{cur}.is_identity()) ++violations;
      delta_violations += detail::check_move_deltas(p, moves);
    }
    r.seconds = t.elapsed();
    r.pass = violations == 0;
    r.detail = std::to_string(violations) + " violations";
    results.push_back(r);
  }

  {  // 5: per-move metric deltas collected across criteria 3 and 4
    CriterionResult r{5, "monotone moves lose at most 1 descent / 2 gaps (direct and inverse)"};
    r.pass = delta_violations == 0;
    r.detail = std::to_string(delta_violations) + " violations";
    results.push_back(r);
  }

  {  // 6: path solvers against the exact optimum at desk scale
    detail::Timer t;
    CriterionResult r{6, "path solvers within 3x of the exact optimum (200 instances)"};
    long violations = 0;
    int used = 0;
    for (std::uint64_t seed = 1; used < 200; ++seed) {
      RandomParams p;
      p.lines = 2 + static_cast<int>(seed % 4);
      p.length = 1 + static_cast<int>(seed % 3);
      p.seed = seed;
      Instance inst = gen_random(RandomKind::Path, p);
      int multi = 0;
      for (int e = 0; e < inst.num_edges(); ++e) multi += inst.edge_lines[e].size() >= 2;
      if (inst.num_lines() > 5 || multi > 3) continue;
      ++used;
      Solution s = solve_path_bcm(inst);
      Solution sm = solve_path_mbcm(inst);
      if (!verify_consistency(inst, s).ok) ++violations;
      if (!verify_consistency(inst, sm).ok) ++violations;
      if (!verify_monotone(inst, sm).ok) ++violations;
      TinyResult opt = exact_bcm_tiny(inst, false);
      TinyResult opt_m = exact_bcm_tiny(inst, true);
      if (count_crossings(s).block_crossings > 3 * opt.optimum) ++violations;
      if (count_crossings(sm).block_crossings > 3 * opt_m.optimum) ++violations;
      produced.emplace_back(inst, s);
      produced.emplace_back(std::move(inst), std::move(sm));
    }
    r.seconds = t.elapsed();
    r.pass = violations == 0 && r.seconds < 300.0;
    r.detail = std::to_string(violations) + " violations over 200 instances";
    results.push_back(r);
  }

  {  // 7: tree insertion bound
    detail::Timer t;
    CriterionResult r{7, "tree insertion: <= 2|L|-3, consistent, monotone (500 instances)"};
    long violations = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
      RandomParams p;
      p.lines = 2 + static_cast<int>(seed % 9);
      p.vertices = 4 + static_cast<int>(seed % 6);
      p.seed = seed;
      Instance inst = gen_random(RandomKind::Tree, p);
      Solution s = solve_tree_insertion(inst);
      if (!verify_consistency(inst, s).ok) ++violations;
      if (!verify_monotone(inst, s).ok) ++violations;
      if (count_crossings(s).block_crossings > 2 * inst.num_lines() - 3) ++violations;
      produced.emplace_back(std::move(inst), std::move(s));
    }
    r.seconds = t.elapsed();
    r.pass = violations == 0;
    r.detail = std::to_string(violations) + " violations";
    results.push_back(r);
  }

  {  // 8: upward pipeline bounds plus simplification neutrality
    detail::Timer t;
    CriterionResult r{8, "upward trees: <= 2|L'| and <= 6 ceil(bp/3); removal keeps the optimum"};
    long violations = 0;
    int neutrality_checked = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      RandomParams p;
      p.lines = 2 + static_cast<int>(seed % 7);
      p.seed = seed;
      Instance inst = gen_random(RandomKind::Upward, p);
      UpwardTreeInstance u = make_upward(inst);
      UpwardSimplification simp = simplify_upward(u);
      Solution sol = solve_upward_mbcm(u);
      if (!verify_consistency(inst, sol).ok) ++violations;
      if (!verify_monotone(inst, sol).ok) ++violations;
      long crossings = count_crossings(sol).block_crossings;
      if (crossings > 2 * simp.reduced.inst.num_lines()) ++violations;
      Metrics m = metrics(top_permutation(simp.reduced));
      if (crossings > 6L * ceil_div(m.bp, 3)) ++violations;

      if (!simp.log.empty() && inst.num_lines() <= 5) {
        int multi = 0, red_multi = 0;
        for (int e = 0; e < inst.num_edges(); ++e) multi += inst.edge_lines[e].size() >= 2;
        for (int e = 0; e < simp.reduced.inst.num_edges(); ++e)
          red_multi += simp.reduced.inst.edge_lines[e].size() >= 2;
        if (multi <= 3 && red_multi <= 3) {
          ++neutrality_checked;
          if (exact_bcm_tiny(inst, true).optimum != exact_bcm_tiny(simp.reduced.inst, true).optimum)
            ++violations;
        }
      }
      produced.emplace_back(std::move(inst), std::move(sol));
    }
    r.seconds = t.elapsed();
    r.pass = violations == 0 && neutrality_checked > 0;
    r.detail = std::to_string(violations) + " violations, " + std::to_string(neutrality_checked) +
               " neutrality checks";
    results.push_back(r);
  }

  {  // 9: graph solver bound bookkeeping
    detail::Timer t;
    CriterionResult r{9, "graph solver: b^2 <= I per edge and total <= |L| sqrt(|E'|) (500 instances)"};
    long violations = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
      RandomParams p;
      p.lines = 3 + static_cast<int>(seed % 6);
      p.vertices = 5 + static_cast<int>(seed % 4);
      p.extra_edges = 1 + static_cast<int>(seed % 3);
      p.seed = seed;
      Instance inst = gen_random(RandomKind::Graph, p);
      GraphRunState st;
      Solution s = solve_graph(inst, {}, &st);
      if (!verify_consistency(inst, s).ok) ++violations;
      if (!verify_monotone(inst, s).ok) ++violations;
      long total = 0;
      for (const GroupDecomposition& d : st.decompositions) {
        auto [i_val, b_val] = information_gain(d);
        if (static_cast<long>(d.moves) * d.moves > i_val) ++violations;
        if (d.moves > b_val) ++violations;
        total += d.moves;
      }
      double cap = inst.num_lines() * std::sqrt(static_cast<double>(st.decompositions.size()));
      if (static_cast<double>(total) > cap + 1e-9) ++violations;
      produced.emplace_back(std::move(inst), std::move(s));
    }
    r.seconds = t.elapsed();
    r.pass = violations == 0;
    r.detail = std::to_string(violations) + " violations";
    results.push_back(r);
  }

  {  // 10: worst-case families are solved at exactly (q^2+q+1) q crossings
    detail::Timer t;
    CriterionResult r{10, "projective worst cases: exact totals 14 / 39 / 155"};
    bool ok = true;
    std::ostringstream detail;
    for (int q : {2, 3, 5}) {
      Instance inst = gen_worstcase_graph(q);
      Solution s = solve_graph(inst);
      long got = count_crossings(s).block_crossings;
      long expect = static_cast<long>(q * q + q + 1) * q;
      bool fine = got == expect && verify_consistency(inst, s).ok && verify_monotone(inst, s).ok;
      ok = ok && fine;
      detail << "q=" << q << ":" << got << "/" << expect << " ";
      produced.emplace_back(std::move(inst), std::move(s));
    }
    r.seconds = t.elapsed();
    r.pass = ok && r.seconds < 30.0;
    r.detail = detail.str();
    results.push_back(r);
  }

  {  // 11: file-format round trips and byte-stable rendering
    detail::Timer t;
    CriterionResult r{11, "round-tripped solutions verify; rendering byte-stable"};
    long violations = 0;
    for (const auto& [inst, sol] : produced) {
      InstanceDoc doc = parse_instance(serialize_instance(inst.doc));
      Instance inst2 = validate_or_throw(doc);
      Solution sol2 = parse_solution(serialize_solution(sol, inst), inst2);
      if (!verify_consistency(inst2, sol2).ok) ++violations;
    }
    RenderSpec spec;
    for (std::size_t i = 0; i < produced.size() && i < 8; ++i) {
      std::string a = render_svg(produced[i].first, &produced[i].second, spec);
      std::string b = render_svg(produced[i].first, &produced[i].second, spec);
      if (a != b) ++violations;
    }
    r.seconds = t.elapsed();
    r.pass = violations == 0 && !produced.empty();
    r.detail = std::to_string(violations) + " violations over " + std::to_string(produced.size()) +
               " solutions";
    results.push_back(r);
  }

  return results;
}

inline bool report(std::ostream& out, const std::vector<CriterionResult>& results) {
  bool all = true;
  for (const CriterionResult& r : results) {
    all = all && r.pass;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%6.2fs", r.seconds);
    out << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << " (" << buf
        << "): " << r.name << " -- " << r.detail << "\n";
  }
  out << (all ? "all criteria satisfied\n" : "CRITERIA FAILED\n");
  return all;
}

}  // namespace blockline::bench
