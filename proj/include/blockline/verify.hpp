#pragma once

#include <string>
#include <vector>

#include "blockline/instance.hpp"
#include "blockline/solution.hpp"

namespace blockline {

struct ConsistencyViolation {
  int vertex = -1;
  int edge = -1;
  int line_a = -1;
  int line_b = -1;
  std::string detail;
};

struct ConsistencyResult {
  bool ok = true;
  std::vector<ConsistencyViolation> violations;
};

/// A solution is consistent when, around every vertex, the line stubs of the
/// incident edges can be joined by chords without crossings between lines that
/// share an edge. Pairs meeting only in the vertex may cross there freely.
inline ConsistencyResult verify_consistency(const Instance& inst, const Solution& sol) {
  ConsistencyResult res;
  auto fail = [&](ConsistencyViolation v) {
    res.ok = false;
    res.violations.push_back(std::move(v));
  };

  // structural checks: exact cover of the line-carrying edges, valid orders and moves
  for (int e = 0; e < inst.num_edges(); ++e) {
    bool carries = !inst.edge_lines[e].empty();
    const EdgeSolution* es = sol.find(e);
    if (carries && !es) {
      fail({-1, e, -1, -1, "edge " + inst.edge_id(e) + " carries lines but has no solution entry"});
      continue;
    }
    if (!carries && es) {
      fail({-1, e, -1, -1, "edge " + inst.edge_id(e) + " carries no lines but has a solution entry"});
      continue;
    }
    if (!es) continue;
    std::vector<int> sorted = es->initial_order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != inst.edge_lines[e]) {
      fail({-1, e, -1, -1, "initial order on " + inst.edge_id(e) + " is not a permutation of its lines"});
      continue;
    }
    std::size_t n = es->initial_order.size();
    for (const BlockMove& m : es->moves)
      if (!move_in_range(m, n))
        fail({-1, e, -1, -1, "move out of range on " + inst.edge_id(e)});
  }
  if (!res.ok) return res;

  for (int v = 0; v < inst.num_vertices(); ++v) {
    if (inst.degree[v] <= 1) continue;
    // clockwise slot cycle around v
    std::vector<int> slot_line;
    std::vector<int> slot_edge;
    for (int e : inst.rotation[v]) {
      for (int l : order_at_end(inst, sol, e, v)) {
        slot_line.push_back(l);
        slot_edge.push_back(e);
      }
    }
    int n_slots = static_cast<int>(slot_line.size());
    std::vector<std::vector<int>> pos(inst.num_lines());
    for (int s = 0; s < n_slots; ++s) pos[slot_line[s]].push_back(s);

    std::vector<int> through;
    for (int l = 0; l < inst.num_lines(); ++l)
      if (pos[l].size() == 2) through.push_back(l);

    auto strictly_between = [n_slots](int a, int b, int q) {
      int d_ab = ((b - a) % n_slots + n_slots) % n_slots;
      int d_aq = ((q - a) % n_slots + n_slots) % n_slots;
      return 0 < d_aq && d_aq < d_ab;
    };
    for (std::size_t x = 0; x < through.size(); ++x) {
      for (std::size_t y = x + 1; y < through.size(); ++y) {
        int l = through[x], m = through[y];
        std::vector<int> se = inst.shared_edges(l, m);
        if (se.empty()) continue;  // unavoidable vertex crossing, never counted
        bool first_in = strictly_between(pos[l][0], pos[l][1], pos[m][0]);
        bool second_in = strictly_between(pos[l][0], pos[l][1], pos[m][1]);
        if (first_in != second_in)
          fail({v, se.front(), l, m,
                "lines " + inst.line_id(l) + " and " + inst.line_id(m) + " cross in vertex " +
                    inst.vertex_id(v)});
      }
    }
  }
  return res;
}

struct MonotoneResult {
  bool ok = true;
  int line_a = -1;
  int line_b = -1;
  int edge = -1;
  std::string detail;
};

namespace detail {

/// Number of moves on this edge that exchange the pair (l, m).
inline int edge_flips(const EdgeSolution& es, int l, int m) {
  int flips = 0;
  std::vector<int> cur = es.initial_order;
  for (const BlockMove& mv : es.moves) {
    int pl = -1, pm = -1;
    for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
      if (cur[i] == l) pl = i + 1;
      if (cur[i] == m) pm = i + 1;
    }
    bool l_left = mv.i <= pl && pl <= mv.j, l_right = mv.j < pl && pl <= mv.k;
    bool m_left = mv.i <= pm && pm <= mv.j, m_right = mv.j < pm && pm <= mv.k;
    if ((l_left && m_right) || (m_left && l_right)) ++flips;
    cur = apply_block_move(cur, mv);
  }
  return flips;
}

}  // namespace detail

/// True when every pair of lines sharing an edge changes relative order at
/// most once over the whole common subpath, and exactly when the pair is
/// unavoidable. Expects a consistent solution.
inline MonotoneResult verify_monotone(const Instance& inst, const Solution& sol) {
  MonotoneResult res;
  for (int a = 0; a < inst.num_lines() && res.ok; ++a) {
    for (int b = a + 1; b < inst.num_lines() && res.ok; ++b) {
      std::vector<int> shared = inst.shared_edges(a, b);
      if (shared.empty()) continue;
      int flips = 0;
      int last_edge = -1;
      for (int e : shared) {
        const EdgeSolution* es = sol.find(e);
        if (!es) continue;
        int f = detail::edge_flips(*es, a, b);
        if (f > 0) last_edge = e;
        flips += f;
      }
      int want = must_cross(inst, a, b) == CrossKind::MustCross ? 1 : 0;
      if (flips != want) {
        res.ok = false;
        res.line_a = a;
        res.line_b = b;
        res.edge = last_edge >= 0 ? last_edge : shared.front();
        res.detail = "lines " + inst.line_id(a) + " and " + inst.line_id(b) + " cross " +
                     std::to_string(flips) + " time(s), expected " + std::to_string(want);
      }
    }
  }
  return res;
}

/// Convenience: counts plus both verification verdicts.
inline CrossingReport full_report(const Instance& inst, const Solution& sol) {
  CrossingReport r = count_crossings(sol);
  r.consistent = verify_consistency(inst, sol).ok;
  r.monotone = r.consistent && verify_monotone(inst, sol).ok;
  return r;
}

}  // namespace blockline
