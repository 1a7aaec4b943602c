#pragma once

#include <map>
#include <string>
#include <vector>

#include "blockline/core.hpp"
#include "blockline/instance.hpp"

namespace blockline {

/// Line orders along one edge: initial_order is read at the u endpoint of the
/// edge record; each move produces the next order walking toward v.
struct EdgeSolution {
  int edge = -1;
  std::vector<int> initial_order;  // line indices
  std::vector<BlockMove> moves;
};

/// Per-edge solutions for every edge carrying at least one line.
struct Solution {
  std::map<int, EdgeSolution> edges;

  const EdgeSolution* find(int e) const {
    auto it = edges.find(e);
    return it == edges.end() ? nullptr : &it->second;
  }
};

/// All orders pi^0 .. pi^t of an edge solution.
inline std::vector<std::vector<int>> unroll(const EdgeSolution& es) {
  std::vector<std::vector<int>> seqs{es.initial_order};
  for (const BlockMove& m : es.moves) seqs.push_back(apply_block_move(seqs.back(), m));
  return seqs;
}

inline std::vector<int> final_order(const EdgeSolution& es) {
  std::vector<int> cur = es.initial_order;
  for (const BlockMove& m : es.moves) cur = apply_block_move(cur, m);
  return cur;
}

/// Order of the lines at the `v`-end of edge e (clockwise around v).
inline std::vector<int> order_at_end(const Instance& inst, const Solution& sol, int e, int v) {
  const EdgeSolution* es = sol.find(e);
  if (!es) return {};
  if (inst.edge_ends[e].first == v) return es->initial_order;
  std::vector<int> fin = final_order(*es);
  return {fin.rbegin(), fin.rend()};
}

/// Rewrites an edge solution built while walking from `near` so that the
/// stored sequence starts at the record's u endpoint. `near_order` is the
/// order at the near end, `moves` walk toward the far end.
inline EdgeSolution oriented_edge_solution(const Instance& inst, int e, int near,
                                           std::vector<int> near_order,
                                           std::vector<BlockMove> moves) {
  EdgeSolution es;
  es.edge = e;
  if (inst.edge_ends[e].first == near) {
    es.initial_order = std::move(near_order);
    es.moves = std::move(moves);
    return es;
  }
  // view from the other end: final order reversed, moves mirrored, in reverse
  std::vector<int> cur = near_order;
  std::vector<std::vector<int>> states{cur};
  for (const BlockMove& m : moves) {
    cur = apply_block_move(cur, m);
    states.push_back(cur);
  }
  int n = static_cast<int>(near_order.size());
  es.initial_order.assign(states.back().rbegin(), states.back().rend());
  for (int t = static_cast<int>(moves.size()) - 1; t >= 0; --t) {
    // read backwards, the exchanged blocks swap roles: the left block of the
    // reversed view is the reversed right block of the original move
    const BlockMove& m = moves[t];
    es.moves.push_back(BlockMove{n - m.k + 1, n - m.k + (m.j - m.i + 1), n - m.i + 1});
  }
  return es;
}

struct CrossingReport {
  long block_crossings = 0;
  long pairwise_crossings = 0;
  bool monotone = false;
  bool consistent = false;
  std::map<int, int> per_edge;  // edge index -> t(e)
};

/// Totals only; the verification flags are filled by the verify routines.
inline CrossingReport count_crossings(const Solution& sol) {
  CrossingReport r;
  for (const auto& [e, es] : sol.edges) {
    r.per_edge[e] = static_cast<int>(es.moves.size());
    r.block_crossings += static_cast<long>(es.moves.size());
    for (const BlockMove& m : es.moves) r.pairwise_crossings += pairs_exchanged(m);
  }
  return r;
}

}  // namespace blockline
