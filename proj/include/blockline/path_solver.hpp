#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "blockline/instance.hpp"
#include "blockline/solution.hpp"

namespace blockline {

enum class PathSide { Top, Bottom };

struct PathLineInfo {
  int start_pos = -1;  // node positions along the oriented path; -1 = off the path
  int end_pos = -1;
  PathSide start_side = PathSide::Top;
  PathSide end_side = PathSide::Top;
};

/// Left-to-right path layout plus the per-node partition of line ends into
/// sides. All four per-node groups are stored innermost first, i.e. starting
/// with the strand adjacent to the continuing band.
struct PathClassification {
  std::vector<int> nodes;  // skeleton vertex indices
  std::vector<int> edges;  // edges[i] joins nodes[i] and nodes[i+1]
  std::vector<PathLineInfo> lines;
  std::vector<std::vector<int>> top_enders, top_starters, bot_enders, bot_starters;
};

/// Orients the skeleton path and derives every line's span and end sides from
/// the rotations. Fails with NOT_A_PATH / BAD_TERMINAL_ORDER.
inline PathClassification classify_path(const Instance& inst) {
  PathClassification c;
  c.lines.resize(inst.num_lines());

  std::vector<int> skel;
  for (int v = 0; v < inst.num_vertices(); ++v)
    if (inst.degree[v] >= 2) skel.push_back(v);
  if (skel.empty()) return c;  // bare edges only; nothing to order

  std::set<int> in_skel(skel.begin(), skel.end());
  std::map<int, std::vector<int>> skel_adj;  // vertex -> skeleton edges
  for (int e = 0; e < inst.num_edges(); ++e) {
    auto [a, b] = inst.edge_ends[e];
    if (in_skel.count(a) && in_skel.count(b)) {
      skel_adj[a].push_back(e);
      skel_adj[b].push_back(e);
    }
  }
  if (skel.size() == 1) {
    c.nodes = {skel[0]};
    c.top_enders.resize(1);
    c.top_starters.resize(1);
    c.bot_enders.resize(1);
    c.bot_starters.resize(1);
    return c;
  }
  int ends = 0;
  int start = -1;
  for (int v : skel) {
    std::size_t d = skel_adj[v].size();
    if (d == 0 || d > 2) throw Error(Code::NOT_A_PATH, "skeleton vertex " + inst.vertex_id(v) +
                                                           " has skeleton degree " + std::to_string(d));
    if (d == 1) {
      ++ends;
      if (start < 0 || inst.vertex_id(v) < inst.vertex_id(start)) start = v;
    }
  }
  if (ends != 2) throw Error(Code::NOT_A_PATH, "skeleton is not a simple path");

  // walk the path from the chosen end
  c.nodes.push_back(start);
  int prev_edge = -1;
  while (true) {
    int v = c.nodes.back();
    int next_edge = -1;
    for (int e : skel_adj[v])
      if (e != prev_edge) next_edge = e;
    if (next_edge < 0) break;
    c.edges.push_back(next_edge);
    c.nodes.push_back(inst.other_end(next_edge, v));
    prev_edge = next_edge;
  }
  if (c.nodes.size() != skel.size())
    throw Error(Code::NOT_A_PATH, "skeleton is disconnected");

  std::map<int, int> node_pos;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) node_pos[c.nodes[i]] = static_cast<int>(i);

  for (int l = 0; l < inst.num_lines(); ++l) {
    int lo = -1, hi = -1;
    for (int v : inst.line_vertices[l]) {
      auto it = node_pos.find(v);
      if (it == node_pos.end()) continue;
      if (lo < 0 || it->second < lo) lo = it->second;
      if (hi < 0 || it->second > hi) hi = it->second;
    }
    c.lines[l].start_pos = lo;
    c.lines[l].end_pos = hi;
  }

  int m = static_cast<int>(c.nodes.size());
  c.top_enders.resize(m);
  c.top_starters.resize(m);
  c.bot_enders.resize(m);
  c.bot_starters.resize(m);

  for (int p = 0; p < m; ++p) {
    int v = c.nodes[p];
    int e_in = p > 0 ? c.edges[p - 1] : -1;
    int e_out = p + 1 < m ? c.edges[p] : -1;
    const auto& rot = inst.rotation[v];
    int n = static_cast<int>(rot.size());
    int anchor = inst.rotation_pos(v, e_in >= 0 ? e_in : e_out);

    // walk clockwise from the anchor; slots before e_out are the top arc
    std::vector<int> top_arc, bot_arc;
    bool in_top = true;
    for (int t = 1; t < n; ++t) {
      int e = rot[(anchor + t) % n];
      if (e == e_out) {
        in_top = false;
        continue;
      }
      if (e == e_in) continue;
      int l = inst.terminal_line(e);
      if (l < 0) continue;  // empty stub
      if (c.lines[l].start_pos == c.lines[l].end_pos) continue;  // off-path line
      (in_top ? top_arc : bot_arc).push_back(e);
    }
    if (e_in < 0 || e_out < 0) {
      // single-sided node: everything counts as the top arc
      ;
    }
    auto classify_arc = [&](const std::vector<int>& arc, bool top) {
      std::vector<int> enders, starters;
      bool seen_second_group = false;
      for (int e : arc) {
        int l = inst.terminal_line(e);
        // a stub sits at the line's leftmost or rightmost path node
        bool is_end = c.lines[l].end_pos == p;
        PathSide side = top ? PathSide::Top : PathSide::Bottom;
        bool first_group = top ? is_end : !is_end;  // enders first above, starters first below
        if (first_group && seen_second_group)
          throw Error(Code::BAD_TERMINAL_ORDER,
                      "line ends and starts interleave at " + inst.vertex_id(v));
        if (!first_group) seen_second_group = true;
        if (is_end) {
          enders.push_back(l);
          c.lines[l].end_side = side;
        } else {
          starters.push_back(l);
          c.lines[l].start_side = side;
        }
      }
      return std::make_pair(enders, starters);
    };
    auto [te, ts] = classify_arc(top_arc, true);
    auto [be, bs] = classify_arc(bot_arc, false);
    // normalise everything to innermost-first
    c.top_enders[p].assign(te.rbegin(), te.rend());
    c.top_starters[p] = ts;
    c.bot_enders[p] = be;
    c.bot_starters[p].assign(bs.rbegin(), bs.rend());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Good pairs: ordered line pairs destined to be adjacent when one of them
// ends. Chains identify pairs linked by inheritance across nodes.
// ---------------------------------------------------------------------------

struct GoodPairChain {
  int id = -1;
  int death_node = -1;  // node position where the base pair's members end
  int first_edge = 0;   // alive edge range (positions into classification.edges)
  int last_edge = -1;
  std::vector<std::pair<int, int>> members;  // (upper, lower) per edge from first_edge
};

struct GoodPairTable {
  std::vector<GoodPairChain> chains;
  std::vector<std::vector<int>> by_edge;  // edge position -> chain ids
};

namespace pathdetail {

inline std::vector<std::vector<CrossKind>> pair_kinds(const Instance& inst) {
  int n = inst.num_lines();
  std::vector<std::vector<CrossKind>> k(n, std::vector<CrossKind>(n, CrossKind::Disjoint));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) k[a][b] = k[b][a] = must_cross(inst, a, b);
  return k;
}

/// Relative order of a must-not-cross pair: true when `a` runs above `b`.
inline bool runs_above(const Instance& inst, const PathClassification& c, int a, int b) {
  int sp = std::max(c.lines[a].start_pos, c.lines[b].start_pos);
  int shared_edge = c.edges[sp];
  return first_at_shared_end(inst, a, b, c.nodes[sp], shared_edge);
}

/// A line blocking the inheritance of the pair (a2, lower) at node p: it has
/// to sit between them near the node in every consistent solution.
inline bool prevented_top(const Instance& inst, const PathClassification& c,
                          const std::vector<std::vector<CrossKind>>& kinds, int p, int a2,
                          int lower) {
  int e_in = c.edges[p - 1];
  for (int cl : inst.edge_lines[e_in]) {
    if (cl == a2 || cl == lower) continue;
    if (c.lines[cl].end_pos <= p) continue;  // must continue past the node
    if (kinds[cl][a2] != CrossKind::MustCross) continue;
    if (kinds[cl][lower] != CrossKind::MustNotCross) continue;
    if (runs_above(inst, c, cl, lower)) return true;
  }
  return false;
}

inline bool prevented_bot(const Instance& inst, const PathClassification& c,
                          const std::vector<std::vector<CrossKind>>& kinds, int p, int b2,
                          int upper) {
  int e_in = c.edges[p - 1];
  for (int cl : inst.edge_lines[e_in]) {
    if (cl == b2 || cl == upper) continue;
    if (c.lines[cl].end_pos <= p) continue;
    if (kinds[cl][b2] != CrossKind::MustCross) continue;
    if (kinds[cl][upper] != CrossKind::MustNotCross) continue;
    if (!runs_above(inst, c, cl, upper)) return true;
  }
  return false;
}

}  // namespace pathdetail

/// Right-to-left sweep building every chain: base pairs are consecutive enders
/// at a node, and a chain keeps living leftwards while the member starting at
/// a node is the innermost starter and an innermost ender takes its place.
/// With `monotone_prevention`, inheritance is suppressed whenever a third line
/// is forced between the would-be pair.
inline GoodPairTable build_good_pairs(const Instance& inst, const PathClassification& c,
                                      const std::vector<std::vector<CrossKind>>& kinds,
                                      bool monotone_prevention) {
  GoodPairTable t;
  int m = static_cast<int>(c.edges.size());
  t.by_edge.resize(m);
  if (m == 0) return t;

  struct Active {
    int chain;
    int upper, lower;
  };
  std::vector<Active> active;
  std::map<int, std::vector<std::tuple<int, int, int>>> collected;  // chain -> (edge, upper, lower)

  for (int p = m; p >= 1; --p) {
    std::vector<Active> next;
    for (Active a : active) {
      bool upper_starts = c.lines[a.upper].start_pos == p;
      bool lower_starts = c.lines[a.lower].start_pos == p;
      // a pair whose both members start here is created here; no incarnation
      // exists further left, and replacing both would fabricate a pair that
      // has to straddle the continuing band
      bool ok = !(upper_starts && lower_starts);
      if (ok && upper_starts) {
        int a1 = c.top_starters[p].empty() ? -1 : c.top_starters[p][0];
        int a2 = c.top_enders[p].empty() ? -1 : c.top_enders[p][0];
        if (a.upper == a1 && a2 >= 0 &&
            !(monotone_prevention && pathdetail::prevented_top(inst, c, kinds, p, a2, a.lower)))
          a.upper = a2;
        else
          ok = false;
      }
      if (ok && lower_starts) {
        int b1 = c.bot_starters[p].empty() ? -1 : c.bot_starters[p][0];
        int b2 = c.bot_enders[p].empty() ? -1 : c.bot_enders[p][0];
        if (a.lower == b1 && b2 >= 0 &&
            !(monotone_prevention && pathdetail::prevented_bot(inst, c, kinds, p, b2, a.upper)))
          a.lower = b2;
        else
          ok = false;
      }
      if (ok) next.push_back(a);
    }
    active = std::move(next);

    const auto& te = c.top_enders[p];  // innermost first
    for (std::size_t i = 0; i + 1 < te.size(); ++i) {
      GoodPairChain ch;
      ch.id = static_cast<int>(t.chains.size());
      ch.death_node = p;
      t.chains.push_back(ch);
      active.push_back({ch.id, te[i + 1], te[i]});
    }
    const auto& be = c.bot_enders[p];
    for (std::size_t i = 0; i + 1 < be.size(); ++i) {
      GoodPairChain ch;
      ch.id = static_cast<int>(t.chains.size());
      ch.death_node = p;
      t.chains.push_back(ch);
      active.push_back({ch.id, be[i], be[i + 1]});
    }
    for (const Active& a : active) {
      collected[a.chain].push_back({p - 1, a.upper, a.lower});
      t.by_edge[p - 1].push_back(a.chain);
    }
  }
  for (auto& [id, list] : collected) {
    GoodPairChain& ch = t.chains[id];
    ch.first_edge = std::get<0>(list.back());
    ch.last_edge = std::get<0>(list.front());
    ch.members.resize(ch.last_edge - ch.first_edge + 1);
    for (auto& [e, u, l] : list) ch.members[e - ch.first_edge] = {u, l};
  }
  return t;
}

// ---------------------------------------------------------------------------
// The solver.
// ---------------------------------------------------------------------------

/// Optional run trace for the property tests.
struct PathRunInfo {
  std::vector<int> case2_edges;  // edge positions where an all-initial chain was split
  std::vector<std::pair<int, bool>> move_deltas;  // (together-pair delta, move was a split)
};

namespace pathdetail {

struct ChainState {
  bool together = false;
  bool by_crossing = false;
  bool dead = false;
};

struct PhaseEnv {
  const Instance* inst;
  const PathClassification* cls;
  const GoodPairTable* table;
  const std::vector<std::vector<CrossKind>>* kinds;
  std::vector<ChainState>* state;
  std::set<std::pair<int, int>>* crossed;  // only in monotone mode
  bool monotone = false;
  PathRunInfo* info = nullptr;
};

/// One placement phase over a view of the current order: index 0 is the side
/// the targets leave to; the mirrored green phase passes a reversed view.
/// view_next[x] = (y, chain) when (x, y) is a live pair with y directly after
/// x in view direction. Appends the view-frame moves to `moves`.
struct Phase {
  PhaseEnv env;
  std::vector<int> cur;                      // view order
  std::map<int, std::pair<int, int>> next_pair;  // x -> (y, chain)
  std::vector<char> is_target, is_opposite;  // per line: ends to view top / view bottom at this node
  std::vector<int> targets;                  // outermost first
  int edge_pos = 0;
  bool view_flipped = false;
  int virt_top = -1, virt_bottom = -1;  // partner lines of the boundary sentinels, view frame

  int pos_of(int line) const {
    for (int i = 0; i < static_cast<int>(cur.size()); ++i)
      if (cur[i] == line) return i;
    return -1;
  }

  bool pair_alive(int x, int y, int* chain_out = nullptr) const {
    auto it = next_pair.find(x);
    if (it == next_pair.end() || it->second.first != y) return false;
    if ((*env.state)[it->second.second].dead) return false;
    if (chain_out) *chain_out = it->second.second;
    return true;
  }

  bool ends_opposite(int line) const { return is_opposite[line]; }
  bool is_black(int line) const { return !is_target[line] && !is_opposite[line]; }

  int count_together() const {
    int n = 0;
    for (int chain : (*env.table).by_edge[edge_pos]) {
      const GoodPairChain& ch = (*env.table).chains[chain];
      auto [u, l] = ch.members[edge_pos - ch.first_edge];
      int x = view_flipped ? l : u, y = view_flipped ? u : l;
      int px = pos_of(x);
      if (px >= 0 && px + 1 < static_cast<int>(cur.size()) && cur[px + 1] == y) ++n;
    }
    if (virt_top >= 0 && !cur.empty() && cur.front() == virt_top) ++n;
    if (virt_bottom >= 0 && !cur.empty() && cur.back() == virt_bottom) ++n;
    return n;
  }

  void mark_crossed(int from, int to_excl, int bstart, int bend_incl) {
    if (!env.monotone) return;
    for (int a = from; a < to_excl; ++a)
      for (int b = bstart; b <= bend_incl; ++b) {
        auto key = std::minmax(cur[a], cur[b]);
        env.crossed->insert({key.first, key.second});
      }
  }

  bool swap_allowed(int jumped, int member) const {
    CrossKind k = (*env.kinds)[jumped][member];
    if (k != CrossKind::MustCross) return false;
    auto key = std::minmax(jumped, member);
    return !env.crossed->count({key.first, key.second});
  }

  void refresh_together() {
    for (int chain : (*env.table).by_edge[edge_pos]) {
      ChainState& st = (*env.state)[chain];
      if (st.dead || st.together) continue;
      const GoodPairChain& ch = (*env.table).chains[chain];
      auto [u, l] = ch.members[edge_pos - ch.first_edge];
      int x = view_flipped ? l : u, y = view_flipped ? u : l;
      int px = pos_of(x);
      if (px >= 0 && px + 1 < static_cast<int>(cur.size()) && cur[px + 1] == y) st.together = true;
    }
  }

  void after_move_adjacency(int boundary_left) {
    // a new adjacency (cur[b], cur[b+1]) created by the crossing
    if (boundary_left < 0 || boundary_left + 1 >= static_cast<int>(cur.size())) return;
    int x = cur[boundary_left], y = cur[boundary_left + 1];
    auto it = next_pair.find(x);
    if (it != next_pair.end() && it->second.first == y) {
      ChainState& st = (*env.state)[it->second.second];
      if (!st.dead && !st.together) {
        st.together = true;
        st.by_crossing = true;
      }
    }
  }

  std::vector<BlockMove> run() {
    std::vector<BlockMove> moves;
    refresh_together();
    int n = static_cast<int>(cur.size());
    int z = 0;
    int black_total = 0;
    for (int l : cur)
      if (is_black(l)) ++black_total;

    for (int r : targets) {
      int pos = pos_of(r);
      if (pos < z) continue;  // placed as a rider
      if (pos == z) {
        ++z;
        continue;
      }
      // chain block from r toward the view bottom through live together pairs
      int end = pos;
      while (end + 1 < n && pair_alive(cur[end], cur[end + 1])) ++end;

      bool split = false;
      if (env.monotone) {
        // last target inside the block
        int last_target = pos;
        for (int t = pos; t <= end; ++t)
          if (is_target[cur[t]]) last_target = t;
        int i_min = -1;
        for (int t = last_target + 1; t <= end && i_min < 0; ++t)
          for (int j = z; j < pos && i_min < 0; ++j)
            if (!swap_allowed(cur[j], cur[t])) i_min = t;
        if (i_min >= 0) {
          split = true;
          int brk = -1;
          for (int t = i_min - 1; t >= last_target && brk < 0; --t) {
            int chain;
            if (pair_alive(cur[t], cur[t + 1], &chain) && (*env.state)[chain].by_crossing) brk = t;
          }
          if (brk < 0) {
            for (int j = last_target + 1; j <= i_min; ++j)
              if (ends_opposite(cur[j])) {
                brk = j - 1;
                break;
              }
          }
          if (brk < 0) brk = i_min - 1;
          int chain;
          if (pair_alive(cur[brk], cur[brk + 1], &chain)) {
            (*env.state)[chain].dead = true;
            (*env.state)[chain].together = false;
          }
          end = brk;
        }
      } else {
        bool has_opposite = false;
        int blacks_in = 0;
        for (int t = pos; t <= end; ++t) {
          if (ends_opposite(cur[t])) has_opposite = true;
          if (is_black(cur[t])) ++blacks_in;
        }
        if (has_opposite && blacks_in < black_total) {
          split = true;
          int last_target = pos;
          for (int t = pos; t <= end; ++t)
            if (is_target[cur[t]]) last_target = t;
          // candidates: black-containing pairs below the deepest target
          int brk = -1;
          for (int t = end - 1; t >= last_target && brk < 0; --t) {
            if (!is_black(cur[t]) && !is_black(cur[t + 1])) continue;
            int chain;
            if (pair_alive(cur[t], cur[t + 1], &chain) && (*env.state)[chain].by_crossing) brk = t;
          }
          if (brk < 0) {
            // all candidates are initial: split where the pair ends last
            int best_death = -1;
            for (int t = last_target; t < end; ++t) {
              if (!is_black(cur[t]) && !is_black(cur[t + 1])) continue;
              int chain;
              if (!pair_alive(cur[t], cur[t + 1], &chain)) continue;
              int death = (*env.table).chains[chain].death_node;
              if (death >= best_death) {
                best_death = death;
                brk = t;
              }
            }
            if (env.info) env.info->case2_edges.push_back(edge_pos);
          }
          if (brk < 0) brk = end - 1;  // defensive; candidates should exist
          int chain;
          if (pair_alive(cur[brk], cur[brk + 1], &chain)) {
            (*env.state)[chain].dead = true;
            (*env.state)[chain].together = false;
          }
          end = brk;
        }
      }

      int before = env.info ? count_together() : 0;
      mark_crossed(z, pos, pos, end);
      BlockMove mv{z + 1, pos, end + 1};
      moves.push_back(mv);
      cur = apply_block_move(cur, mv);
      int len = end - pos + 1;
      after_move_adjacency(z - 1);
      after_move_adjacency(z + len - 1);
      after_move_adjacency(pos + len - 1);
      if (env.info) env.info->move_deltas.push_back({count_together() - before, split});
      z += len;
    }
    return moves;
  }
};

}  // namespace pathdetail

namespace pathdetail {

inline BlockMove mirror_move(const BlockMove& m, int n) {
  return BlockMove{n - m.k + 1, n - m.j, n - m.i + 1};
}

/// Core of both path solvers.
inline Solution solve_path_core(const Instance& inst, bool monotone, PathRunInfo* info) {
  PathClassification cls = classify_path(inst);
  Solution sol;
  // trivial entries for every edge outside the skeleton walk
  std::set<int> skeleton_edges(cls.edges.begin(), cls.edges.end());
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (skeleton_edges.count(e) || inst.edge_lines[e].empty()) continue;
    EdgeSolution es;
    es.edge = e;
    es.initial_order = inst.edge_lines[e];
    sol.edges[e] = es;
  }
  if (cls.edges.empty()) return sol;

  std::vector<std::vector<CrossKind>> kinds = pathdetail::pair_kinds(inst);
  GoodPairTable table = build_good_pairs(inst, cls, kinds, monotone);
  std::vector<pathdetail::ChainState> state(table.chains.size());
  std::set<std::pair<int, int>> crossed;

  pathdetail::PhaseEnv env;
  env.inst = &inst;
  env.cls = &cls;
  env.table = &table;
  env.kinds = &kinds;
  env.state = &state;
  env.crossed = &crossed;
  env.monotone = monotone;
  env.info = info;

  int m = static_cast<int>(cls.edges.size());
  // order entering the first edge: everything comes from stubs at the left node
  std::vector<int> cur = derive_order_at(inst, cls.nodes[0], cls.edges[0],
                                         [&](int e, int) -> std::vector<int> {
                                           int l = inst.terminal_line(e);
                                           return l >= 0 ? std::vector<int>{l} : std::vector<int>{};
                                         });

  for (int ep = 0; ep < m; ++ep) {
    int e = cls.edges[ep];
    int u_node = cls.nodes[ep];
    int right_node = ep + 1;
    std::vector<int> initial = cur;
    std::vector<BlockMove> moves;

    std::vector<char> ends_top(inst.num_lines(), 0), ends_bot(inst.num_lines(), 0);
    for (int l : cls.top_enders[right_node]) ends_top[l] = 1;
    for (int l : cls.bot_enders[right_node]) ends_bot[l] = 1;

    // virtual partners: the line on this edge ending soonest to each side
    auto virtual_partner = [&](bool top) {
      int best = -1, best_node = 1 << 29, best_rank = -1;
      for (int l : cur) {
        if (cls.lines[l].end_side != (top ? PathSide::Top : PathSide::Bottom)) continue;
        int node = cls.lines[l].end_pos;
        const auto& group = top ? cls.top_enders[node] : cls.bot_enders[node];
        int rank = 0;
        for (std::size_t i = 0; i < group.size(); ++i)
          if (group[i] == l) rank = static_cast<int>(i);
        if (node < best_node || (node == best_node && rank > best_rank)) {
          best = l;
          best_node = node;
          best_rank = rank;
        }
      }
      return best;
    };
    int vt = virtual_partner(true), vb = virtual_partner(false);

    if (cur.size() > 1) {
      // top phase
      pathdetail::Phase top;
      top.env = env;
      top.cur = cur;
      top.edge_pos = ep;
      top.view_flipped = false;
      top.is_target.assign(inst.num_lines(), 0);
      top.is_opposite.assign(inst.num_lines(), 0);
      for (int l : cur) {
        top.is_target[l] = ends_top[l];
        top.is_opposite[l] = ends_bot[l];
      }
      top.targets.assign(cls.top_enders[right_node].rbegin(), cls.top_enders[right_node].rend());
      for (int chain : table.by_edge[ep]) {
        const GoodPairChain& ch = table.chains[chain];
        auto [u, l] = ch.members[ep - ch.first_edge];
        top.next_pair[u] = {l, chain};
      }
      top.virt_top = vt;
      top.virt_bottom = vb;
      std::vector<BlockMove> mt = top.run();
      moves.insert(moves.end(), mt.begin(), mt.end());
      cur = top.cur;

      // bottom phase on the reversed view
      pathdetail::Phase bot;
      bot.env = env;
      bot.cur.assign(cur.rbegin(), cur.rend());
      bot.edge_pos = ep;
      bot.view_flipped = true;
      bot.is_target.assign(inst.num_lines(), 0);
      bot.is_opposite.assign(inst.num_lines(), 0);
      for (int l : cur) {
        bot.is_target[l] = ends_bot[l];
        bot.is_opposite[l] = ends_top[l];
      }
      bot.targets.assign(cls.bot_enders[right_node].rbegin(), cls.bot_enders[right_node].rend());
      for (int chain : table.by_edge[ep]) {
        const GoodPairChain& ch = table.chains[chain];
        auto [u, l] = ch.members[ep - ch.first_edge];
        bot.next_pair[l] = {u, chain};
      }
      bot.virt_top = vb;
      bot.virt_bottom = vt;
      std::vector<BlockMove> mb = bot.run();
      int n = static_cast<int>(cur.size());
      for (const BlockMove& mv : mb) {
        moves.push_back(pathdetail::mirror_move(mv, n));
        cur = apply_block_move(cur, moves.back());
      }
    }

    if (!initial.empty()) sol.edges[e] = oriented_edge_solution(inst, e, u_node, initial, moves);

    // carry the continuing band through the node
    if (ep + 1 < m) {
      std::vector<int> blacks;
      for (int l : cur)
        if (!ends_top[l] && !ends_bot[l]) blacks.push_back(l);
      std::vector<int> nxt;
      const auto& ts = cls.top_starters[right_node];
      const auto& bs = cls.bot_starters[right_node];
      nxt.assign(ts.rbegin(), ts.rend());
      nxt.insert(nxt.end(), blacks.begin(), blacks.end());
      nxt.insert(nxt.end(), bs.begin(), bs.end());
      cur = std::move(nxt);
    }
  }
  return sol;
}

}  // namespace pathdetail

/// Good-pair insertion algorithm for path skeletons: reds to the top, greens
/// to the bottom, chains of live pairs moved as one block, the single
/// irreducible mixed chain per edge split by the two-case rule.
inline Solution solve_path_bcm(const Instance& inst, PathRunInfo* info = nullptr) {
  return pathdetail::solve_path_core(inst, false, info);
}

/// Monotone variant: inheritance is suppressed where a third line is forced
/// between a pair, and a block never jumps a line it may not cross; splits
/// prefer crossing-created pairs and otherwise the first member leaving to the
/// far side.
inline Solution solve_path_mbcm(const Instance& inst, PathRunInfo* info = nullptr) {
  return pathdetail::solve_path_core(inst, true, info);
}

}  // namespace blockline
