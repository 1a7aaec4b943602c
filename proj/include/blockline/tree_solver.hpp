#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "blockline/instance.hpp"
#include "blockline/ordering.hpp"
#include "blockline/permutation.hpp"
#include "blockline/solution.hpp"
#include "blockline/verify.hpp"

namespace blockline {

namespace treedetail {

inline void require_forest(const Instance& inst) {
  std::vector<int> parent(inst.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int e = 0; e < inst.num_edges(); ++e) {
    int a = find(inst.edge_ends[e].first), b = find(inst.edge_ends[e].second);
    if (a == b) throw Error(Code::NOT_A_TREE, "skeleton contains a cycle through " + inst.edge_id(e));
    parent[a] = b;
  }
}

/// Edge-by-edge construction. Every line is inserted at the first expanded
/// vertex of its path and may move once on each of its edges there; afterwards
/// it is carried. Pair crossings happen on the first co-processed edge, or on
/// the edge dictated by `forced` when given.
struct InsertionRun {
  const Instance& inst;
  const std::map<std::pair<int, int>, int>* forced;
  std::vector<int> stamp;
  std::vector<int> insertion_vertex;
  Solution sol;
  int clock = 0;

  InsertionRun(const Instance& i, const std::map<std::pair<int, int>, int>* f)
      : inst(i), forced(f), stamp(i.num_edges(), -1), insertion_vertex(i.num_lines(), -1) {}

  int crossing_edge(int a, int b, int current) const {
    if (forced) {
      auto key = std::minmax(a, b);
      auto it = forced->find({key.first, key.second});
      return it == forced->end() ? -1 : it->second;
    }
    int best = -1, best_stamp = INT_MAX;
    for (int e : inst.shared_edges(a, b))
      if (stamp[e] >= 0 && stamp[e] < best_stamp) {
        best = e;
        best_stamp = stamp[e];
      }
    return best >= 0 ? best : current;
  }

  void process_edge(int e, int near_v) {
    const std::vector<int>& lines = inst.edge_lines[e];
    if (!lines.empty()) {
      for (int l : lines)
        if (insertion_vertex[l] < 0) insertion_vertex[l] = near_v;
      auto lookup = [&](int a, int b) { return crossing_edge(a, b, e); };
      int far_v = inst.other_end(e, near_v);
      std::vector<int> sigma = ordering::required_end_order(inst, e, near_v, lines, lookup);
      std::vector<int> tau = ordering::required_end_order(inst, e, far_v, lines, lookup);
      std::vector<int> target(tau.rbegin(), tau.rend());

      ordering::TokenPlan plan = ordering::merge_tokens(sigma, target);
      std::set<int> anchors;
      for (std::size_t t = 0; t < plan.expand.size(); ++t) {
        bool all_carried = true;
        for (int l : plan.expand[t]) all_carried &= insertion_vertex[l] != near_v;
        if (all_carried) anchors.insert(static_cast<int>(t));
      }
      std::vector<BlockMove> token_moves;
      try {
        token_moves = ordering::schedule_moves(plan.from, plan.to, anchors);
      } catch (const Error&) {
        token_moves = ordering::schedule_moves(plan.from, plan.to, {});  // relax anchors
      }
      std::vector<BlockMove> moves = ordering::expand_token_moves(plan, token_moves);
      sol.edges[e] = oriented_edge_solution(inst, e, near_v, sigma, moves);
    }
    stamp[e] = clock++;
  }

  void expand_vertex(int v, int via_edge) {
    const auto& rot = inst.rotation[v];
    int n = static_cast<int>(rot.size());
    int pos = inst.rotation_pos(v, via_edge);
    std::vector<int> fresh;
    for (int t = 1; t < n; ++t) {
      int x = rot[(pos + t) % n];
      if (stamp[x] >= 0) continue;
      process_edge(x, v);
      fresh.push_back(x);
    }
    for (int x : fresh) expand_vertex(inst.other_end(x, v), x);
  }

  void run(const std::string& start_edge_id) {
    while (true) {
      int start = -1;
      if (!start_edge_id.empty() && stamp[inst.edge_index.at(start_edge_id)] < 0)
        start = inst.edge_index.at(start_edge_id);
      if (start < 0) {
        std::string best_id;
        for (int e = 0; e < inst.num_edges(); ++e) {
          if (stamp[e] >= 0) continue;
          auto [a, b] = inst.edge_ends[e];
          if (!inst.is_terminal(a) && !inst.is_terminal(b)) continue;
          if (start < 0 || inst.edge_id(e) < best_id) {
            start = e;
            best_id = inst.edge_id(e);
          }
        }
      }
      if (start < 0) {
        for (int e = 0; e < inst.num_edges(); ++e)
          if (stamp[e] < 0) start = e;
      }
      if (start < 0) return;
      auto [a, b] = inst.edge_ends[start];
      int near_v = inst.is_terminal(a) ? a : (inst.is_terminal(b) ? b : a);
      process_edge(start, near_v);
      expand_vertex(inst.other_end(start, near_v), start);
      expand_vertex(near_v, start);
    }
  }
};

}  // namespace treedetail

struct TreeSolveOptions {
  std::string start_edge;  // default: the smallest-id terminal-incident edge
};

/// Inserts lines one by one along a depth-first edge traversal; each inserted
/// line crosses at most once per edge at its insertion vertex, which caps the
/// total at 2|L|-3 monotone block crossings.
inline Solution solve_tree_insertion(const Instance& inst, const TreeSolveOptions& opts = {}) {
  treedetail::require_forest(inst);
  treedetail::InsertionRun run(inst, nullptr);
  run.run(opts.start_edge);
  return run.sol;
}

// ---------------------------------------------------------------------------
// Upward trees.
// ---------------------------------------------------------------------------

/// Tree with all line sources on top and sinks on the bottom; the two terminal
/// sequences define the permutation to sort.
struct UpwardTreeInstance {
  Instance inst;
  std::vector<int> top_lines;     // line indices, left to right along the top
  std::vector<int> bottom_lines;  // line indices, left to right along the bottom
};

inline UpwardTreeInstance make_upward(const Instance& inst) {
  if (!inst.doc.upward) throw Error(Code::NOT_UPWARD, "instance carries no upward block");
  UpwardTreeInstance u;
  u.inst = inst;
  auto line_of_terminal = [&](const std::string& tid) {
    auto it = inst.vertex_index.find(tid);
    if (it == inst.vertex_index.end() || !inst.is_terminal(it->second))
      throw Error(Code::NOT_UPWARD, tid + " is not a terminal");
    int v = it->second;
    for (int l = 0; l < inst.num_lines(); ++l)
      if (inst.line_vertices[l].front() == v || inst.line_vertices[l].back() == v) return l;
    throw Error(Code::NOT_UPWARD, "terminal " + tid + " has no line");
  };
  for (const std::string& t : inst.doc.upward->top) u.top_lines.push_back(line_of_terminal(t));
  for (const std::string& t : inst.doc.upward->bottom) u.bottom_lines.push_back(line_of_terminal(t));
  std::set<int> top_set(u.top_lines.begin(), u.top_lines.end());
  std::set<int> bot_set(u.bottom_lines.begin(), u.bottom_lines.end());
  if (static_cast<int>(top_set.size()) != inst.num_lines() ||
      static_cast<int>(bot_set.size()) != inst.num_lines())
    throw Error(Code::NOT_UPWARD, "top/bottom orders must list every line once");

  // orientability: along every edge all lines run the same way top-to-bottom
  std::map<int, int> down_dir;  // edge -> vertex it descends to
  for (std::size_t i = 0; i < u.top_lines.size(); ++i) {
    int l = u.top_lines[i];
    int tv = inst.vertex_index.at(inst.doc.upward->top[i]);
    std::vector<int> verts = inst.line_vertices[l];
    std::vector<int> edges = inst.line_edges[l];
    if (verts.back() == tv) {
      std::reverse(verts.begin(), verts.end());
      std::reverse(edges.begin(), edges.end());
    }
    for (std::size_t k = 0; k < edges.size(); ++k) {
      auto it = down_dir.find(edges[k]);
      if (it == down_dir.end())
        down_dir[edges[k]] = verts[k + 1];
      else if (it->second != verts[k + 1])
        throw Error(Code::NOT_UPWARD, "edge " + inst.edge_id(edges[k]) + " is traversed both ways");
    }
  }
  return u;
}

/// Permutation read along the top terminals when the bottom terminals are
/// relabeled 1..n left to right.
inline Permutation top_permutation(const UpwardTreeInstance& u) {
  std::map<int, int> bottom_pos;
  for (std::size_t i = 0; i < u.bottom_lines.size(); ++i)
    bottom_pos[u.bottom_lines[i]] = static_cast<int>(i) + 1;
  Permutation p;
  for (int l : u.top_lines) p.elems.push_back(bottom_pos.at(l));
  return p;
}

struct UpwardRemoval {
  std::string removed;
  std::string partner;
  bool removed_after;  // removed line sits right of the partner on both rows
};

struct UpwardSimplification {
  UpwardTreeInstance reduced;
  std::vector<UpwardRemoval> log;
};

namespace treedetail {

inline InstanceDoc drop_line(const InstanceDoc& doc, const std::string& line_id) {
  InstanceDoc out = doc;
  auto lit = std::find_if(out.lines.begin(), out.lines.end(),
                          [&](const LineRecord& l) { return l.id == line_id; });
  std::set<std::string> dead_vertices{lit->vertices.front(), lit->vertices.back()};
  out.lines.erase(lit);
  std::set<std::string> dead_edges;
  out.edges.erase(std::remove_if(out.edges.begin(), out.edges.end(),
                                 [&](const EdgeRecord& e) {
                                   bool dead = dead_vertices.count(e.u) || dead_vertices.count(e.v);
                                   if (dead) dead_edges.insert(e.id);
                                   return dead;
                                 }),
                  out.edges.end());
  out.vertices.erase(std::remove_if(out.vertices.begin(), out.vertices.end(),
                                    [&](const VertexRecord& v) { return dead_vertices.count(v.id); }),
                     out.vertices.end());
  for (auto& v : out.vertices) {
    auto& rot = v.rotation;
    rot.erase(std::remove_if(rot.begin(), rot.end(),
                             [&](const std::string& e) { return dead_edges.count(e); }),
              rot.end());
  }
  if (out.upward) {
    auto drop = [&](std::vector<std::string>& seq) {
      seq.erase(std::remove_if(seq.begin(), seq.end(),
                               [&](const std::string& t) { return dead_vertices.count(t); }),
                seq.end());
    };
    drop(out.upward->top);
    drop(out.upward->bottom);
  }
  // removals can strand an inner vertex at degree one
  std::map<std::string, int> deg;
  for (const auto& e : out.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (auto& v : out.vertices) v.terminal = deg[v.id] == 1;
  return out;
}

}  // namespace treedetail

/// Removes, one at a time, the right member of any pair of non-crossing lines
/// adjacent in both terminal rows and sharing an edge; each removal is logged
/// with its kept partner for reinsertion.
inline UpwardSimplification simplify_upward(const UpwardTreeInstance& u) {
  UpwardSimplification out;
  out.reduced = u;
  bool changed = true;
  while (changed) {
    changed = false;
    const UpwardTreeInstance& cur = out.reduced;
    std::map<int, int> bottom_pos;
    for (std::size_t i = 0; i < cur.bottom_lines.size(); ++i)
      bottom_pos[cur.bottom_lines[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i + 1 < cur.top_lines.size() && !changed; ++i) {
      int a = cur.top_lines[i], b = cur.top_lines[i + 1];
      if (std::abs(bottom_pos.at(a) - bottom_pos.at(b)) != 1) continue;
      if (cur.inst.shared_edges(a, b).empty()) continue;
      if (must_cross(cur.inst, a, b) != CrossKind::MustNotCross) continue;
      out.log.push_back({cur.inst.line_id(b), cur.inst.line_id(a), true});
      InstanceDoc reduced_doc = treedetail::drop_line(cur.inst.doc, cur.inst.line_id(b));
      out.reduced = make_upward(validate_or_throw(reduced_doc));
      changed = true;
    }
  }
  return out;
}

/// Simplify, order the reduced lines by tree insertion, then reinsert the
/// removed lines parallel to their partners, first relocating each partner
/// crossing onto an edge the whole parallel bundle shares.
inline Solution solve_upward_mbcm(const UpwardTreeInstance& u) {
  UpwardSimplification simp = simplify_upward(u);
  const Instance& red = simp.reduced.inst;
  Solution reduced_sol = solve_tree_insertion(red);

  // crossing edge per crossing pair, keyed by line ids
  std::map<std::pair<std::string, std::string>, std::string> cross_edge;
  auto key_of = [](std::string a, std::string b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  for (int a = 0; a < red.num_lines(); ++a)
    for (int b = a + 1; b < red.num_lines(); ++b) {
      if (must_cross(red, a, b) != CrossKind::MustCross) continue;
      int host = -1;
      for (int e : red.shared_edges(a, b)) {
        const EdgeSolution* es = reduced_sol.find(e);
        if (es && detail::edge_flips(*es, a, b) > 0) host = e;
      }
      if (host < 0) throw Error(Code::SIMPLIFICATION_FAILED, "reduced solution misses a crossing");
      cross_edge[key_of(red.line_id(a), red.line_id(b))] = red.edge_id(host);
    }

  const Instance& full = u.inst;
  std::set<std::string> present;
  for (int l = 0; l < red.num_lines(); ++l) present.insert(red.line_id(l));
  std::map<std::string, std::vector<std::string>> bundle;  // kept root -> parallels
  std::map<std::string, std::string> root_of;
  for (const std::string& id : present) {
    bundle[id] = {id};
    root_of[id] = id;
  }

  auto edges_of_line = [&](const std::string& id) {
    std::set<int> out;
    for (int e : full.line_edges[full.line_index.at(id)]) out.insert(e);
    return out;
  };

  for (auto it = simp.log.rbegin(); it != simp.log.rend(); ++it) {
    const std::string& b_id = it->removed;
    const std::string& a_id = it->partner;
    int b = full.line_index.at(b_id);
    std::set<int> b_edges = edges_of_line(b_id);
    for (const std::string& c_id : present) {
      int c = full.line_index.at(c_id);
      if (must_cross(full, c, b) != CrossKind::MustCross) continue;
      auto akey = key_of(c_id, a_id);
      auto xit = cross_edge.find(akey);
      if (xit == cross_edge.end())
        throw Error(Code::SIMPLIFICATION_FAILED,
                    "parallel line crosses " + c_id + " but its partner does not");
      int host = full.edge_index.at(xit->second);
      if (b_edges.count(host)) {
        cross_edge[key_of(c_id, b_id)] = xit->second;
        continue;
      }
      // relocate the crossing onto an edge shared by c, b and the whole bundle
      std::set<int> cands = b_edges;
      auto intersect = [&](const std::set<int>& other) {
        std::set<int> res;
        for (int e : cands)
          if (other.count(e)) res.insert(e);
        cands = res;
      };
      intersect(edges_of_line(c_id));
      for (const std::string& m : bundle[root_of.at(a_id)]) intersect(edges_of_line(m));
      if (cands.empty())
        throw Error(Code::SIMPLIFICATION_FAILED, "no common edge to relocate a crossing onto");
      // deepest candidate along b, away from its source: crossings sit as
      // close to the divergence as possible, like the insertion itself
      std::vector<int> b_path = full.line_edges[b];
      int top_term = -1;
      for (std::size_t i = 0; i < u.top_lines.size(); ++i)
        if (u.top_lines[i] == b) top_term = full.vertex_index.at(full.doc.upward->top[i]);
      if (full.line_vertices[b].back() == top_term)
        std::reverse(b_path.begin(), b_path.end());
      int pick = -1;
      for (int e : b_path)
        if (cands.count(e)) pick = e;
      std::string host_id = full.edge_id(pick);
      for (const std::string& m : bundle[root_of.at(a_id)]) cross_edge[key_of(c_id, m)] = host_id;
      cross_edge[key_of(c_id, b_id)] = host_id;
    }
    root_of[b_id] = root_of.at(a_id);
    bundle[root_of.at(a_id)].push_back(b_id);
    present.insert(b_id);
  }

  // rebuild over the full instance with the pinned crossing edges
  std::map<std::pair<int, int>, int> forced;
  for (auto& [ids, eid] : cross_edge) {
    auto key = std::minmax(full.line_index.at(ids.first), full.line_index.at(ids.second));
    forced[{key.first, key.second}] = full.edge_index.at(eid);
  }
  treedetail::InsertionRun run(full, &forced);
  run.run("");
  return run.sol;
}

}  // namespace blockline
