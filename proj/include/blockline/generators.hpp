#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "blockline/instance.hpp"

namespace blockline {

// ---------------------------------------------------------------------------
// Projective-plane Steiner systems S(q^2+q+1, q+1, 2), prime q.
// ---------------------------------------------------------------------------

struct SteinerSystem {
  int q = 0;
  int num_points = 0;
  std::vector<std::vector<int>> blocks;  // each of size q+1, every point pair in exactly one
};

namespace detail {

inline bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

/// Terminal flags follow from the final degrees.
inline void set_terminal_flags(InstanceDoc& doc) {
  std::map<std::string, int> deg;
  for (const auto& e : doc.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (auto& v : doc.vertices) v.terminal = deg[v.id] == 1;
}

}  // namespace detail

/// Points and lines of the projective plane of prime order q, as canonical
/// homogeneous triples over the q-element field.
inline SteinerSystem gen_steiner(int q) {
  if (!detail::is_prime(q))
    throw Error(Code::NOT_PRIME, "projective construction needs a prime order, got " + std::to_string(q));
  std::vector<std::array<int, 3>> points;
  for (int y = 0; y < q; ++y)
    for (int z = 0; z < q; ++z) points.push_back({1, y, z});
  for (int z = 0; z < q; ++z) points.push_back({0, 1, z});
  points.push_back({0, 0, 1});

  SteinerSystem s;
  s.q = q;
  s.num_points = static_cast<int>(points.size());
  for (const auto& dual : points) {  // lines are dual points
    std::vector<int> block;
    for (int p = 0; p < s.num_points; ++p) {
      int dot = dual[0] * points[p][0] + dual[1] * points[p][1] + dual[2] * points[p][2];
      if (dot % q == 0) block.push_back(p);
    }
    s.blocks.push_back(std::move(block));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Worst-case instance: one busy edge per point, one line per block, rotations
// at the two edge endpoints reversing the q+1 lines.
// ---------------------------------------------------------------------------

inline Instance gen_worstcase_graph(int q) {
  SteinerSystem s = gen_steiner(q);
  InstanceDoc doc;
  int np = s.num_points;
  int nl = static_cast<int>(s.blocks.size());

  auto point_a = [](int i) { return "p" + std::to_string(i) + "a"; };
  auto point_b = [](int i) { return "p" + std::to_string(i) + "b"; };
  for (int i = 0; i < np; ++i) {
    doc.vertices.push_back({point_a(i), {}, false});
    doc.vertices.push_back({point_b(i), {}, false});
    doc.edges.push_back({"E" + std::to_string(i), point_a(i), point_b(i)});
  }

  // arrival/departure edge of each line at each of its points
  std::map<std::pair<int, int>, std::string> arrive, depart;
  for (int t = 0; t < nl; ++t) {
    std::vector<int> pts = s.blocks[t];
    std::sort(pts.begin(), pts.end());
    std::string ts = "Ts" + std::to_string(t), te = "Te" + std::to_string(t);
    doc.vertices.push_back({ts, {}, true});
    doc.vertices.push_back({te, {}, true});
    std::vector<std::string> route{ts};
    std::string prev_edge = "ts" + std::to_string(t);
    doc.edges.push_back({prev_edge, ts, point_a(pts.front())});
    arrive[{t, pts.front()}] = prev_edge;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      route.push_back(point_a(pts[j]));
      route.push_back(point_b(pts[j]));
      if (j + 1 < pts.size()) {
        std::string c = "c" + std::to_string(pts[j]) + "_" + std::to_string(pts[j + 1]);
        doc.edges.push_back({c, point_b(pts[j]), point_a(pts[j + 1])});
        depart[{t, pts[j]}] = c;
        arrive[{t, pts[j + 1]}] = c;
      }
    }
    std::string tail = "te" + std::to_string(t);
    doc.edges.push_back({tail, point_b(pts.back()), te});
    depart[{t, pts.back()}] = tail;
    route.push_back(te);
    doc.lines.push_back({"L" + std::to_string(t), route});
    doc.vertices[2 * np + 2 * t].rotation = {prev_edge};
    doc.vertices[2 * np + 2 * t + 1].rotation = {tail};
  }

  // lines through each point, ascending; reversing rotations on the two sides
  for (int i = 0; i < np; ++i) {
    std::vector<int> through;
    for (int t = 0; t < nl; ++t)
      if (std::find(s.blocks[t].begin(), s.blocks[t].end(), i) != s.blocks[t].end())
        through.push_back(t);
    std::vector<std::string> rot_a{"E" + std::to_string(i)};
    std::vector<std::string> rot_b{"E" + std::to_string(i)};
    for (int t : through) rot_a.push_back(arrive.at({t, i}));
    for (int t : through) rot_b.push_back(depart.at({t, i}));
    doc.vertices[2 * i].rotation = rot_a;
    doc.vertices[2 * i + 1].rotation = rot_b;
  }
  detail::set_terminal_flags(doc);
  return validate_or_throw(doc);
}

// ---------------------------------------------------------------------------
// Seeded random instances.
// ---------------------------------------------------------------------------

enum class RandomKind { Edge, Path, Tree, Upward, Graph };

struct RandomParams {
  int lines = 4;
  int length = 3;       // path skeleton edges
  int vertices = 6;     // tree / graph skeleton vertices
  int extra_edges = 2;  // graph: edges beyond a spanning tree
  std::vector<int> perm;  // edge kind: explicit permutation; empty = random
  std::uint64_t seed = 1;
};

namespace detail {

inline std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Instance gen_edge_kind(const RandomParams& params, std::mt19937_64& rng) {
  std::vector<int> p = params.perm;
  if (p.empty()) p = random_perm(params.lines, rng);
  int n = static_cast<int>(p.size());
  if (n <= 0) throw Error(Code::INVALID_PARAMS, "edge instance needs at least one line");
  InstanceDoc doc;
  doc.vertices.push_back({"u", {}, false});
  doc.vertices.push_back({"v", {}, false});
  doc.edges.push_back({"e", "u", "v"});
  std::vector<std::string> rot_u{"e"}, rot_v{"e"};
  for (int i = 1; i <= n; ++i) {
    std::string s = "s" + std::to_string(i), t = "t" + std::to_string(i);
    doc.vertices.push_back({s, {"a" + std::to_string(i)}, true});
    doc.vertices.push_back({t, {"b" + std::to_string(i)}, true});
    doc.edges.push_back({"a" + std::to_string(i), s, "u"});
    doc.edges.push_back({"b" + std::to_string(i), "v", t});
    doc.lines.push_back({"l" + std::to_string(i), {s, "u", "v", t}});
  }
  // ccw walk from e reads the rotation backwards, so list the start stubs in
  // reverse permutation order to make pi^0 equal to p
  for (int i = n - 1; i >= 0; --i) rot_u.push_back("a" + std::to_string(p[i]));
  for (int i = 1; i <= n; ++i) rot_v.push_back("b" + std::to_string(i));
  doc.vertices[0].rotation = rot_u;
  doc.vertices[1].rotation = rot_v;
  detail::set_terminal_flags(doc);
  return validate_or_throw(doc);
}

inline Instance gen_path_kind(const RandomParams& params, std::mt19937_64& rng) {
  int m = params.length;
  int n = params.lines;
  if (m < 1 || n < 1) throw Error(Code::INVALID_PARAMS, "path instance needs lines and length >= 1");
  InstanceDoc doc;
  for (int i = 0; i <= m; ++i) doc.vertices.push_back({"v" + std::to_string(i), {}, false});
  for (int i = 0; i < m; ++i)
    doc.edges.push_back({"E" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i + 1)});

  struct L {
    int from, to;
    bool start_top, end_top;
  };
  std::vector<L> ls(n);
  for (int i = 0; i < n; ++i) {
    int a = static_cast<int>(rng() % m);
    int b = a + 1 + static_cast<int>(rng() % (m - a));
    ls[i] = {a, b, rng() % 2 == 0, rng() % 2 == 0};
  }
  for (int i = 0; i < n; ++i) {
    std::string s = "s" + std::to_string(i), t = "t" + std::to_string(i);
    doc.vertices.push_back({s, {"sa" + std::to_string(i)}, true});
    doc.vertices.push_back({t, {"ta" + std::to_string(i)}, true});
    doc.edges.push_back({"sa" + std::to_string(i), s, "v" + std::to_string(ls[i].from)});
    doc.edges.push_back({"ta" + std::to_string(i), "v" + std::to_string(ls[i].to), t});
    std::vector<std::string> verts{s};
    for (int v = ls[i].from; v <= ls[i].to; ++v) verts.push_back("v" + std::to_string(v));
    verts.push_back(t);
    doc.lines.push_back({"l" + std::to_string(i), verts});
  }

  // rotations: [e_in, top enders, top starters, e_out, bottom starters, bottom enders]
  for (int v = 0; v <= m; ++v) {
    std::vector<std::string> te, ts, be, bs;
    for (int i = 0; i < n; ++i) {
      if (ls[i].from == v) (ls[i].start_top ? ts : bs).push_back("sa" + std::to_string(i));
      if (ls[i].to == v) (ls[i].end_top ? te : be).push_back("ta" + std::to_string(i));
    }
    for (auto* g : {&te, &ts, &be, &bs}) std::shuffle(g->begin(), g->end(), rng);
    std::vector<std::string> rot;
    if (v > 0) rot.push_back("E" + std::to_string(v - 1));
    rot.insert(rot.end(), te.begin(), te.end());
    rot.insert(rot.end(), ts.begin(), ts.end());
    if (v < m) rot.push_back("E" + std::to_string(v));
    rot.insert(rot.end(), bs.begin(), bs.end());
    rot.insert(rot.end(), be.begin(), be.end());
    doc.vertices[v].rotation = rot;
  }
  detail::set_terminal_flags(doc);
  return validate_or_throw(doc);
}

inline std::vector<int> tree_path(const std::vector<int>& parent, int a, int b) {
  std::vector<int> da, db;
  auto depth = [&](int x) {
    int d = 0;
    while (parent[x] >= 0) {
      x = parent[x];
      ++d;
    }
    return d;
  };
  int xa = a, xb = b, ea = depth(a), eb = depth(b);
  std::vector<int> left{xa}, right{xb};
  while (ea > eb) {
    xa = parent[xa];
    left.push_back(xa);
    --ea;
  }
  while (eb > ea) {
    xb = parent[xb];
    right.push_back(xb);
    --eb;
  }
  while (xa != xb) {
    xa = parent[xa];
    xb = parent[xb];
    left.push_back(xa);
    right.push_back(xb);
  }
  right.pop_back();
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

inline Instance gen_tree_kind(const RandomParams& params, std::mt19937_64& rng) {
  int k = std::max(2, params.vertices);
  int n = params.lines;
  if (n < 1) throw Error(Code::INVALID_PARAMS, "tree instance needs at least one line");
  std::vector<int> parent(k, -1);
  for (int i = 1; i < k; ++i) parent[i] = static_cast<int>(rng() % i);

  InstanceDoc doc;
  for (int i = 0; i < k; ++i) doc.vertices.push_back({"v" + std::to_string(i), {}, false});
  for (int i = 1; i < k; ++i)
    doc.edges.push_back({"T" + std::to_string(i), "v" + std::to_string(parent[i]), "v" + std::to_string(i)});

  for (int i = 0; i < n; ++i) {
    int a = static_cast<int>(rng() % k), b;
    do b = static_cast<int>(rng() % k);
    while (b == a);
    std::vector<int> pathv = tree_path(parent, a, b);
    std::string s = "s" + std::to_string(i), t = "t" + std::to_string(i);
    doc.vertices.push_back({s, {"sa" + std::to_string(i)}, true});
    doc.vertices.push_back({t, {"ta" + std::to_string(i)}, true});
    doc.edges.push_back({"sa" + std::to_string(i), s, "v" + std::to_string(pathv.front())});
    doc.edges.push_back({"ta" + std::to_string(i), "v" + std::to_string(pathv.back()), t});
    std::vector<std::string> verts{s};
    for (int v : pathv) verts.push_back("v" + std::to_string(v));
    verts.push_back(t);
    doc.lines.push_back({"l" + std::to_string(i), verts});
  }

  // random rotation at every skeleton vertex
  std::map<std::string, std::vector<std::string>> inc;
  for (const auto& e : doc.edges) {
    inc[e.u].push_back(e.id);
    inc[e.v].push_back(e.id);
  }
  for (auto& v : doc.vertices) {
    auto rot = inc[v.id];
    std::shuffle(rot.begin(), rot.end(), rng);
    v.rotation = rot;
  }
  detail::set_terminal_flags(doc);
  return validate_or_throw(doc);
}

/// Trunk-rooted upward tree: all lines enter through one top vertex and fan
/// out through a random split hierarchy to the bottom terminals; the top
/// permutation is read off the rotation at the trunk head.
inline Instance gen_upward_kind(const RandomParams& params, std::mt19937_64& rng) {
  int n = params.lines;
  if (n < 1) throw Error(Code::INVALID_PARAMS, "upward instance needs at least one line");
  std::vector<int> perm = params.perm.empty() ? random_perm(n, rng) : params.perm;

  InstanceDoc doc;
  doc.vertices.push_back({"r", {}, false});
  doc.vertices.push_back({"s0", {}, false});
  doc.edges.push_back({"trunk", "r", "s0"});

  struct Node {
    std::string id;
    int lo, hi;  // bottom positions covered
  };
  int next_internal = 1;
  std::vector<Node> stack{{"s0", 1, n}};
  std::map<std::string, std::vector<std::string>> kids;  // vertex -> children, left to right
  std::map<std::string, std::string> parent_of;
  if (n == 1) {
    kids["s0"].push_back("b1");
    parent_of["b1"] = "s0";
    stack.clear();
  }
  while (!stack.empty()) {
    Node nd = stack.back();
    stack.pop_back();
    if (nd.lo == nd.hi) continue;  // leaf handled later
    int span = nd.hi - nd.lo + 1;
    int parts = 2 + static_cast<int>(rng() % 2);
    parts = std::min(parts, span);
    std::set<int> cuts;
    while (static_cast<int>(cuts.size()) < parts - 1)
      cuts.insert(nd.lo + static_cast<int>(rng() % (span - 1)));
    int lo = nd.lo;
    std::vector<int> bounds(cuts.begin(), cuts.end());
    bounds.push_back(nd.hi);
    for (int hi : bounds) {
      std::string cid;
      if (lo == hi)
        cid = "b" + std::to_string(lo);  // bottom terminal vertex
      else
        cid = "m" + std::to_string(next_internal++);
      kids[nd.id].push_back(cid);
      parent_of[cid] = nd.id;
      if (lo != hi) stack.push_back({cid, lo, hi});
      lo = hi + 1;
    }
  }

  // vertices and edges of the split tree
  std::map<std::string, std::string> edge_to_parent;
  std::vector<std::string> internal_ids;
  for (auto& [pid, cs] : kids)
    for (auto& cid : cs) {
      std::string eid = "d_" + cid;
      doc.edges.push_back({eid, pid, cid});
      edge_to_parent[cid] = eid;
      if (cid[0] == 'm') internal_ids.push_back(cid);
    }
  for (const std::string& id : internal_ids) doc.vertices.push_back({id, {}, false});
  for (int i = 1; i <= n; ++i) doc.vertices.push_back({"b" + std::to_string(i), {}, true});

  // top terminals, one per line, attached at r
  for (int i = 1; i <= n; ++i) {
    doc.vertices.push_back({"t" + std::to_string(i), {"u_" + std::to_string(i)}, true});
    doc.edges.push_back({"u_" + std::to_string(i), "t" + std::to_string(i), "r"});
  }

  // lines: bottom position j climbs from b_j to r and exits at t_j
  for (int j = 1; j <= n; ++j) {
    std::vector<std::string> verts{"b" + std::to_string(j)};
    std::string cur = "b" + std::to_string(j);
    while (cur != "s0") {
      cur = parent_of.at(cur);
      verts.push_back(cur);
    }
    verts.push_back("r");
    verts.push_back("t" + std::to_string(j));
    std::reverse(verts.begin(), verts.end());
    doc.lines.push_back({"l" + std::to_string(j), verts});
  }

  // rotations: top vertex lists the trunk then the top stubs in left-right
  // order; split vertices list the parent then children right to left
  {
    std::vector<std::string> rot{"trunk"};
    for (int i = 0; i < n; ++i) rot.push_back("u_" + std::to_string(perm[i]));
    doc.vertices[0].rotation = rot;
  }
  auto rot_internal = [&](const std::string& id, const std::string& parent_edge) {
    std::vector<std::string> rot{parent_edge};
    auto cs = kids[id];
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) rot.push_back("d_" + *it);
    return rot;
  };
  for (auto& v : doc.vertices) {
    if (v.id == "s0") v.rotation = rot_internal("s0", "trunk");
    else if (v.id[0] == 'm') v.rotation = rot_internal(v.id, edge_to_parent[v.id]);
    else if (v.id[0] == 'b') v.rotation = {edge_to_parent[v.id]};
  }

  doc.upward = UpwardRecord{};
  for (int i = 0; i < n; ++i) doc.upward->top.push_back("t" + std::to_string(perm[i]));
  for (int j = 1; j <= n; ++j) doc.upward->bottom.push_back("b" + std::to_string(j));
  detail::set_terminal_flags(doc);
  return validate_or_throw(doc);
}

inline bool local_forms_path(const std::vector<std::vector<std::string>>& line_verts, int a, int b,
                             const std::map<std::pair<std::string, std::string>, bool>& has_edge) {
  std::set<std::string> sv;
  std::set<std::string> va(line_verts[a].begin(), line_verts[a].end());
  for (const auto& v : line_verts[b])
    if (va.count(v)) sv.insert(v);
  std::set<std::pair<std::string, std::string>> se;
  auto edges_of = [&](int l) {
    std::set<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i + 1 < line_verts[l].size(); ++i) {
      auto p = std::minmax(line_verts[l][i], line_verts[l][i + 1]);
      out.insert({p.first, p.second});
    }
    return out;
  };
  auto ea = edges_of(a);
  for (const auto& e : edges_of(b))
    if (ea.count(e)) se.insert(e);
  (void)has_edge;
  if (sv.empty()) return true;
  if (se.empty()) return sv.size() == 1;
  std::map<std::string, int> deg;
  for (const auto& v : sv) deg[v] = 0;
  for (const auto& e : se) {
    ++deg[e.first];
    ++deg[e.second];
  }
  int ones = 0;
  for (auto& [v, d] : deg) {
    if (d == 0 || d > 2) return false;
    if (d == 1) ++ones;
  }
  return ones == 2 && se.size() + 1 == sv.size();
}

inline Instance gen_graph_kind(const RandomParams& params, std::mt19937_64& rng) {
  int k = std::max(3, params.vertices);
  int n = params.lines;
  if (n < 1) throw Error(Code::INVALID_PARAMS, "graph instance needs at least one line");
  std::vector<int> parent(k, -1);
  for (int i = 1; i < k; ++i) parent[i] = static_cast<int>(rng() % i);
  std::set<std::pair<int, int>> eset;
  for (int i = 1; i < k; ++i) eset.insert(std::minmax(parent[i], i));
  for (int t = 0; t < params.extra_edges * 4 && static_cast<int>(eset.size()) < k - 1 + params.extra_edges; ++t) {
    int a = static_cast<int>(rng() % k), b = static_cast<int>(rng() % k);
    if (a != b) eset.insert(std::minmax(a, b));
  }

  InstanceDoc doc;
  for (int i = 0; i < k; ++i) doc.vertices.push_back({"v" + std::to_string(i), {}, false});
  std::map<std::pair<int, int>, std::string> edge_id;
  std::vector<std::vector<int>> adj(k);
  int ei = 0;
  for (auto& [a, b] : eset) {
    std::string id = "E" + std::to_string(ei++);
    edge_id[{a, b}] = id;
    doc.edges.push_back({id, "v" + std::to_string(a), "v" + std::to_string(b)});
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  std::vector<std::vector<std::string>> accepted;
  int tries = 0;
  while (static_cast<int>(accepted.size()) < n && tries < 80 * n) {
    ++tries;
    int start = static_cast<int>(rng() % k);
    std::vector<int> walk{start};
    std::set<int> used{start};
    int len = 1 + static_cast<int>(rng() % std::max(1, k - 1));
    while (static_cast<int>(walk.size()) <= len) {
      std::vector<int> options;
      for (int nb : adj[walk.back()])
        if (!used.count(nb)) options.push_back(nb);
      if (options.empty()) break;
      int nxt = options[rng() % options.size()];
      walk.push_back(nxt);
      used.insert(nxt);
    }
    if (walk.size() < 2) continue;
    std::vector<std::string> verts;
    for (int v : walk) verts.push_back("v" + std::to_string(v));
    accepted.push_back(verts);
    bool ok = true;
    std::map<std::pair<std::string, std::string>, bool> dummy;
    for (int other = 0; other + 1 < static_cast<int>(accepted.size()) && ok; ++other)
      ok = local_forms_path(accepted, other, static_cast<int>(accepted.size()) - 1, dummy);
    if (!ok) accepted.pop_back();
  }
  if (accepted.empty()) throw Error(Code::INVALID_PARAMS, "could not place any line; enlarge the graph");

  for (int i = 0; i < static_cast<int>(accepted.size()); ++i) {
    std::string s = "s" + std::to_string(i), t = "t" + std::to_string(i);
    doc.vertices.push_back({s, {"sa" + std::to_string(i)}, true});
    doc.vertices.push_back({t, {"ta" + std::to_string(i)}, true});
    doc.edges.push_back({"sa" + std::to_string(i), s, accepted[i].front()});
    doc.edges.push_back({"ta" + std::to_string(i), accepted[i].back(), t});
    std::vector<std::string> verts{s};
    verts.insert(verts.end(), accepted[i].begin(), accepted[i].end());
    verts.push_back(t);
    doc.lines.push_back({"l" + std::to_string(i), verts});
  }

  std::map<std::string, std::vector<std::string>> inc;
  for (const auto& e : doc.edges) {
    inc[e.u].push_back(e.id);
    inc[e.v].push_back(e.id);
  }
  for (auto& v : doc.vertices) {
    auto rot = inc[v.id];
    std::shuffle(rot.begin(), rot.end(), rng);
    v.rotation = rot;
  }
  detail::set_terminal_flags(doc);
  return validate_or_throw(doc);
}

}  // namespace detail

/// Seeded, reproducible instance factory. Every kind yields an instance that
/// passes validate_instance; `edge` encodes a permutation on one skeleton edge.
inline Instance gen_random(RandomKind kind, const RandomParams& params) {
  std::mt19937_64 rng(params.seed * 0x9e3779b97f4a7c15ULL + static_cast<int>(kind) + 1);
  switch (kind) {
    case RandomKind::Edge: return detail::gen_edge_kind(params, rng);
    case RandomKind::Path: return detail::gen_path_kind(params, rng);
    case RandomKind::Tree: return detail::gen_tree_kind(params, rng);
    case RandomKind::Upward: return detail::gen_upward_kind(params, rng);
    case RandomKind::Graph: return detail::gen_graph_kind(params, rng);
  }
  throw Error(Code::INVALID_PARAMS, "unknown kind");
}

}  // namespace blockline
