#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "blockline/core.hpp"

namespace blockline {

struct VertexRecord {
  std::string id;
  std::vector<std::string> rotation;  // incident edge ids, clockwise
  bool terminal = false;
};

struct EdgeRecord {
  std::string id;
  std::string u;
  std::string v;
};

struct LineRecord {
  std::string id;
  std::vector<std::string> vertices;
};

struct UpwardRecord {
  std::vector<std::string> top;     // terminal ids, left to right
  std::vector<std::string> bottom;  // terminal ids, left to right
};

/// Raw parsed document; validate_instance turns it into an Instance.
struct InstanceDoc {
  std::vector<VertexRecord> vertices;
  std::vector<EdgeRecord> edges;
  std::vector<LineRecord> lines;
  std::optional<UpwardRecord> upward;
};

/// Validated embedded graph with a set of lines. Indices are dense; string ids
/// are kept for round-tripping. Immutable after construction.
class Instance {
 public:
  InstanceDoc doc;

  // dense lookups
  std::unordered_map<std::string, int> vertex_index;
  std::unordered_map<std::string, int> edge_index;
  std::unordered_map<std::string, int> line_index;

  std::vector<std::vector<int>> rotation;       // per vertex: edge indices, clockwise
  std::vector<std::pair<int, int>> edge_ends;   // per edge: (u, v) vertex indices
  std::vector<std::vector<int>> line_vertices;  // per line: vertex indices
  std::vector<std::vector<int>> line_edges;     // per line: edge indices
  std::vector<std::vector<int>> edge_lines;     // per edge: line indices, ascending
  std::vector<int> degree;                      // per vertex

  int num_vertices() const { return static_cast<int>(doc.vertices.size()); }
  int num_edges() const { return static_cast<int>(doc.edges.size()); }
  int num_lines() const { return static_cast<int>(doc.lines.size()); }

  const std::string& vertex_id(int v) const { return doc.vertices[v].id; }
  const std::string& edge_id(int e) const { return doc.edges[e].id; }
  const std::string& line_id(int l) const { return doc.lines[l].id; }

  bool is_terminal(int v) const { return degree[v] == 1; }

  int other_end(int e, int v) const {
    return edge_ends[e].first == v ? edge_ends[e].second : edge_ends[e].first;
  }

  int edge_between(int a, int b) const {
    auto it = edge_by_ends_.find(key(a, b));
    return it == edge_by_ends_.end() ? -1 : it->second;
  }

  bool line_uses_edge(int l, int e) const {
    return std::find(line_edges[l].begin(), line_edges[l].end(), e) != line_edges[l].end();
  }

  /// Edges shared by two lines, in the order line a traverses them.
  std::vector<int> shared_edges(int a, int b) const {
    std::vector<int> out;
    for (int e : line_edges[a])
      if (line_uses_edge(b, e)) out.push_back(e);
    return out;
  }

  /// The two edges of line l incident to vertex v (one if l terminates at v).
  std::vector<int> line_edges_at(int l, int v) const {
    std::vector<int> out;
    const auto& lv = line_vertices[l];
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (lv[i] != v) continue;
      if (i > 0) out.push_back(line_edges[l][i - 1]);
      if (i + 1 < lv.size()) out.push_back(line_edges[l][i]);
      break;
    }
    return out;
  }

  /// For a terminal-incident edge, the single line through it, or -1.
  int terminal_line(int e) const {
    return edge_lines[e].size() == 1 ? edge_lines[e][0] : (edge_lines[e].empty() ? -1 : -2);
  }

  /// Position of edge e in the rotation at v.
  int rotation_pos(int v, int e) const {
    const auto& rot = rotation[v];
    for (std::size_t i = 0; i < rot.size(); ++i)
      if (rot[i] == e) return static_cast<int>(i);
    return -1;
  }

  void build_index_maps() {
    edge_by_ends_.clear();
    for (int e = 0; e < num_edges(); ++e) edge_by_ends_[key(edge_ends[e].first, edge_ends[e].second)] = e;
  }

 private:
  static std::int64_t key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }
  std::map<std::int64_t, int> edge_by_ends_;
};

namespace detail {

/// Checks that the vertex/edge set `sv`, `se` forms a path (possibly a single
/// vertex or empty) inside the instance.
inline bool forms_path(const Instance& inst, const std::set<int>& sv, const std::set<int>& se) {
  if (sv.empty()) return se.empty();
  if (se.empty()) return sv.size() == 1;
  // every shared-edge endpoint must be a shared vertex
  std::map<int, int> deg;
  for (int v : sv) deg[v] = 0;
  for (int e : se) {
    auto [a, b] = inst.edge_ends[e];
    if (!sv.count(a) || !sv.count(b)) return false;
    ++deg[a];
    ++deg[b];
  }
  int ones = 0;
  for (auto& [v, d] : deg) {
    if (d == 0) return false;       // isolated shared vertex next to shared edges
    if (d > 2) return false;
    if (d == 1) ++ones;
  }
  if (ones != 2) return false;      // a cycle or disconnected union
  if (se.size() + 1 != sv.size()) return false;
  return true;  // degree profile + count make it a single path
}

}  // namespace detail

struct ValidationResult {
  std::optional<Instance> instance;
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Checks every structural invariant: simple lines joined edge by edge,
/// degree-1 unshared terminals, pairwise path intersections, and exact
/// rotations. On success the returned Instance carries all derived indices.
inline ValidationResult validate_instance(const InstanceDoc& doc) {
  ValidationResult res;
  Instance inst;
  inst.doc = doc;
  auto& issues = res.issues;

  for (int i = 0; i < static_cast<int>(doc.vertices.size()); ++i) {
    if (!inst.vertex_index.emplace(doc.vertices[i].id, i).second)
      issues.push_back({Code::BAD_ROTATION, "duplicate vertex id " + doc.vertices[i].id});
  }
  for (int i = 0; i < static_cast<int>(doc.edges.size()); ++i) {
    if (!inst.edge_index.emplace(doc.edges[i].id, i).second)
      issues.push_back({Code::BAD_ROTATION, "duplicate edge id " + doc.edges[i].id});
  }
  for (int i = 0; i < static_cast<int>(doc.lines.size()); ++i) {
    if (!inst.line_index.emplace(doc.lines[i].id, i).second)
      issues.push_back({Code::NON_SIMPLE_LINE, "duplicate line id " + doc.lines[i].id});
  }
  if (!issues.empty()) return res;

  int nv = inst.num_vertices(), ne = inst.num_edges(), nl = inst.num_lines();
  inst.edge_ends.resize(ne);
  inst.degree.assign(nv, 0);
  std::vector<std::vector<int>> incident(nv);
  for (int e = 0; e < ne; ++e) {
    auto itu = inst.vertex_index.find(doc.edges[e].u);
    auto itv = inst.vertex_index.find(doc.edges[e].v);
    if (itu == inst.vertex_index.end() || itv == inst.vertex_index.end() ||
        doc.edges[e].u == doc.edges[e].v) {
      issues.push_back({Code::BAD_ROTATION, "edge " + doc.edges[e].id + " has bad endpoints"});
      continue;
    }
    inst.edge_ends[e] = {itu->second, itv->second};
    incident[itu->second].push_back(e);
    incident[itv->second].push_back(e);
    ++inst.degree[itu->second];
    ++inst.degree[itv->second];
  }
  if (!issues.empty()) return res;
  inst.build_index_maps();

  // rotations: exactly the incident edges, each once
  inst.rotation.resize(nv);
  for (int v = 0; v < nv; ++v) {
    std::set<int> seen;
    bool bad = false;
    for (const std::string& eid : doc.vertices[v].rotation) {
      auto it = inst.edge_index.find(eid);
      if (it == inst.edge_index.end() || !seen.insert(it->second).second) {
        bad = true;
        break;
      }
      inst.rotation[v].push_back(it->second);
    }
    std::set<int> inc(incident[v].begin(), incident[v].end());
    if (bad || seen != inc)
      issues.push_back({Code::BAD_ROTATION,
                        "rotation at " + doc.vertices[v].id + " does not list the incident edges"});
  }

  // lines: simple paths, nonzero length
  inst.line_vertices.resize(nl);
  inst.line_edges.resize(nl);
  inst.edge_lines.assign(ne, {});
  for (int l = 0; l < nl; ++l) {
    const auto& ids = doc.lines[l].vertices;
    if (ids.size() < 2) {
      issues.push_back({Code::NON_SIMPLE_LINE, "line " + doc.lines[l].id + " has fewer than two vertices"});
      continue;
    }
    std::set<int> used;
    bool bad = false;
    for (const std::string& vid : ids) {
      auto it = inst.vertex_index.find(vid);
      if (it == inst.vertex_index.end() || !used.insert(it->second).second) {
        issues.push_back({Code::NON_SIMPLE_LINE, "line " + doc.lines[l].id + " repeats or misses vertex " + vid});
        bad = true;
        break;
      }
      inst.line_vertices[l].push_back(it->second);
    }
    if (bad) continue;
    for (std::size_t i = 0; i + 1 < inst.line_vertices[l].size(); ++i) {
      int e = inst.edge_between(inst.line_vertices[l][i], inst.line_vertices[l][i + 1]);
      if (e < 0) {
        issues.push_back({Code::NON_SIMPLE_LINE,
                          "line " + doc.lines[l].id + " jumps between non-adjacent vertices"});
        bad = true;
        break;
      }
      inst.line_edges[l].push_back(e);
    }
    if (bad) continue;
    for (int e : inst.line_edges[l]) inst.edge_lines[e].push_back(l);
  }
  if (!issues.empty()) return res;

  // terminal properties
  for (int v = 0; v < nv; ++v)
    if (doc.vertices[v].terminal != (inst.degree[v] == 1))
      issues.push_back({Code::TERMINAL_DEGREE,
                        "vertex " + doc.vertices[v].id + " terminal flag disagrees with its degree"});
  std::vector<int> endpoint_owner(nv, -1);
  for (int l = 0; l < nl; ++l) {
    for (int end : {inst.line_vertices[l].front(), inst.line_vertices[l].back()}) {
      if (inst.degree[end] != 1)
        issues.push_back({Code::TERMINAL_DEGREE,
                          "line " + doc.lines[l].id + " ends at non-terminal " + inst.vertex_id(end)});
      if (endpoint_owner[end] >= 0)
        issues.push_back({Code::SHARED_TERMINAL,
                          "lines " + inst.line_id(endpoint_owner[end]) + " and " + doc.lines[l].id +
                              " terminate at " + inst.vertex_id(end)});
      endpoint_owner[end] = l;
    }
  }

  // pairwise path intersections
  for (int a = 0; a < nl; ++a) {
    for (int b = a + 1; b < nl; ++b) {
      std::set<int> sv, se;
      std::set<int> av(inst.line_vertices[a].begin(), inst.line_vertices[a].end());
      for (int v : inst.line_vertices[b])
        if (av.count(v)) sv.insert(v);
      std::set<int> ae(inst.line_edges[a].begin(), inst.line_edges[a].end());
      for (int e : inst.line_edges[b])
        if (ae.count(e)) se.insert(e);
      if (!detail::forms_path(inst, sv, se))
        issues.push_back({Code::NON_PATH_INTERSECTION,
                          "lines " + inst.line_id(a) + " and " + inst.line_id(b) +
                              " do not intersect in a path"});
    }
  }

  if (issues.empty()) res.instance = std::move(inst);
  return res;
}

inline Instance validate_or_throw(const InstanceDoc& doc) {
  ValidationResult r = validate_instance(doc);
  if (!r.ok()) {
    std::string msg;
    for (const auto& i : r.issues) msg += std::string(code_name(i.code)) + ": " + i.detail + "; ";
    throw Error(r.issues.front().code, msg);
  }
  return *std::move(r.instance);
}

// ---------------------------------------------------------------------------
// Rotation machinery.
//
// Orders are always read standing at a vertex looking into the edge, left to
// right, which equals the clockwise slot order of the line stubs around that
// vertex. A stored edge sequence pi is the order at the u end of the edge
// record; the order at the v end of the same physical arrangement is the
// reverse of the last sequence.
// ---------------------------------------------------------------------------

/// Callback giving the order of lines at the v end of edge x (clockwise at v).
using OrderAtEnd = std::function<std::vector<int>(int edge, int vertex)>;

/// Forced order of L_e at the v end of e, given the v-end orders of the other
/// incident edges: walk the rotation counterclockwise from e; each edge block
/// contributes its lines in reverse.
inline std::vector<int> derive_order_at(const Instance& inst, int v, int e,
                                        const OrderAtEnd& order_at) {
  const auto& rot = inst.rotation[v];
  int pos = inst.rotation_pos(v, e);
  std::vector<int> want(inst.num_lines(), 0);
  for (int l : inst.edge_lines[e]) want[l] = 1;
  std::vector<int> out;
  int n = static_cast<int>(rot.size());
  for (int t = 1; t < n; ++t) {
    int x = rot[((pos - t) % n + n) % n];
    std::vector<int> seq = order_at(x, v);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it)
      if (*it >= 0 && want[*it]) out.push_back(*it);
  }
  return out;
}

enum class CrossKind { Disjoint, MustCross, MustNotCross };

inline const char* cross_kind_name(CrossKind k) {
  switch (k) {
    case CrossKind::Disjoint: return "disjoint";
    case CrossKind::MustCross: return "must_cross";
    case CrossKind::MustNotCross: return "must_not_cross";
  }
  return "?";
}

namespace detail {

/// True when line a's continuation edge comes before line b's in the
/// counterclockwise walk from `shared` at vertex w, i.e. a is first in the
/// w-end order of the shared edge.
inline bool first_at_end(const Instance& inst, int w, int shared, int edge_a, int edge_b) {
  const auto& rot = inst.rotation[w];
  int n = static_cast<int>(rot.size());
  int pos = inst.rotation_pos(w, shared);
  for (int t = 1; t < n; ++t) {
    int x = rot[((pos - t) % n + n) % n];
    if (x == edge_a) return true;
    if (x == edge_b) return false;
  }
  throw Error(Code::INTERNAL_INCONSISTENT_ORDERS, "continuation edges missing from rotation");
}

/// The edge by which line l leaves vertex w, other than `via`.
inline int continuation_edge(const Instance& inst, int l, int w, int via) {
  for (int e : inst.line_edges_at(l, w))
    if (e != via) return e;
  return -1;
}

}  // namespace detail

/// Classifies a pair of lines: disjoint when they share no edge (vertex-only
/// contact counts as disjoint); otherwise decides from the rotations at the
/// two ends of the common subpath whether every consistent solution must cross
/// them or must keep them apart.
inline CrossKind must_cross(const Instance& inst, int la, int lb) {
  std::vector<int> shared = inst.shared_edges(la, lb);
  if (shared.empty()) return CrossKind::Disjoint;

  int e_first = shared.front(), e_last = shared.back();
  // endpoints of the common subpath, oriented along line la
  const auto& av = inst.line_vertices[la];
  const auto& ae = inst.line_edges[la];
  int p_first = -1, p_last = -1;
  for (std::size_t i = 0; i < ae.size(); ++i) {
    if (ae[i] == e_first && p_first < 0) p_first = static_cast<int>(i);
    if (ae[i] == e_last) p_last = static_cast<int>(i);
  }
  int w0 = av[p_first], wm = av[p_last + 1];

  int a0 = detail::continuation_edge(inst, la, w0, e_first);
  int b0 = detail::continuation_edge(inst, lb, w0, e_first);
  int a1 = detail::continuation_edge(inst, la, wm, e_last);
  int b1 = detail::continuation_edge(inst, lb, wm, e_last);
  if (a0 < 0 || b0 < 0 || a1 < 0 || b1 < 0)
    throw Error(Code::INTERNAL_INCONSISTENT_ORDERS,
                "line terminates inside a shared subpath; instance not validated");

  bool a_first_start = detail::first_at_end(inst, w0, e_first, a0, b0);
  bool a_first_end = detail::first_at_end(inst, wm, e_last, a1, b1);
  // With both ends read in their own vertex frame, a crossing-free routing
  // reverses the pair an odd number of times along the subpath.
  return a_first_start == a_first_end ? CrossKind::MustCross : CrossKind::MustNotCross;
}

/// Relative order of two edge-sharing lines at vertex w, an end of their
/// common subpath with `shared_edge` incident to w: true when la comes first
/// in the w-end order of the shared edge forced by the rotation at w.
inline bool first_at_shared_end(const Instance& inst, int la, int lb, int w, int shared_edge) {
  int a0 = detail::continuation_edge(inst, la, w, shared_edge);
  int b0 = detail::continuation_edge(inst, lb, w, shared_edge);
  if (a0 < 0 || b0 < 0)
    throw Error(Code::INVALID_PARAMS, "lines do not both continue past the shared end");
  return detail::first_at_end(inst, w, shared_edge, a0, b0);
}

}  // namespace blockline
