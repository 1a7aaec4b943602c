#pragma once

#include <string>
#include <vector>

#include "blockline/generators.hpp"
#include "blockline/instance.hpp"
#include "blockline/solution.hpp"

namespace tsup {

using namespace blockline;

/// Single skeleton edge encoding the given permutation (see gen_random).
inline Instance edge_instance(const std::vector<int>& perm) {
  RandomParams p;
  p.perm = perm;
  return gen_random(RandomKind::Edge, p);
}

/// Solution for an edge_instance: the skeleton edge starts at `perm` (as line
/// numbers) and applies `moves`; stub edges get their trivial entries.
inline Solution edge_solution(const Instance& inst, const std::vector<int>& perm,
                              const std::vector<BlockMove>& moves) {
  Solution sol;
  int e = inst.edge_index.at("e");
  EdgeSolution es;
  es.edge = e;
  for (int v : perm) es.initial_order.push_back(inst.line_index.at("l" + std::to_string(v)));
  es.moves = moves;
  sol.edges[e] = es;
  for (int ed = 0; ed < inst.num_edges(); ++ed) {
    if (ed == e || inst.edge_lines[ed].empty()) continue;
    EdgeSolution t;
    t.edge = ed;
    t.initial_order = inst.edge_lines[ed];
    sol.edges[ed] = t;
  }
  return sol;
}

/// Two lines along a two-edge path; `parallel` keeps their terminals on the
/// same sides (no crossing needed), otherwise the far end is flipped.
inline Instance two_line_path(bool parallel) {
  InstanceDoc doc;
  for (const char* id : {"u", "v", "w"}) doc.vertices.push_back({id, {}, false});
  doc.edges.push_back({"e1", "u", "v"});
  doc.edges.push_back({"e2", "v", "w"});
  doc.vertices.push_back({"sA", {"eA"}, true});
  doc.vertices.push_back({"sB", {"eB"}, true});
  doc.vertices.push_back({"tA", {"fA"}, true});
  doc.vertices.push_back({"tB", {"fB"}, true});
  doc.edges.push_back({"eA", "sA", "u"});
  doc.edges.push_back({"eB", "sB", "u"});
  doc.edges.push_back({"fA", "w", "tA"});
  doc.edges.push_back({"fB", "w", "tB"});
  doc.lines.push_back({"A", {"sA", "u", "v", "w", "tA"}});
  doc.lines.push_back({"B", {"sB", "u", "v", "w", "tB"}});
  doc.vertices[0].rotation = {"e1", "eB", "eA"};  // order at u end of e1: [A, B]
  doc.vertices[1].rotation = {"e1", "e2"};
  doc.vertices[2].rotation = parallel ? std::vector<std::string>{"e2", "fA", "fB"}
                                      : std::vector<std::string>{"e2", "fB", "fA"};
  return validate_or_throw(doc);
}

/// Three lines over two skeleton edges, order fully reversed end to end.
inline Instance reversed_three_line_path() {
  InstanceDoc doc;
  for (const char* id : {"v0", "v1", "v2"}) doc.vertices.push_back({id, {}, false});
  doc.edges.push_back({"E0", "v0", "v1"});
  doc.edges.push_back({"E1", "v1", "v2"});
  for (int i = 1; i <= 3; ++i) {
    std::string s = "s" + std::to_string(i), t = "t" + std::to_string(i);
    doc.vertices.push_back({s, {"a" + std::to_string(i)}, true});
    doc.vertices.push_back({t, {"b" + std::to_string(i)}, true});
    doc.edges.push_back({"a" + std::to_string(i), s, "v0"});
    doc.edges.push_back({"b" + std::to_string(i), "v2", t});
    doc.lines.push_back({"l" + std::to_string(i), {s, "v0", "v1", "v2", t}});
  }
  doc.vertices[0].rotation = {"E0", "a3", "a2", "a1"};  // v0 end order [l1 l2 l3]
  doc.vertices[1].rotation = {"E0", "E1"};
  doc.vertices[2].rotation = {"E1", "b3", "b2", "b1"};  // forced far order [l3 l2 l1]
  return validate_or_throw(doc);
}

/// Two lines sharing two opposite edges of a 4-cycle: not a path intersection.
inline InstanceDoc cycle_double_crossing_doc() {
  InstanceDoc doc;
  for (const char* id : {"c0", "c1", "c2", "c3"}) doc.vertices.push_back({id, {}, false});
  doc.edges.push_back({"e01", "c0", "c1"});
  doc.edges.push_back({"e12", "c1", "c2"});
  doc.edges.push_back({"e23", "c2", "c3"});
  doc.edges.push_back({"e30", "c3", "c0"});
  doc.vertices.push_back({"sA", {"xA"}, true});
  doc.vertices.push_back({"tA", {"yA"}, true});
  doc.vertices.push_back({"sB", {"xB"}, true});
  doc.vertices.push_back({"tB", {"yB"}, true});
  doc.edges.push_back({"xA", "sA", "c0"});
  doc.edges.push_back({"yA", "c3", "tA"});
  doc.edges.push_back({"xB", "sB", "c1"});
  doc.edges.push_back({"yB", "c2", "tB"});
  doc.lines.push_back({"A", {"sA", "c0", "c1", "c2", "c3", "tA"}});
  doc.lines.push_back({"B", {"sB", "c1", "c0", "c3", "c2", "tB"}});
  doc.vertices[0].rotation = {"e01", "e30", "xA"};
  doc.vertices[1].rotation = {"e01", "e12", "xB"};
  doc.vertices[2].rotation = {"e12", "e23", "yB"};
  doc.vertices[3].rotation = {"e23", "e30", "yA"};
  return doc;
}

}  // namespace tsup
