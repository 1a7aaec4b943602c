#include "blockline/oracle.hpp"
#include "blockline/verify.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace blockline;
using namespace tsup;

TEST_CASE("block moves on plain sequences") {
  std::vector<int> v{3, 2, 5, 4, 1};
  CHECK(apply_block_move(v, {1, 4, 5}) == std::vector<int>{1, 3, 2, 5, 4});
  std::vector<std::string> ab{"a", "b"};
  CHECK(apply_block_move(ab, {1, 1, 2}) == std::vector<std::string>{"b", "a"});
  std::vector<int> w{1, 2, 3, 4};
  CHECK(apply_block_move(w, {2, 2, 4}) == std::vector<int>{1, 3, 4, 2});
  CHECK_THROWS_AS(apply_block_move(w, {2, 4, 4}), Error);
  CHECK_THROWS_AS(apply_block_move(w, {0, 1, 2}), Error);
}

TEST_CASE("moves preserve the multiset") {
  std::vector<int> v{4, 1, 3, 2, 5, 6};
  for (int i = 1; i <= 6; ++i)
    for (int j = i; j < 6; ++j)
      for (int k = j + 1; k <= 6; ++k) {
        std::vector<int> moved = apply_block_move(v, {i, j, k});
        std::vector<int> a = v, b = moved;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
      }
}

TEST_CASE("validate: smallest legal instance") {
  InstanceDoc doc;
  doc.vertices = {{"u", {"e"}, true}, {"v", {"e"}, true}};
  doc.edges = {{"e", "u", "v"}};
  doc.lines = {{"l", {"u", "v"}}};
  ValidationResult r = validate_instance(doc);
  CHECK(r.ok());
}

TEST_CASE("validate: shared terminal rejected") {
  InstanceDoc doc;
  doc.vertices = {{"u", {"e1", "e2", "e"}, false}, {"v", {"e"}, true},
                  {"s1", {"e1"}, true},           {"s2", {"e2"}, true},
                  {"t", {}, false}};
  doc.vertices.pop_back();
  doc.edges = {{"e1", "s1", "u"}, {"e2", "s2", "u"}, {"e", "u", "v"}};
  doc.lines = {{"a", {"s1", "u", "v"}}, {"b", {"s2", "u", "v"}}};
  ValidationResult r = validate_instance(doc);
  REQUIRE(!r.ok());
  bool found = false;
  for (const auto& i : r.issues) found |= i.code == Code::SHARED_TERMINAL;
  CHECK(found);
}

TEST_CASE("validate: two lines sharing opposite cycle edges rejected") {
  ValidationResult r = validate_instance(cycle_double_crossing_doc());
  REQUIRE(!r.ok());
  bool found = false;
  for (const auto& i : r.issues) found |= i.code == Code::NON_PATH_INTERSECTION;
  CHECK(found);
}

TEST_CASE("validate: other violations") {
  InstanceDoc doc;
  doc.vertices = {{"u", {"e"}, true}, {"v", {"e"}, true}};
  doc.edges = {{"e", "u", "v"}};
  doc.lines = {{"l", {"u"}}};  // zero-length
  ValidationResult r = validate_instance(doc);
  REQUIRE(!r.ok());
  CHECK(r.issues.front().code == Code::NON_SIMPLE_LINE);

  doc.lines = {{"l", {"u", "v"}}};
  doc.vertices[0].rotation = {};  // rotation missing the incident edge
  r = validate_instance(doc);
  REQUIRE(!r.ok());
  CHECK(r.issues.front().code == Code::BAD_ROTATION);
}

TEST_CASE("validate: line ending at an interior vertex") {
  InstanceDoc doc;
  doc.vertices = {{"u", {"e1"}, true}, {"v", {"e1", "e2"}, false}, {"w", {"e2"}, true}};
  doc.edges = {{"e1", "u", "v"}, {"e2", "v", "w"}};
  doc.lines = {{"a", {"u", "v"}}, {"b", {"v", "w"}}};
  ValidationResult r = validate_instance(doc);
  REQUIRE(!r.ok());
  bool found = false;
  for (const auto& i : r.issues) found |= i.code == Code::TERMINAL_DEGREE;
  CHECK(found);
}

TEST_CASE("must_cross classification") {
  Instance parallel = two_line_path(true);
  Instance crossing = two_line_path(false);
  int a = 0, b = 1;
  CHECK(must_cross(parallel, a, b) == CrossKind::MustNotCross);
  CHECK(must_cross(crossing, a, b) == CrossKind::MustCross);

  // single-edge encodings
  Instance id2 = edge_instance({1, 2});
  CHECK(must_cross(id2, 0, 1) == CrossKind::MustNotCross);
  Instance swp = edge_instance({2, 1});
  CHECK(must_cross(swp, 0, 1) == CrossKind::MustCross);
}

TEST_CASE("must_cross: disjoint lines") {
  // two lines meeting nowhere: star with four arms, two opposite paths
  InstanceDoc doc;
  doc.vertices = {{"c", {"p", "q", "r", "s"}, false}, {"A1", {"pa"}, true}, {"A2", {"qa"}, true},
                  {"B1", {"ra"}, true},               {"B2", {"sa"}, true},
                  {"p1", {"p", "pa"}, false},         {"q1", {"q", "qa"}, false},
                  {"r1", {"r", "ra"}, false},         {"s1", {"s", "sa"}, false}};
  doc.edges = {{"p", "c", "p1"}, {"q", "c", "q1"}, {"r", "c", "r1"}, {"s", "c", "s1"},
               {"pa", "p1", "A1"}, {"qa", "q1", "A2"}, {"ra", "r1", "B1"}, {"sa", "s1", "B2"}};
  doc.lines = {{"A", {"A1", "p1", "c", "q1", "A2"}}, {"B", {"B1", "r1", "c", "s1", "B2"}}};
  Instance inst = validate_or_throw(doc);
  CHECK(must_cross(inst, 0, 1) == CrossKind::Disjoint);
}

TEST_CASE("consistency: trivial and figure-style instances") {
  // no lines at all
  InstanceDoc empty;
  empty.vertices = {{"u", {"e"}, true}, {"v", {"e"}, true}};
  empty.edges = {{"e", "u", "v"}};
  Instance e0 = validate_or_throw(empty);
  CHECK(verify_consistency(e0, Solution{}).ok);

  // parallel pair through two edges, orders matching the rotations
  Instance inst = two_line_path(true);
  Solution sol;
  for (const char* eid : {"e1", "e2"}) {
    EdgeSolution es;
    es.edge = inst.edge_index.at(eid);
    es.initial_order = {inst.line_index.at("A"), inst.line_index.at("B")};
    sol.edges[es.edge] = es;
  }
  for (const char* eid : {"eA", "eB", "fA", "fB"}) {
    EdgeSolution es;
    es.edge = inst.edge_index.at(eid);
    es.initial_order = inst.edge_lines[es.edge];
    sol.edges[es.edge] = es;
  }
  CHECK(verify_consistency(inst, sol).ok);
  CHECK(verify_monotone(inst, sol).ok);

  // swapping one end of one edge breaks consistency at the shared vertex
  Solution bad = sol;
  auto& order = bad.edges[inst.edge_index.at("e2")].initial_order;
  std::swap(order[0], order[1]);
  ConsistencyResult r = verify_consistency(inst, bad);
  REQUIRE(!r.ok);
  CHECK(r.violations.front().vertex == inst.vertex_index.at("v"));
}

TEST_CASE("edge solutions built from the far endpoint replay backwards") {
  Instance inst = edge_instance({2, 1, 3});
  int e = inst.edge_index.at("e");
  int v = inst.edge_ends[e].second;
  std::vector<int> near_order{0, 1, 2};
  std::vector<BlockMove> moves{{1, 1, 3}, {2, 2, 3}};
  std::vector<int> near_final = near_order;
  for (const BlockMove& m : moves) near_final = apply_block_move(near_final, m);

  EdgeSolution es = oriented_edge_solution(inst, e, v, near_order, moves);
  std::vector<int> fin = final_order(es);
  CHECK(es.initial_order == std::vector<int>(near_final.rbegin(), near_final.rend()));
  CHECK(fin == std::vector<int>(near_order.rbegin(), near_order.rend()));
  CHECK(es.moves.size() == moves.size());

  Solution sol;
  sol.edges[e] = es;
  CHECK(order_at_end(inst, sol, e, v) == near_order);
}

TEST_CASE("count_crossings totals") {
  CHECK(count_crossings(Solution{}).block_crossings == 0);
  CHECK(count_crossings(Solution{}).pairwise_crossings == 0);

  Instance inst = edge_instance({3, 1, 2});
  Solution sol = edge_solution(inst, {3, 1, 2}, {{1, 1, 3}});
  CrossingReport r = count_crossings(sol);
  CHECK(r.block_crossings == 1);
  CHECK(r.pairwise_crossings == 2);
  CHECK(r.per_edge.at(inst.edge_index.at("e")) == 1);
}

TEST_CASE("monotone verification against the two sorting routes") {
  Instance inst = edge_instance({3, 2, 5, 4, 1});
  Permutation p{{3, 2, 5, 4, 1}};

  Solution fast = edge_solution(inst, {3, 2, 5, 4, 1}, exact_bc_witness(p));
  CHECK(verify_consistency(inst, fast).ok);
  CHECK(count_crossings(fast).block_crossings == 2);
  CHECK(!verify_monotone(inst, fast).ok);

  Solution mono = edge_solution(inst, {3, 2, 5, 4, 1}, greedy_sort_monotone(p));
  CHECK(verify_consistency(inst, mono).ok);
  CHECK(count_crossings(mono).block_crossings == 3);
  CHECK(verify_monotone(inst, mono).ok);

  // disjoint crossing-free pair
  Instance par = two_line_path(true);
  Solution psol;
  for (int e = 0; e < par.num_edges(); ++e) {
    if (par.edge_lines[e].empty()) continue;
    EdgeSolution es;
    es.edge = e;
    es.initial_order = par.edge_lines[e];
    if (par.edge_id(e) == "e2") es.initial_order = {1, 0};
    psol.edges[e] = es;
  }
  // fix e2 so that it matches e1 through v (A then B at the u side)
  psol.edges[par.edge_index.at("e2")].initial_order = {par.line_index.at("A"), par.line_index.at("B")};
  CHECK(verify_monotone(par, psol).ok);
}

TEST_CASE("every block move has an inverse block move") {
  std::vector<int> seq{5, 1, 4, 2, 3, 6, 7};
  int n = static_cast<int>(seq.size());
  for (int i = 1; i <= n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        BlockMove m{i, j, k};
        BlockMove inv{i, i + (k - j) - 1, k};
        CHECK(apply_block_move(apply_block_move(seq, m), inv) == seq);
      }
}

TEST_CASE("vertex crossings between edge-disjoint lines are not violations") {
  // two lines through one hub sharing only the hub vertex; the rotation
  // interleaves them, so they cross there in every solution
  InstanceDoc doc;
  doc.vertices = {{"c", {"p", "r", "q", "s"}, false},
                  {"p1", {"p", "pa"}, false},  {"q1", {"q", "qa"}, false},
                  {"r1", {"r", "ra"}, false},  {"s1", {"s", "sa"}, false},
                  {"A1", {"pa"}, true},        {"A2", {"qa"}, true},
                  {"B1", {"ra"}, true},        {"B2", {"sa"}, true}};
  doc.edges = {{"p", "c", "p1"}, {"q", "c", "q1"}, {"r", "c", "r1"}, {"s", "c", "s1"},
               {"pa", "p1", "A1"}, {"qa", "q1", "A2"}, {"ra", "r1", "B1"}, {"sa", "s1", "B2"}};
  doc.lines = {{"A", {"A1", "p1", "c", "q1", "A2"}}, {"B", {"B1", "r1", "c", "s1", "B2"}}};
  Instance inst = validate_or_throw(doc);
  CHECK(must_cross(inst, 0, 1) == CrossKind::Disjoint);

  Solution sol;
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (inst.edge_lines[e].empty()) continue;
    EdgeSolution es;
    es.edge = e;
    es.initial_order = inst.edge_lines[e];
    sol.edges[e] = es;
  }
  CHECK(verify_consistency(inst, sol).ok);
  CHECK(verify_monotone(inst, sol).ok);
}
