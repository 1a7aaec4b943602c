#include "blockline/oracle.hpp"
#include "blockline/tree_solver.hpp"
#include "blockline/verify.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace blockline;
using namespace tsup;

TEST_CASE("tree insertion: trivial line counts") {
  RandomParams p;
  p.lines = 1;
  p.vertices = 5;
  p.seed = 3;
  Instance one = gen_random(RandomKind::Tree, p);
  Solution s1 = solve_tree_insertion(one);
  CHECK(verify_consistency(one, s1).ok);
  CHECK(count_crossings(s1).block_crossings == 0);

  p.lines = 2;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    p.seed = seed;
    Instance two = gen_random(RandomKind::Tree, p);
    Solution s2 = solve_tree_insertion(two);
    CAPTURE(seed);
    REQUIRE(verify_consistency(two, s2).ok);
    REQUIRE(verify_monotone(two, s2).ok);
    CHECK(count_crossings(s2).block_crossings <= 1);
  }
}

TEST_CASE("tree insertion: cycle is rejected") {
  InstanceDoc doc = cycle_double_crossing_doc();
  doc.lines.pop_back();  // keep only the line around the cycle
  Instance inst = validate_or_throw(doc);
  CHECK_THROWS_AS(solve_tree_insertion(inst), Error);
}

TEST_CASE("tree insertion: three pairwise-crossing lines on a star need 3 = 2L-3") {
  // star with arms p, q, r; each pair of lines shares one arm and must cross
  InstanceDoc doc;
  doc.vertices.push_back({"c", {}, false});
  for (const char* arm : {"p", "q", "r"}) {
    std::string a = arm;
    doc.vertices.push_back({a, {}, false});
    doc.edges.push_back({"e" + a, "c", a});
  }
  auto stub = [&](const std::string& sid, const std::string& eid, const std::string& at) {
    doc.vertices.push_back({sid, {eid}, true});
    doc.edges.push_back({eid, sid, at});
  };
  stub("s1", "a1", "p");
  stub("t1", "b1", "q");
  stub("s2", "a2", "q");
  stub("t2", "b2", "r");
  stub("s3", "a3", "r");
  stub("t3", "b3", "p");
  doc.lines.push_back({"l1", {"s1", "p", "c", "q", "t1"}});
  doc.lines.push_back({"l2", {"s2", "q", "c", "r", "t2"}});
  doc.lines.push_back({"l3", {"s3", "r", "c", "p", "t3"}});
  doc.vertices[0].rotation = {"ep", "eq", "er"};
  doc.vertices[1].rotation = {"ep", "a1", "b3"};
  doc.vertices[2].rotation = {"eq", "a2", "b1"};
  doc.vertices[3].rotation = {"er", "a3", "b2"};
  Instance inst = validate_or_throw(doc);

  if (must_cross(inst, 0, 1) == CrossKind::MustCross &&
      must_cross(inst, 1, 2) == CrossKind::MustCross &&
      must_cross(inst, 0, 2) == CrossKind::MustCross) {
    Solution s = solve_tree_insertion(inst);
    REQUIRE(verify_consistency(inst, s).ok);
    REQUIRE(verify_monotone(inst, s).ok);
    CHECK(count_crossings(s).block_crossings == 3);
  } else {
    FAIL("fixture rotations no longer force all three crossings");
  }
}

TEST_CASE("tree insertion: seeded random trees meet the 2L-3 bound") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    RandomParams p;
    p.lines = 2 + static_cast<int>(seed % 9);  // 2..10
    p.vertices = 4 + static_cast<int>(seed % 5);
    p.seed = seed;
    Instance inst = gen_random(RandomKind::Tree, p);
    Solution s = solve_tree_insertion(inst);
    CAPTURE(seed);
    REQUIRE(verify_consistency(inst, s).ok);
    REQUIRE(verify_monotone(inst, s).ok);
    CHECK(count_crossings(s).block_crossings <= 2 * inst.num_lines() - 3);

    // a monotone solution realizes exactly the unavoidable pairs
    long unavoidable = 0;
    for (int a = 0; a < inst.num_lines(); ++a)
      for (int b = a + 1; b < inst.num_lines(); ++b)
        unavoidable += must_cross(inst, a, b) == CrossKind::MustCross;
    CHECK(count_crossings(s).pairwise_crossings == unavoidable);
  }
}

TEST_CASE("upward: reading the top permutation") {
  RandomParams p;
  p.lines = 5;
  p.seed = 11;
  Instance inst = gen_random(RandomKind::Upward, p);
  UpwardTreeInstance u = make_upward(inst);
  Permutation pi = top_permutation(u);
  CHECK(pi.valid());
  CHECK(pi.size() == 5);
}

TEST_CASE("upward: simplification removes adjacent parallels and keeps the optimum") {
  RandomParams p;
  p.lines = 2;
  p.perm = {1, 2};
  p.seed = 1;
  Instance inst = gen_random(RandomKind::Upward, p);
  UpwardTreeInstance u = make_upward(inst);
  UpwardSimplification s = simplify_upward(u);
  CHECK(s.log.size() == 1);
  CHECK(s.reduced.inst.num_lines() == 1);

  TinyResult before = exact_bcm_tiny(inst, true);
  TinyResult after = exact_bcm_tiny(s.reduced.inst, true);
  CHECK(before.optimum == after.optimum);

  Solution sol = solve_upward_mbcm(u);
  CHECK(verify_consistency(inst, sol).ok);
  CHECK(count_crossings(sol).block_crossings == 0);
}

TEST_CASE("upward: pipeline bounds and verifiers on seeded instances") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    RandomParams p;
    p.lines = 2 + static_cast<int>(seed % 7);  // 2..8
    p.seed = seed;
    Instance inst = gen_random(RandomKind::Upward, p);
    UpwardTreeInstance u = make_upward(inst);
    UpwardSimplification simp = simplify_upward(u);
    Solution sol = solve_upward_mbcm(u);
    CAPTURE(seed);
    REQUIRE(verify_consistency(inst, sol).ok);
    REQUIRE(verify_monotone(inst, sol).ok);
    long crossings = count_crossings(sol).block_crossings;
    int reduced_lines = simp.reduced.inst.num_lines();
    CHECK(crossings <= 2 * reduced_lines);
    Metrics m = metrics(top_permutation(simp.reduced));
    CHECK(crossings <= 6 * ceil_div(m.bp, 3));
  }
}

TEST_CASE("upward: simplification neutrality on oracle-sized instances") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 60 && checked < 12; ++seed) {
    RandomParams p;
    p.lines = 3 + static_cast<int>(seed % 2);
    p.seed = seed * 7 + 1;
    Instance inst = gen_random(RandomKind::Upward, p);
    int multi = 0;
    for (int e = 0; e < inst.num_edges(); ++e) multi += inst.edge_lines[e].size() >= 2;
    if (multi > 3) continue;
    UpwardTreeInstance u = make_upward(inst);
    UpwardSimplification simp = simplify_upward(u);
    if (simp.log.empty()) continue;
    int red_multi = 0;
    for (int e = 0; e < simp.reduced.inst.num_edges(); ++e)
      red_multi += simp.reduced.inst.edge_lines[e].size() >= 2;
    if (red_multi > 3) continue;
    CAPTURE(seed);
    CHECK(exact_bcm_tiny(inst, true).optimum == exact_bcm_tiny(simp.reduced.inst, true).optimum);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("tree insertion: larger seeded trees") {
  for (std::uint64_t seed = 300; seed < 312; ++seed) {
    RandomParams p;
    p.lines = 14 + static_cast<int>(seed % 7);
    p.vertices = 8 + static_cast<int>(seed % 6);
    p.seed = seed;
    Instance inst = gen_random(RandomKind::Tree, p);
    Solution s = solve_tree_insertion(inst);
    CAPTURE(seed);
    REQUIRE(verify_consistency(inst, s).ok);
    REQUIRE(verify_monotone(inst, s).ok);
    CHECK(count_crossings(s).block_crossings <= 2 * inst.num_lines() - 3);
  }
}

TEST_CASE("upward: larger seeded instances") {
  for (std::uint64_t seed = 90; seed < 100; ++seed) {
    RandomParams p;
    p.lines = 10 + static_cast<int>(seed % 5);
    p.seed = seed;
    Instance inst = gen_random(RandomKind::Upward, p);
    UpwardTreeInstance u = make_upward(inst);
    UpwardSimplification simp = simplify_upward(u);
    Solution sol = solve_upward_mbcm(u);
    CAPTURE(seed);
    REQUIRE(verify_consistency(inst, sol).ok);
    REQUIRE(verify_monotone(inst, sol).ok);
    CHECK(count_crossings(sol).block_crossings <= 2 * simp.reduced.inst.num_lines());
  }
}

TEST_CASE("upward validation failures") {
  RandomParams p;
  p.lines = 3;
  p.seed = 2;
  Instance inst = gen_random(RandomKind::Tree, p);
  CHECK_THROWS_AS(make_upward(inst), Error);  // no upward block

  Instance up = gen_random(RandomKind::Upward, p);
  InstanceDoc doc = up.doc;
  doc.upward->top.pop_back();  // a line missing from the top row
  CHECK_THROWS_AS(make_upward(validate_or_throw(doc)), Error);
}
