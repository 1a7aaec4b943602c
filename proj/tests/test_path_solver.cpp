#include "blockline/oracle.hpp"
#include "blockline/path_solver.hpp"
#include "blockline/verify.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace blockline;
using namespace tsup;

TEST_CASE("classification: single edge and sides") {
  Instance single = edge_instance({2, 1, 3});
  PathClassification c = classify_path(single);
  REQUIRE(c.edges.size() == 1);
  CHECK(c.nodes.size() == 2);
  for (const PathLineInfo& li : c.lines) {
    CHECK(li.start_pos == 0);
    CHECK(li.end_pos == 1);
  }
}

TEST_CASE("classification: star skeleton is not a path") {
  InstanceDoc star;
  star.vertices = {{"c", {"x0", "x1", "x2"}, false}};
  for (int i = 0; i < 3; ++i) {
    std::string arm = "a" + std::to_string(i);
    star.vertices.push_back({arm, {"x" + std::to_string(i), "p" + std::to_string(i), "q" + std::to_string(i)}, false});
    star.vertices.push_back({arm + "p", {"p" + std::to_string(i)}, true});
    star.vertices.push_back({arm + "q", {"q" + std::to_string(i)}, true});
    star.edges.push_back({"x" + std::to_string(i), "c", arm});
    star.edges.push_back({"p" + std::to_string(i), arm, arm + "p"});
    star.edges.push_back({"q" + std::to_string(i), arm, arm + "q"});
  }
  star.lines = {{"l0", {"a0p", "a0", "c", "a1", "a1p"}},
                {"l1", {"a1q", "a1", "c", "a2", "a2p"}},
                {"l2", {"a2q", "a2", "c", "a0", "a0q"}}};
  Instance inst = validate_or_throw(star);
  CHECK_THROWS_AS(classify_path(inst), Error);
}

TEST_CASE("classification: interleaved ends and starts rejected") {
  InstanceDoc doc;
  for (const char* id : {"v0", "v1", "v2"}) doc.vertices.push_back({id, {}, false});
  doc.edges.push_back({"E0", "v0", "v1"});
  doc.edges.push_back({"E1", "v1", "v2"});
  doc.vertices.push_back({"s0", {"a0"}, true});
  doc.vertices.push_back({"t0", {"b0"}, true});
  doc.vertices.push_back({"s1", {"a1"}, true});
  doc.vertices.push_back({"t1", {"b1"}, true});
  doc.edges.push_back({"a0", "s0", "v0"});
  doc.edges.push_back({"b0", "v1", "t0"});
  doc.edges.push_back({"a1", "v1", "s1"});
  doc.edges.push_back({"b1", "v2", "t1"});
  doc.lines.push_back({"l0", {"s0", "v0", "v1", "t0"}});
  doc.lines.push_back({"l1", {"s1", "v1", "v2", "t1"}});
  doc.vertices[0].rotation = {"E0", "a0"};
  doc.vertices[1].rotation = {"E0", "a1", "b0", "E1"};  // starter before ender above v1
  doc.vertices[2].rotation = {"E1", "b1"};
  Instance inst = validate_or_throw(doc);
  CHECK_THROWS_AS(classify_path(inst), Error);
}

TEST_CASE("path solver: crossing-free instances stay crossing-free") {
  Instance par = two_line_path(true);
  for (bool mono : {false, true}) {
    Solution sol = mono ? solve_path_mbcm(par) : solve_path_bcm(par);
    CHECK(verify_consistency(par, sol).ok);
    CHECK(count_crossings(sol).block_crossings == 0);
    if (mono) CHECK(verify_monotone(par, sol).ok);
  }
}

TEST_CASE("path solver on a single-edge reference permutation") {
  Instance inst = edge_instance({3, 2, 5, 4, 1});
  TinyResult opt = exact_bcm_tiny(inst, false);
  TinyResult opt_m = exact_bcm_tiny(inst, true);

  Solution s = solve_path_bcm(inst);
  CHECK(verify_consistency(inst, s).ok);
  CHECK(count_crossings(s).block_crossings <= 3 * opt.optimum);

  Solution sm = solve_path_mbcm(inst);
  CHECK(verify_consistency(inst, sm).ok);
  CHECK(verify_monotone(inst, sm).ok);
  CHECK(count_crossings(sm).block_crossings <= 3 * opt_m.optimum);
}

TEST_CASE("path solver: seeded random instances, oracle ratio and verifiers") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    RandomParams p;
    p.lines = 2 + static_cast<int>(seed % 4);  // 2..5
    p.length = 1 + static_cast<int>(seed % 3);
    p.seed = seed;
    Instance inst = gen_random(RandomKind::Path, p);

    CAPTURE(seed);
    PathRunInfo info;
    Solution s = solve_path_bcm(inst, &info);
    REQUIRE(verify_consistency(inst, s).ok);

    Solution sm = solve_path_mbcm(inst);
    REQUIRE(verify_consistency(inst, sm).ok);
    REQUIRE(verify_monotone(inst, sm).ok);

    int multi = 0;
    for (int e = 0; e < inst.num_edges(); ++e) multi += inst.edge_lines[e].size() >= 2;
    if (inst.num_lines() <= 5 && multi <= 3) {
      TinyResult opt = exact_bcm_tiny(inst, false);
      TinyResult opt_m = exact_bcm_tiny(inst, true);
      CHECK(count_crossings(s).block_crossings <= 3 * opt.optimum);
      CHECK(count_crossings(sm).block_crossings <= 3 * opt_m.optimum);
    }
  }
}

TEST_CASE("path solver: non-split moves increase the live good pairs") {
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    RandomParams p;
    p.lines = 2 + static_cast<int>(seed % 5);
    p.length = 1 + static_cast<int>(seed % 3);
    p.seed = seed;
    Instance inst = gen_random(RandomKind::Path, p);
    PathRunInfo info;
    Solution s = solve_path_bcm(inst, &info);
    CAPTURE(seed);
    REQUIRE(verify_consistency(inst, s).ok);
    for (auto [delta, was_split] : info.move_deltas) {
      if (was_split)
        CHECK(delta >= 0);
      else
        CHECK(delta >= 1);
    }
  }
}

TEST_CASE("path solver: forced mixed split") {
  // On E0 a red, a black and a green start chained by good pairs while a
  // second black stays outside the chain, so the mixed chain must split.
  InstanceDoc doc;
  for (const char* id : {"v0", "v1", "v2"}) doc.vertices.push_back({id, {}, false});
  doc.edges.push_back({"E0", "v0", "v1"});
  doc.edges.push_back({"E1", "v1", "v2"});
  auto stub = [&](const std::string& sid, const std::string& eid, const std::string& at) {
    doc.vertices.push_back({sid, {eid}, true});
    doc.edges.push_back({eid, sid, at});
  };
  stub("sr", "ar", "v0");
  stub("sb1", "ab1", "v0");
  stub("sb2", "ab2", "v0");
  stub("sg", "ag", "v0");
  stub("tr", "br", "v1");
  stub("tg", "bg", "v1");
  stub("tb1", "bb1", "v2");
  stub("tb2", "bb2", "v2");
  doc.lines.push_back({"r", {"sr", "v0", "v1", "tr"}});
  doc.lines.push_back({"b1", {"sb1", "v0", "v1", "v2", "tb1"}});
  doc.lines.push_back({"b2", {"sb2", "v0", "v1", "v2", "tb2"}});
  doc.lines.push_back({"g", {"sg", "v0", "v1", "tg"}});
  // start order on E0 top to bottom: r, b1, g, b2
  doc.vertices[0].rotation = {"E0", "ab2", "ag", "ab1", "ar"};
  doc.vertices[1].rotation = {"E0", "br", "E1", "bg"};  // r ends above, g below
  doc.vertices[2].rotation = {"E1", "bb1", "bb2"};
  Instance inst = validate_or_throw(doc);

  PathRunInfo info;
  Solution s = solve_path_bcm(inst, &info);
  REQUIRE(verify_consistency(inst, s).ok);

  TinyResult opt = exact_bcm_tiny(inst, false);
  CHECK(count_crossings(s).block_crossings <= 3 * opt.optimum);

  Solution sm = solve_path_mbcm(inst);
  REQUIRE(verify_consistency(inst, sm).ok);
  REQUIRE(verify_monotone(inst, sm).ok);
}

TEST_CASE("path solver: larger seeded instances") {
  for (std::uint64_t seed = 400; seed < 430; ++seed) {
    RandomParams p;
    p.lines = 6 + static_cast<int>(seed % 5);  // 6..10
    p.length = 2 + static_cast<int>(seed % 5);
    p.seed = seed;
    Instance inst = gen_random(RandomKind::Path, p);
    CAPTURE(seed);
    Solution s = solve_path_bcm(inst);
    REQUIRE(verify_consistency(inst, s).ok);
    Solution sm = solve_path_mbcm(inst);
    REQUIRE(verify_consistency(inst, sm).ok);
    REQUIRE(verify_monotone(inst, sm).ok);
  }
}

TEST_CASE("classification exposes the red/green partition per node") {
  // v1 has one line ending above, one ending below, one passing through
  InstanceDoc doc;
  for (const char* id : {"v0", "v1", "v2"}) doc.vertices.push_back({id, {}, false});
  doc.edges.push_back({"E0", "v0", "v1"});
  doc.edges.push_back({"E1", "v1", "v2"});
  auto stub = [&](const std::string& sid, const std::string& eid, const std::string& at) {
    doc.vertices.push_back({sid, {eid}, true});
    doc.edges.push_back({eid, sid, at});
  };
  stub("sr", "ar", "v0");
  stub("sg", "ag", "v0");
  stub("sb", "ab", "v0");
  stub("tr", "br", "v1");
  stub("tg", "bg", "v1");
  stub("tb", "bb", "v2");
  doc.lines.push_back({"red", {"sr", "v0", "v1", "tr"}});
  doc.lines.push_back({"green", {"sg", "v0", "v1", "tg"}});
  doc.lines.push_back({"black", {"sb", "v0", "v1", "v2", "tb"}});
  doc.vertices[0].rotation = {"E0", "ab", "ag", "ar"};
  doc.vertices[1].rotation = {"E0", "br", "E1", "bg"};
  doc.vertices[2].rotation = {"E1", "bb"};
  Instance inst = validate_or_throw(doc);

  PathClassification c = classify_path(inst);
  int red = inst.line_index.at("red"), green = inst.line_index.at("green");
  REQUIRE(c.top_enders[1] == std::vector<int>{red});
  REQUIRE(c.bot_enders[1] == std::vector<int>{green});
  CHECK(c.lines[red].end_side == PathSide::Top);
  CHECK(c.lines[green].end_side == PathSide::Bottom);
  CHECK(c.lines[inst.line_index.at("black")].end_pos == 2);
}

TEST_CASE("path solver: pairs starting together at a node never chain leftwards") {
  // regression: with nine lines over four edges this seed used to fabricate a
  // pair from a top starter and a bottom starter of the same node, which then
  // straddled the continuing band and broke consistency
  RandomParams p;
  p.lines = 9;
  p.length = 4;
  p.seed = 1588;
  Instance inst = gen_random(RandomKind::Path, p);
  Solution s = solve_path_bcm(inst);
  REQUIRE(verify_consistency(inst, s).ok);
  Solution sm = solve_path_mbcm(inst);
  REQUIRE(verify_consistency(inst, sm).ok);
  REQUIRE(verify_monotone(inst, sm).ok);
}

TEST_CASE("path solver: wide sweep with many lines per edge") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    RandomParams p;
    p.lines = 2 + static_cast<int>(seed % 11);  // up to 12
    p.length = 1 + static_cast<int>(seed % 6);
    p.seed = seed * 31 + 7;
    Instance inst = gen_random(RandomKind::Path, p);
    CAPTURE(seed);
    Solution s = solve_path_bcm(inst);
    REQUIRE(verify_consistency(inst, s).ok);
    Solution sm = solve_path_mbcm(inst);
    REQUIRE(verify_consistency(inst, sm).ok);
    REQUIRE(verify_monotone(inst, sm).ok);
  }
}
