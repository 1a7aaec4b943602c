#include <random>

#include "blockline/oracle.hpp"
#include "blockline/permutation.hpp"
#include "doctest.h"

using namespace blockline;

namespace {

Permutation perm(std::vector<int> v) { return Permutation{std::move(v)}; }

std::vector<Permutation> all_perms(int n) {
  std::vector<Permutation> out;
  Permutation p = Permutation::identity(n);
  do out.push_back(p);
  while (std::next_permutation(p.elems.begin(), p.elems.end()));
  return out;
}

}  // namespace

TEST_CASE("metrics on reference permutations") {
  Metrics id3 = metrics(perm({1, 2, 3}));
  CHECK(id3.bp == 0);
  CHECK(id3.des == 0);
  CHECK(id3.gap == 0);

  Metrics m = metrics(perm({3, 2, 5, 4, 1}));
  CHECK(m.bp == 6);
  CHECK(m.des == 3);
  CHECK(m.gap == 3);
  CHECK(m.inv_des == 3);
  CHECK(m.inv_gap == 3);

  Metrics swp = metrics(perm({2, 1}));
  CHECK(swp.bp == 3);
  CHECK(swp.des == 1);
  CHECK(swp.gap == 2);
}

TEST_CASE("metrics invariants: bp = des + gap, inverse metrics match the inverse") {
  for (int n = 1; n <= 6; ++n) {
    for (const Permutation& p : all_perms(n)) {
      Metrics m = metrics(p);
      CHECK(m.bp == m.des + m.gap);
      Metrics mi = metrics(inverse(p));
      CHECK(m.inv_des == mi.des);
      CHECK(m.inv_gap == mi.gap);
    }
  }
}

TEST_CASE("monotone lower bound on reference permutations") {
  CHECK(lower_bound_monotone(Permutation::identity(4)) == 0);
  CHECK(lower_bound_monotone(perm({3, 2, 5, 4, 1})) == 3);
  CHECK(lower_bound_monotone(perm({2, 1})) == 1);
}

TEST_CASE("simplify glues good pair runs and relabels") {
  Simplified s1 = simplify(Permutation::identity(5));
  CHECK(s1.simple.size() == 0);

  Simplified s2 = simplify(perm({2, 1, 4, 5, 3}));
  CHECK(s2.simple.elems == std::vector<int>{2, 1, 4, 3});

  Simplified s3 = simplify(perm({3, 2, 5, 4, 1}));
  CHECK(s3.simple.elems == std::vector<int>{3, 2, 5, 4, 1});

  // result carries no good pairs (an empty result is the sorted fixpoint)
  for (int n = 1; n <= 6; ++n)
    for (const Permutation& p : all_perms(n)) {
      Simplified s = simplify(p);
      Metrics m = metrics(s.simple);
      int sz = static_cast<int>(s.simple.size());
      CHECK(m.bp == (sz == 0 ? 0 : sz + 1));
    }
}

TEST_CASE("lifted moves sort the original permutation") {
  for (int n = 1; n <= 6; ++n) {
    for (const Permutation& p : all_perms(n)) {
      std::vector<BlockMove> moves = greedy_sort_monotone(p);
      std::vector<int> cur = p.elems;
      for (const BlockMove& m : moves) {
        CHECK(is_monotone_move(cur, m));
        cur = apply_block_move(cur, m);
      }
      CHECK(Permutation{cur}.is_identity());
      CHECK(static_cast<int>(moves.size()) <= metrics(p).bp);
    }
  }
}

TEST_CASE("greedy trace on [3 2 5 4 1]") {
  std::vector<BlockMove> moves = greedy_sort_monotone(perm({3, 2, 5, 4, 1}));
  REQUIRE(moves.size() == 3);
  CHECK(moves[0] == BlockMove{1, 4, 5});
  CHECK(moves[1] == BlockMove{2, 2, 3});
  CHECK(moves[2] == BlockMove{4, 4, 5});
  CHECK(greedy_sort_monotone(Permutation::identity(6)).empty());
  REQUIRE(greedy_sort_monotone(perm({2, 1})).size() == 1);
}

TEST_CASE("lis length") {
  CHECK(lis(Permutation::identity(7)) == 7);
  CHECK(lis(perm({3, 2, 5, 4, 1})) == 2);
  CHECK(lis(perm({5, 4, 3, 2, 1})) == 1);
}

TEST_CASE("unit-move sorter: n - lis moves, unit blocks, monotone") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    Permutation p{v};
    std::vector<BlockMove> moves = sort_by_unit_moves(p);
    CHECK(static_cast<int>(moves.size()) == n - lis(p));
    std::vector<int> cur = p.elems;
    for (const BlockMove& m : moves) {
      CHECK((m.i == m.j || m.j + 1 == m.k));
      CHECK(is_monotone_move(cur, m));
      cur = apply_block_move(cur, m);
    }
    CHECK(Permutation{cur}.is_identity());
  }
  CHECK(sort_by_unit_moves(Permutation::identity(4)).empty());
  CHECK(sort_by_unit_moves(perm({2, 3, 4, 1})).size() == 1);
  CHECK(sort_by_unit_moves(perm({3, 2, 5, 4, 1})).size() == 3);
}

TEST_CASE("monotone moves lose at most one descent and two gaps, direct and inverse") {
  std::mt19937_64 rng(11);
  auto check_deltas = [](const Permutation& p, const std::vector<BlockMove>& moves) {
    std::vector<int> cur = p.elems;
    for (const BlockMove& m : moves) {
      Metrics before = metrics(Permutation{cur});
      cur = apply_block_move(cur, m);
      Metrics after = metrics(Permutation{cur});
      CHECK(after.des >= before.des - 1);
      CHECK(after.gap >= before.gap - 2);
      CHECK(after.inv_des >= before.inv_des - 1);
      CHECK(after.inv_gap >= before.inv_gap - 2);
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 8);
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    check_deltas(Permutation{v}, greedy_sort_monotone(Permutation{v}));
    check_deltas(Permutation{v}, sort_by_unit_moves(Permutation{v}));
  }
}

TEST_CASE("simplification preserves the exact distance on small permutations") {
  for (int n = 1; n <= 6; ++n) {
    for (const Permutation& p : all_perms(n)) {
      Simplified s = simplify(p);
      CHECK(exact_bc(p) == exact_bc(s.simple));
    }
  }
}
