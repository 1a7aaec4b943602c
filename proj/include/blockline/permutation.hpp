#pragma once

#include <algorithm>
#include <cassert>
#include <numeric>
#include <vector>

#include "blockline/core.hpp"

namespace blockline {

/// Sequence of the values 1..n. The sentinels 0 and n+1 are implicit: every
/// metric and sorting routine treats the input as [0, elems..., n+1].
struct Permutation {
  std::vector<int> elems;

  std::size_t size() const { return elems.size(); }
  bool is_identity() const {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (elems[i] != static_cast<int>(i) + 1) return false;
    return true;
  }

  static Permutation identity(int n) {
    Permutation p;
    p.elems.resize(n);
    std::iota(p.elems.begin(), p.elems.end(), 1);
    return p;
  }

  bool valid() const {
    std::vector<bool> seen(elems.size(), false);
    for (int v : elems) {
      if (v < 1 || v > static_cast<int>(elems.size()) || seen[v - 1]) return false;
      seen[v - 1] = true;
    }
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

inline Permutation inverse(const Permutation& p) {
  Permutation inv;
  inv.elems.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv.elems[p.elems[i] - 1] = static_cast<int>(i) + 1;
  return inv;
}

/// Extended sequence [0, p..., n+1].
inline std::vector<int> with_sentinels(const Permutation& p) {
  std::vector<int> ext;
  ext.reserve(p.size() + 2);
  ext.push_back(0);
  ext.insert(ext.end(), p.elems.begin(), p.elems.end());
  ext.push_back(static_cast<int>(p.size()) + 1);
  return ext;
}

struct Metrics {
  int bp = 0;       // breakpoints: adjacencies that are not good pairs
  int des = 0;      // descents: adjacent (a, b) with a > b
  int gap = 0;      // gaps: adjacent (a, b) with b > a + 1
  int inv_des = 0;  // value v+1 placed left of v
  int inv_gap = 0;  // value v+1 placed more than one slot right of v
};

/// Counts over the sentinel-extended sequence; the inverse metrics include the
/// sentinel values symmetrically to the direct ones.
inline Metrics metrics(const Permutation& p) {
  Metrics m;
  std::vector<int> ext = with_sentinels(p);
  for (std::size_t i = 0; i + 1 < ext.size(); ++i) {
    if (ext[i] > ext[i + 1]) ++m.des;
    if (ext[i + 1] > ext[i] + 1) ++m.gap;
  }
  m.bp = m.des + m.gap;
  std::vector<int> pos(ext.size());
  for (std::size_t i = 0; i < ext.size(); ++i) pos[ext[i]] = static_cast<int>(i);
  for (int v = 0; v + 1 < static_cast<int>(ext.size()); ++v) {
    if (pos[v + 1] < pos[v]) ++m.inv_des;
    if (pos[v + 1] > pos[v] + 1) ++m.inv_gap;
  }
  return m;
}

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

/// max(ceil(bp/3), des, ceil(gap/2), inv_des, ceil(inv_gap/2)); never exceeds
/// the exact monotone sorting distance.
inline int lower_bound_monotone(const Permutation& p) {
  Metrics m = metrics(p);
  int lb = ceil_div(m.bp, 3);
  lb = std::max(lb, m.des);
  lb = std::max(lb, ceil_div(m.gap, 2));
  lb = std::max(lb, m.inv_des);
  lb = std::max(lb, ceil_div(m.inv_gap, 2));
  return lb;
}

/// Result of glueing maximal runs of good pairs and relabeling. Each value v of
/// `simple` stands for the contiguous interval value_lo[v]..value_hi[v] of the
/// original values; front/back are the run lengths glued into the sentinels.
struct Simplified {
  Permutation simple;
  std::vector<int> value_lo;  // index 0..n'+1 over extended simple values
  std::vector<int> value_hi;
  int original_n = 0;

  int run_length(int simple_value) const { return value_hi[simple_value] - value_lo[simple_value] + 1; }
};

inline Simplified simplify(const Permutation& p) {
  int n = static_cast<int>(p.size());
  std::vector<int> ext = with_sentinels(p);
  // lo/hi intervals of original values carried by each current symbol
  std::vector<int> lo(ext.size()), hi(ext.size());
  for (std::size_t i = 0; i < ext.size(); ++i) lo[i] = hi[i] = ext[i];

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> nlo, nhi;
    for (std::size_t i = 0; i < ext.size(); ++i) {
      // glue when positions are adjacent and the carried value intervals are consecutive
      if (!nlo.empty() && lo[i] == nhi.back() + 1) {
        nhi.back() = hi[i];
        changed = true;
      } else {
        nlo.push_back(lo[i]);
        nhi.push_back(hi[i]);
      }
    }
    lo = nlo;
    hi = nhi;
    // relabel by value rank; runs keep their interval of original values
    std::vector<int> order(lo.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return lo[a] < lo[b]; });
    std::vector<int> label(lo.size());
    for (std::size_t r = 0; r < order.size(); ++r) label[order[r]] = static_cast<int>(r);
    ext.resize(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) ext[i] = label[i];
    // reorder lo/hi into value order for the next pass bookkeeping
    std::vector<int> vlo(lo.size()), vhi(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
      vlo[ext[i]] = lo[i];
      vhi[ext[i]] = hi[i];
    }
    lo.clear();
    hi.clear();
    for (std::size_t i = 0; i < ext.size(); ++i) {
      lo.push_back(vlo[ext[i]]);
      hi.push_back(vhi[ext[i]]);
    }
  }

  Simplified s;
  s.original_n = n;
  if (ext.size() == 1) {  // the whole extended sequence is one run: identity input
    s.value_lo = {0, n + 1};
    s.value_hi = {n, n + 1};
    return s;
  }
  int m = static_cast<int>(ext.size()) - 2;  // simple size
  s.simple.elems.assign(ext.begin() + 1, ext.end() - 1);
  s.value_lo.resize(m + 2);
  s.value_hi.resize(m + 2);
  for (std::size_t i = 0; i < ext.size(); ++i) {
    s.value_lo[ext[i]] = lo[i];
    s.value_hi[ext[i]] = hi[i];
  }
  return s;
}

/// Replays `moves` (valid on s.simple) as moves on the original permutation:
/// every glued symbol expands to its run of original values.
inline std::vector<BlockMove> lift_moves(const Simplified& s, const std::vector<BlockMove>& moves) {
  std::vector<BlockMove> out;
  out.reserve(moves.size());
  std::vector<int> cur = s.simple.elems;
  int front = s.value_hi[0];  // original values 0..front glued with the 0 sentinel
  for (const BlockMove& m : moves) {
    std::vector<int> pref(cur.size() + 1, 0);
    for (std::size_t t = 0; t < cur.size(); ++t) pref[t + 1] = pref[t] + s.run_length(cur[t]);
    BlockMove lifted{front + pref[m.i - 1] + 1, front + pref[m.j], front + pref[m.k]};
    out.push_back(lifted);
    cur = apply_block_move(cur, m);
  }
  return out;
}

/// Smallest-index-first step rule: find the least i with pi_i != i and move the
/// run standing in front of value i out of the way. Works on the simplified
/// permutation and lifts the moves back, so the move count never exceeds bp.
inline std::vector<BlockMove> greedy_sort_monotone(const Permutation& p) {
  Simplified s = simplify(p);
  std::vector<BlockMove> simple_moves;
  std::vector<int> cur = s.simple.elems;
  int n = static_cast<int>(cur.size());
  for (int i = 1; i <= n; ++i) {
    if (cur[i - 1] == i) continue;
    int k = i;
    while (cur[k - 1] != i) ++k;
    BlockMove m{i, k - 1, k};
    assert(is_monotone_move(cur, m));
    simple_moves.push_back(m);
    cur = apply_block_move(cur, m);
  }
  assert(Permutation{cur}.is_identity());
  return lift_moves(s, simple_moves);
}

/// Longest increasing subsequence length, patience style, O(n log n).
inline int lis(const Permutation& p) {
  std::vector<int> tails;
  for (int v : p.elems) {
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end())
      tails.push_back(v);
    else
      *it = v;
  }
  return static_cast<int>(tails.size());
}

/// The lexicographically smallest position sequence among maximum increasing
/// subsequences; used to fix the subsequence the unit-move sorter extends.
inline std::vector<int> lis_positions(const Permutation& p) {
  int n = static_cast<int>(p.size());
  // tail_len[i]: length of the longest increasing subsequence starting at i
  std::vector<int> tail_len(n, 1);
  for (int i = n - 1; i >= 0; --i)
    for (int j = i + 1; j < n; ++j)
      if (p.elems[j] > p.elems[i]) tail_len[i] = std::max(tail_len[i], tail_len[j] + 1);
  int total = 0;
  for (int i = 0; i < n; ++i) total = std::max(total, tail_len[i]);
  std::vector<int> out;
  int need = total, last_val = 0;
  for (int i = 0; i < n && need > 0; ++i) {
    if (p.elems[i] > last_val && tail_len[i] == need) {
      out.push_back(i);
      last_val = p.elems[i];
      --need;
    }
  }
  return out;
}

/// Sorts with exactly n - lis(p) monotone moves, each of type (i,i,k) or
/// (i,k-1,k). Repeatedly moves the rightmost element exceeding its right
/// neighbor in the fixed increasing subsequence into the subsequence, falling
/// back to the symmetric leftward choice.
inline std::vector<BlockMove> sort_by_unit_moves(const Permutation& p) {
  std::vector<BlockMove> moves;
  std::vector<int> cur = p.elems;
  int n = static_cast<int>(cur.size());
  std::vector<bool> in_s(n + 2, false);
  for (int idx : lis_positions(p)) in_s[cur[idx]] = true;
  in_s[0] = in_s[n + 1] = true;

  auto pos_of = [&](int value) {
    for (int i = 0; i < n; ++i)
      if (cur[i] == value) return i;
    return -1;
  };

  int target = n - lis(p);
  while (static_cast<int>(moves.size()) < target) {
    // S positions in order: s_left[i] = last S value at a position < i, s_right analogous
    std::vector<int> sl(n + 1, 0), sr(n + 1, n + 1);
    {
      int last = 0;
      for (int i = 0; i < n; ++i) {
        sl[i] = last;
        if (in_s[cur[i]]) last = cur[i];
      }
      int next = n + 1;
      for (int i = n - 1; i >= 0; --i) {
        sr[i] = next;
        if (in_s[cur[i]]) next = cur[i];
      }
    }
    int pick = -1;
    bool rightward = false;
    for (int i = n - 1; i >= 0; --i) {
      if (!in_s[cur[i]] && cur[i] > sr[i]) {
        pick = i;
        rightward = true;
        break;
      }
    }
    if (pick < 0) {
      for (int i = 0; i < n; ++i) {
        if (!in_s[cur[i]] && cur[i] < sl[i]) {
          pick = i;
          break;
        }
      }
    }
    if (pick < 0) throw Error(Code::INTERNAL_INCONSISTENT_ORDERS, "unit-move sorter stalled");
    int v = cur[pick];
    BlockMove m;
    if (rightward) {
      // land right after the largest S value below v
      int anchor = 0;
      for (int x = v - 1; x >= 1; --x)
        if (in_s[x]) {
          anchor = x;
          break;
        }
      int k = anchor == 0 ? 0 : pos_of(anchor) + 1;
      m = BlockMove{pick + 1, pick + 1, k};
    } else {
      // land right before the smallest S value above v
      int anchor = n + 1;
      for (int x = v + 1; x <= n; ++x)
        if (in_s[x]) {
          anchor = x;
          break;
        }
      int i0 = pos_of(anchor) + 1;
      m = BlockMove{i0, pick, pick + 1};
    }
    if (!is_monotone_move(cur, m))
      throw Error(Code::INTERNAL_INCONSISTENT_ORDERS, "unit-move sorter produced a non-monotone move");
    moves.push_back(m);
    cur = apply_block_move(cur, m);
    in_s[v] = true;
  }
  if (!Permutation{cur}.is_identity())
    throw Error(Code::INTERNAL_INCONSISTENT_ORDERS, "unit-move sorter did not reach the identity");
  return moves;
}

}  // namespace blockline
