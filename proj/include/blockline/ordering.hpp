#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "blockline/instance.hpp"
#include "blockline/solution.hpp"

namespace blockline {

/// Looks up the edge hosting the single crossing of a line pair; -1 when the
/// pair never crosses.
using CrossingEdgeLookup = std::function<int(int, int)>;

namespace ordering {

/// Relative order of lines l and m at the w end of shared edge f (in the
/// clockwise frame at w): true when l comes first. The pair's crossing, if
/// any, sits on `crossing_edge`; the relation is pulled back from the common
/// subpath end on the crossing-free side.
inline bool rel_first_at_end(const Instance& inst, int l, int m, int f, int w,
                             int crossing_edge) {
  const auto& le = inst.line_edges[l];
  const auto& lv = inst.line_vertices[l];
  std::vector<int> shared = inst.shared_edges(l, m);  // ordered along l
  int i_f = -1;
  for (std::size_t i = 0; i < shared.size(); ++i)
    if (shared[i] == f) i_f = static_cast<int>(i);
  // position of f on line l, to orient "away from w"
  int p_f = -1;
  for (std::size_t i = 0; i < le.size(); ++i)
    if (le[i] == f) p_f = static_cast<int>(i);
  bool away_increasing = lv[p_f] == w;  // l's traversal leaves w into f

  int i_x = -1;
  if (crossing_edge >= 0)
    for (std::size_t i = 0; i < shared.size(); ++i)
      if (shared[i] == crossing_edge) i_x = static_cast<int>(i);
  bool crossing_on_far_side =
      i_x >= 0 && (away_increasing ? i_x >= i_f : i_x <= i_f);

  // pick the crossing-free common end: behind w (even pullback) or the far
  // end (odd pullback, reversing the relation)
  int end_idx, end_edge;
  bool reverse;
  if (crossing_on_far_side) {
    end_idx = away_increasing ? 0 : static_cast<int>(shared.size()) - 1;
    end_edge = shared[end_idx];
    reverse = false;
  } else {
    end_idx = away_increasing ? static_cast<int>(shared.size()) - 1 : 0;
    end_edge = shared[end_idx];
    reverse = true;
  }
  // the common-end vertex on the corresponding side
  int p_e = -1;
  for (std::size_t i = 0; i < le.size(); ++i)
    if (le[i] == end_edge) p_e = static_cast<int>(i);
  int end_vertex;
  if (crossing_on_far_side)
    end_vertex = away_increasing ? lv[p_e] : lv[p_e + 1];
  else
    end_vertex = away_increasing ? lv[p_e + 1] : lv[p_e];
  bool l_first = first_at_shared_end(inst, l, m, end_vertex, end_edge);
  return reverse ? !l_first : l_first;
}

/// Order of `lines` at the w end of edge f implied by the rotations and the
/// crossing assignment. Throws when the pairwise relations are not a total
/// order, which signals an inconsistent crossing assignment.
inline std::vector<int> required_end_order(const Instance& inst, int f, int w,
                                           const std::vector<int>& lines,
                                           const CrossingEdgeLookup& crossing_edge) {
  std::vector<int> out;
  for (int l : lines) {
    std::size_t pos = 0;
    while (pos < out.size() && rel_first_at_end(inst, out[pos], l, f, w, crossing_edge(out[pos], l)))
      ++pos;
    out.insert(out.begin() + pos, l);
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (!rel_first_at_end(inst, out[i], out[j], f, w, crossing_edge(out[i], out[j])))
        throw Error(Code::INTERNAL_INCONSISTENT_ORDERS,
                    "end order of " + inst.edge_id(f) + " is not totally ordered");
  return out;
}

// ---------------------------------------------------------------------------
// Single-token relocation scheduling.
// ---------------------------------------------------------------------------

struct TokenPlan {
  std::vector<int> from;                  // token sequence at the near end
  std::vector<int> to;                    // token sequence at the far end
  std::vector<std::vector<int>> expand;   // token -> its lines, near-frame order
};

/// Greedy tokenization: maximal runs adjacent in both sequences in the same
/// order move as one unit and can never be split by an optimal schedule.
inline TokenPlan merge_tokens(const std::vector<int>& from, const std::vector<int>& to) {
  TokenPlan plan;
  std::map<int, int> pos_to;
  for (std::size_t i = 0; i < to.size(); ++i) pos_to[to[i]] = static_cast<int>(i);
  std::size_t i = 0;
  while (i < from.size()) {
    std::size_t j = i;
    while (j + 1 < from.size() && pos_to.at(from[j + 1]) == pos_to.at(from[j]) + 1) ++j;
    std::vector<int> run(from.begin() + i, from.begin() + j + 1);
    plan.expand.push_back(run);
    i = j + 1;
  }
  int t = 0;
  std::map<int, int> head_token;
  for (const auto& run : plan.expand) head_token[run.front()] = t++;
  for (std::size_t k = 0; k < plan.expand.size(); ++k) plan.from.push_back(static_cast<int>(k));
  for (int line : to)
    if (head_token.count(line)) plan.to.push_back(head_token.at(line));
  return plan;
}

/// Expands token moves back to line moves using the token lengths along the
/// evolving token order.
inline std::vector<BlockMove> expand_token_moves(const TokenPlan& plan,
                                                 const std::vector<BlockMove>& token_moves) {
  std::vector<BlockMove> out;
  std::vector<int> cur = plan.from;
  for (const BlockMove& m : token_moves) {
    std::vector<int> pref(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i)
      pref[i + 1] = pref[i] + static_cast<int>(plan.expand[cur[i]].size());
    out.push_back(BlockMove{pref[m.i - 1] + 1, pref[m.j], pref[m.k]});
    cur = apply_block_move(cur, m);
  }
  return out;
}

/// Searches for an order of single-token relocations from `from` to `to` such
/// that every token moves at most once and no pair of tokens is exchanged
/// twice. Anchored tokens never move.
class MoveScheduler {
 public:
  MoveScheduler(std::vector<int> from, std::vector<int> to, std::set<int> anchors)
      : from_(std::move(from)), to_(std::move(to)), anchors_(std::move(anchors)) {
    for (std::size_t i = 0; i < to_.size(); ++i) pos_to_[to_[i]] = static_cast<int>(i);
  }

  std::optional<std::vector<BlockMove>> solve() {
    std::vector<BlockMove> moves;
    std::set<std::pair<int, int>> swapped;
    std::set<int> moved;
    budget_ = 200000;
    if (search(from_, moves, swapped, moved)) return moves;
    return std::nullopt;
  }

 private:
  bool target_before(int a, int b) const { return pos_to_.at(a) < pos_to_.at(b); }

  bool search(std::vector<int> cur, std::vector<BlockMove>& moves,
              std::set<std::pair<int, int>>& swapped, std::set<int>& moved) {
    if (cur == to_) return true;
    if (--budget_ <= 0) return false;
    int n = static_cast<int>(cur.size());
    for (int cand = 0; cand < n; ++cand) {
      int tok = cur[cand];
      if (anchors_.count(tok) || moved.count(tok)) continue;
      // hard landing window: settled tokens force a side, unmoved movables
      // whose relative order already matches the target must keep it
      int lo = 0, hi = n - 1;
      for (int i = 0; i < n; ++i) {
        if (i == cand) continue;
        int other = cur[i];
        bool settled = anchors_.count(other) || moved.count(other);
        bool same_rel = (i < cand) == target_before(other, tok);
        if (settled || same_rel) {
          if (target_before(other, tok))
            lo = std::max(lo, i < cand ? i + 1 : i);
          else
            hi = std::min(hi, i < cand ? i : i - 1);
        }
      }
      if (lo > hi) continue;
      std::vector<int> slots;
      int clamped = std::clamp(cand, lo, hi);
      slots.push_back(clamped);
      if (lo != clamped) slots.push_back(lo);
      if (hi != clamped && hi != lo) slots.push_back(hi);
      for (int slot : slots) {
        if (slot == cand) continue;
        // pairs exchanged by this relocation
        int a = std::min(slot, cand), b = std::max(slot, cand);
        bool ok = true;
        std::vector<std::pair<int, int>> new_swaps;
        for (int i = a; i <= b && ok; ++i) {
          if (i == cand) continue;
          auto key = std::minmax(tok, cur[i]);
          if (swapped.count({key.first, key.second})) ok = false;
          // the swap must bring the pair into target order
          bool tok_before_pre = cand < i;
          bool tok_before_target = target_before(tok, cur[i]);
          if (tok_before_pre == tok_before_target) ok = false;  // would break a correct pair
          if (ok) new_swaps.push_back({key.first, key.second});
        }
        if (!ok) continue;
        BlockMove m = slot < cand ? BlockMove{slot + 1, cand, cand + 1}
                                  : BlockMove{cand + 1, cand + 1, slot + 1};
        std::vector<int> nxt = apply_block_move(cur, m);
        for (auto& s : new_swaps) swapped.insert(s);
        moved.insert(tok);
        moves.push_back(m);
        if (search(std::move(nxt), moves, swapped, moved)) return true;
        moves.pop_back();
        moved.erase(tok);
        for (auto& s : new_swaps) swapped.erase(s);
      }
    }
    return false;
  }

  std::vector<int> from_, to_;
  std::set<int> anchors_;
  std::map<int, int> pos_to_;
  long budget_ = 0;
};

/// Moves from `from` to `to` where only non-anchored tokens may relocate, one
/// move each, no token pair exchanged twice.
inline std::vector<BlockMove> schedule_moves(const std::vector<int>& from,
                                             const std::vector<int>& to,
                                             const std::set<int>& anchors) {
  if (from == to) return {};
  MoveScheduler s(from, to, anchors);
  auto res = s.solve();
  if (!res) throw Error(Code::INTERNAL_INCONSISTENT_ORDERS, "no single-move schedule found");
  return *res;
}

}  // namespace ordering
}  // namespace blockline
