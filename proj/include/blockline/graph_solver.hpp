#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "blockline/instance.hpp"
#include "blockline/ordering.hpp"
#include "blockline/solution.hpp"

namespace blockline {

/// Side structure of one edge after merging: groups of (merged) lines anchored
/// at a common leaf of the cut side tree, plus the incidence counts feeding
/// the information-gain bound.
struct GroupDecomposition {
  int edge = -1;
  std::vector<int> left_sizes;   // group sizes after merging, left side
  std::vector<int> right_sizes;  // right side
  std::vector<std::vector<int>> s_matrix;  // s_ij, entries 0/1 after merging
  int merged_total = 0;          // s
  int largest = 0;               // l_1, over both sides
  int moves = 0;                 // b_e actually used
};

/// (I, b) of a post-merge decomposition: I = s^2 - sum l_i^2 - sum r_j^2 +
/// sum s_ij^2 and b = s - l_1; every edge satisfies b^2 <= I.
inline std::pair<long, long> information_gain(const GroupDecomposition& d) {
  long s = d.merged_total;
  long i_val = s * s;
  for (int l : d.left_sizes) i_val -= static_cast<long>(l) * l;
  for (int r : d.right_sizes) i_val -= static_cast<long>(r) * r;
  for (const auto& row : d.s_matrix)
    for (int v : row) i_val += static_cast<long>(v) * v;
  return {i_val, s - d.largest};
}

/// Symmetric seen-together relation over line pairs, reflexive included.
struct InformationTable {
  int n = 0;
  std::vector<char> seen;  // n*n
  void init(int lines) {
    n = lines;
    seen.assign(static_cast<std::size_t>(n) * n, 0);
  }
  bool get(int a, int b) const { return seen[static_cast<std::size_t>(a) * n + b] != 0; }
  /// Marks all pairs over `lines` and returns the number of ordered pairs
  /// (diagonal included) filled for the first time.
  long fill(const std::vector<int>& lines) {
    long fresh = 0;
    for (int a : lines)
      for (int b : lines) {
        auto idx = static_cast<std::size_t>(a) * n + b;
        if (!seen[idx]) {
          seen[idx] = 1;
          ++fresh;
        }
      }
    return fresh;
  }
};

enum class EdgeOrder { ById, ByInput };

struct GraphRunState {
  const Instance* inst = nullptr;
  std::vector<int> stamp;  // per edge, -1 while unprocessed
  int clock = 0;
  Solution sol;
  InformationTable table;
  std::vector<GroupDecomposition> decompositions;
  std::vector<long> info_gain_formula;  // per processed multi-line edge
  std::vector<long> info_gain_table;
};

namespace graphdetail {

/// Leaf of the cut side tree reached by walking line l backwards from the
/// `from` end of edge e: the first processed edge, else the line's terminal.
inline std::pair<char, int> side_leaf(const GraphRunState& st, int l, int e, int from) {
  const Instance& inst = *st.inst;
  const auto& edges = inst.line_edges[l];
  const auto& verts = inst.line_vertices[l];
  int idx = -1;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i] == e) idx = static_cast<int>(i);
  int step = verts[idx] == from ? -1 : 1;  // walk away from e, through `from`
  int cur = idx + step;
  while (cur >= 0 && cur < static_cast<int>(edges.size())) {
    if (st.stamp[edges[cur]] >= 0) return {'e', edges[cur]};
    cur += step;
  }
  int term = step < 0 ? verts.front() : verts.back();
  return {'t', term};
}

inline int crossing_edge(const GraphRunState& st, int a, int b, int current) {
  int best = -1, best_stamp = INT_MAX;
  for (int e : st.inst->shared_edges(a, b))
    if (st.stamp[e] >= 0 && st.stamp[e] < best_stamp) {
      best = e;
      best_stamp = st.stamp[e];
    }
  return best >= 0 ? best : current;
}

}  // namespace graphdetail

/// Sorts the lines of one edge: derive both end orders, merge lines that share
/// a leaf group on both sides, keep the largest merged group fixed and insert
/// every other merged line with one block move.
inline EdgeSolution sort_edge(GraphRunState& st, int e) {
  const Instance& inst = *st.inst;
  const std::vector<int>& lines = inst.edge_lines[e];
  auto [u, v] = inst.edge_ends[e];
  auto lookup = [&](int a, int b) { return graphdetail::crossing_edge(st, a, b, e); };

  std::vector<int> sigma = ordering::required_end_order(inst, e, u, lines, lookup);
  std::vector<int> tau = ordering::required_end_order(inst, e, v, lines, lookup);
  std::vector<int> target(tau.rbegin(), tau.rend());

  // groups by leaf on each side
  std::map<int, std::pair<char, int>> left_leaf, right_leaf;
  for (int l : lines) {
    left_leaf[l] = graphdetail::side_leaf(st, l, e, u);
    right_leaf[l] = graphdetail::side_leaf(st, l, e, v);
  }

  // merge lines sharing both leaves: they are consecutive and equally ordered
  // on both sides, so they travel as one unit
  std::vector<std::vector<int>> token_lines;
  std::map<int, int> token_of;
  {
    std::map<std::pair<std::pair<char, int>, std::pair<char, int>>, int> classes;
    std::vector<int> class_of_line(inst.num_lines(), -1);
    for (int l : sigma) {
      auto key = std::make_pair(left_leaf[l], right_leaf[l]);
      auto it = classes.find(key);
      if (it == classes.end()) {
        it = classes.emplace(key, static_cast<int>(token_lines.size())).first;
        token_lines.push_back({});
      }
      class_of_line[l] = it->second;
      token_lines[it->second].push_back(l);
    }
    for (int l : sigma) token_of[l] = class_of_line[l];
  }
  auto tokenized = [&](const std::vector<int>& seq) {
    std::vector<int> out;
    for (int l : seq)
      if (out.empty() || out.back() != token_of[l]) out.push_back(token_of[l]);
    return out;
  };
  std::vector<int> tok_sigma = tokenized(sigma);
  std::vector<int> tok_target = tokenized(target);
  if (tok_sigma.size() != token_lines.size() || tok_target.size() != token_lines.size())
    throw Error(Code::INTERNAL_INCONSISTENT_ORDERS,
                "merged lines are not consecutive on edge " + inst.edge_id(e));

  // groups in token space
  std::map<std::pair<char, int>, std::vector<int>> lgroups, rgroups;
  for (std::size_t t = 0; t < token_lines.size(); ++t) {
    lgroups[left_leaf[token_lines[t].front()]].push_back(static_cast<int>(t));
    rgroups[right_leaf[token_lines[t].front()]].push_back(static_cast<int>(t));
  }
  std::pair<char, int> best_leaf{0, 0};
  bool best_left = true;
  std::size_t best_size = 0;
  for (const auto& [leaf, toks] : lgroups)
    if (toks.size() > best_size) {
      best_size = toks.size();
      best_leaf = leaf;
      best_left = true;
    }
  for (const auto& [leaf, toks] : rgroups)
    if (toks.size() > best_size) {
      best_size = toks.size();
      best_leaf = leaf;
      best_left = false;
    }
  std::set<int> anchors;
  for (int t : (best_left ? lgroups : rgroups)[best_leaf]) anchors.insert(t);

  std::vector<BlockMove> tok_moves = ordering::schedule_moves(tok_sigma, tok_target, anchors);

  ordering::TokenPlan plan;
  plan.from = tok_sigma;
  plan.to = tok_target;
  plan.expand.resize(token_lines.size());
  for (std::size_t t = 0; t < token_lines.size(); ++t) {
    // expand in sigma order
    for (int l : sigma)
      if (token_of[l] == static_cast<int>(t)) plan.expand[t].push_back(l);
  }
  std::vector<BlockMove> moves = ordering::expand_token_moves(plan, tok_moves);

  // bookkeeping for the bound
  GroupDecomposition dec;
  dec.edge = e;
  for (const auto& [leaf, toks] : lgroups) dec.left_sizes.push_back(static_cast<int>(toks.size()));
  for (const auto& [leaf, toks] : rgroups) dec.right_sizes.push_back(static_cast<int>(toks.size()));
  dec.merged_total = static_cast<int>(token_lines.size());
  dec.largest = static_cast<int>(best_size);
  dec.moves = static_cast<int>(tok_moves.size());
  {
    std::map<std::pair<char, int>, int> lidx, ridx;
    for (const auto& [leaf, toks] : lgroups) lidx.emplace(leaf, static_cast<int>(lidx.size()));
    for (const auto& [leaf, toks] : rgroups) ridx.emplace(leaf, static_cast<int>(ridx.size()));
    dec.s_matrix.assign(lidx.size(), std::vector<int>(ridx.size(), 0));
    for (std::size_t t = 0; t < token_lines.size(); ++t) {
      int l = token_lines[t].front();
      ++dec.s_matrix[lidx.at(left_leaf[l])][ridx.at(right_leaf[l])];
    }
    for (const auto& row : dec.s_matrix)
      for (int cnt : row)
        if (cnt > 1)
          throw Error(Code::INTERNAL_INCONSISTENT_ORDERS,
                      "unmerged parallel lines on edge " + inst.edge_id(e));
  }
  st.decompositions.push_back(dec);
  auto [i_formula, b_formula] = information_gain(dec);
  st.info_gain_formula.push_back(i_formula);
  st.info_gain_table.push_back(st.table.fill(lines));
  (void)b_formula;

  EdgeSolution es;
  es.edge = e;
  es.initial_order = sigma;
  es.moves = std::move(moves);
  return es;
}

struct GraphSolveOptions {
  EdgeOrder edge_order = EdgeOrder::ById;
};

/// Processes every edge carrying at least two lines in a fixed order and sorts
/// it completely; a pair of lines can only cross on the first processed edge
/// they share, which caps the total number of block crossings by |L|sqrt(|E'|).
inline Solution solve_graph(const Instance& inst, const GraphSolveOptions& opts = {},
                            GraphRunState* state_out = nullptr) {
  GraphRunState st;
  st.inst = &inst;
  st.stamp.assign(inst.num_edges(), -1);
  st.table.init(inst.num_lines());

  std::vector<int> order(inst.num_edges());
  std::iota(order.begin(), order.end(), 0);
  if (opts.edge_order == EdgeOrder::ById)
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return inst.edge_id(a) < inst.edge_id(b); });

  for (int e : order) {
    if (inst.edge_lines[e].size() >= 2) {
      st.sol.edges[e] = sort_edge(st, e);
    } else if (inst.edge_lines[e].size() == 1) {
      EdgeSolution es;
      es.edge = e;
      es.initial_order = inst.edge_lines[e];
      st.sol.edges[e] = es;
    }
    st.stamp[e] = st.clock++;
  }
  if (state_out) *state_out = st;
  return st.sol;
}

}  // namespace blockline
