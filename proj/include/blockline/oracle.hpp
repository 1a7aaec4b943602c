#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "blockline/instance.hpp"
#include "blockline/permutation.hpp"
#include "blockline/solution.hpp"
#include "blockline/verify.hpp"

namespace blockline {

/// Caps for the brute-force searches; the oracle refuses inputs above them.
struct SearchBudget {
  int max_n = 7;                 // permutation size for the BFS searches
  long max_states = 4'000'000;   // visited-state cap
  int max_lines = 5;             // total lines for the multi-edge search
  int max_multiline_edges = 3;   // edges with two or more lines
};

namespace detail {

inline long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Lehmer rank of a permutation of 1..n.
inline long perm_rank(const std::vector<int>& p) {
  int n = static_cast<int>(p.size());
  long rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

inline std::vector<int> perm_unrank(long rank, int n) {
  std::vector<int> digits(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(rank % (n - i));
    rank /= (n - i);
  }
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(pool[digits[i]]);
    pool.erase(pool.begin() + digits[i]);
  }
  return out;
}

inline std::vector<BlockMove> all_moves(int n) {
  std::vector<BlockMove> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j + 1; k <= n; ++k) out.push_back({i, j, k});
  return out;
}

/// Left block strictly smaller than right block elementwise: applying such a
/// move to the identity side walks one monotone move backwards.
inline bool is_anti_monotone_move(const std::vector<int>& seq, const BlockMove& m) {
  for (int q = m.i; q <= m.j; ++q)
    for (int r = m.j + 1; r <= m.k; ++r)
      if (!(seq[q - 1] < seq[r - 1])) return false;
  return true;
}

}  // namespace detail

/// Exact block-move distances to the identity for every permutation of 1..n,
/// indexed by Lehmer rank. The move graph is symmetric, so one search from the
/// identity covers all starts.
inline std::vector<int> bc_distance_table(int n) {
  long total = detail::factorial(n);
  std::vector<int> dist(total, -1);
  std::vector<BlockMove> moves = detail::all_moves(n);
  std::deque<long> queue;
  dist[detail::perm_rank(Permutation::identity(n).elems)] = 0;
  queue.push_back(detail::perm_rank(Permutation::identity(n).elems));
  while (!queue.empty()) {
    long r = queue.front();
    queue.pop_front();
    std::vector<int> cur = detail::perm_unrank(r, n);
    for (const BlockMove& m : moves) {
      long nr = detail::perm_rank(apply_block_move(cur, m));
      if (dist[nr] < 0) {
        dist[nr] = dist[r] + 1;
        queue.push_back(nr);
      }
    }
  }
  return dist;
}

/// Monotone distances to the identity for every permutation of 1..n: a reverse
/// search from the identity over anti-monotone moves. No history is needed
/// because monotonicity of a move depends only on the current state.
inline std::vector<int> mbc_distance_table(int n) {
  long total = detail::factorial(n);
  std::vector<int> dist(total, -1);
  std::vector<BlockMove> moves = detail::all_moves(n);
  std::deque<long> queue;
  dist[detail::perm_rank(Permutation::identity(n).elems)] = 0;
  queue.push_back(detail::perm_rank(Permutation::identity(n).elems));
  while (!queue.empty()) {
    long r = queue.front();
    queue.pop_front();
    std::vector<int> cur = detail::perm_unrank(r, n);
    for (const BlockMove& m : moves) {
      if (!detail::is_anti_monotone_move(cur, m)) continue;
      long nr = detail::perm_rank(apply_block_move(cur, m));
      if (dist[nr] < 0) {
        dist[nr] = dist[r] + 1;
        queue.push_back(nr);
      }
    }
  }
  return dist;
}

namespace detail {

inline int bfs_distance(const Permutation& p, bool monotone, const SearchBudget& b,
                        std::vector<BlockMove>* witness) {
  int n = static_cast<int>(p.size());
  if (n > b.max_n)
    throw Error(Code::BUDGET_EXCEEDED, "permutation size " + std::to_string(n) +
                                           " above oracle cap " + std::to_string(b.max_n));
  if (p.is_identity()) return 0;
  std::vector<BlockMove> moves = all_moves(n);
  std::map<std::vector<int>, std::pair<std::vector<int>, BlockMove>> parent;
  std::map<std::vector<int>, int> dist;
  std::deque<std::vector<int>> queue;
  dist[p.elems] = 0;
  queue.push_back(p.elems);
  std::vector<int> idn = Permutation::identity(n).elems;
  while (!queue.empty()) {
    std::vector<int> cur = queue.front();
    queue.pop_front();
    for (const BlockMove& m : moves) {
      if (monotone && !is_monotone_move(cur, m)) continue;
      std::vector<int> nxt = apply_block_move(cur, m);
      if (dist.count(nxt)) continue;
      dist[nxt] = dist[cur] + 1;
      parent[nxt] = {cur, m};
      if (nxt == idn) {
        if (witness) {
          std::vector<BlockMove> seq;
          std::vector<int> s = nxt;
          while (s != p.elems) {
            auto& [prev, mv] = parent[s];
            seq.push_back(mv);
            s = prev;
          }
          std::reverse(seq.begin(), seq.end());
          *witness = std::move(seq);
        }
        return dist[nxt];
      }
      if (static_cast<long>(dist.size()) > b.max_states)
        throw Error(Code::BUDGET_EXCEEDED, "state cap exceeded in oracle search");
      queue.push_back(nxt);
    }
  }
  throw Error(Code::INTERNAL_INCONSISTENT_ORDERS, "identity unreachable");
}

}  // namespace detail

/// Exact minimum number of unrestricted block moves sorting p.
inline int exact_bc(const Permutation& p, const SearchBudget& b = {}) {
  return detail::bfs_distance(p, false, b, nullptr);
}

/// Exact minimum number of monotone block moves sorting p.
inline int exact_mbc(const Permutation& p, const SearchBudget& b = {}) {
  return detail::bfs_distance(p, true, b, nullptr);
}

inline std::vector<BlockMove> exact_bc_witness(const Permutation& p, const SearchBudget& b = {}) {
  std::vector<BlockMove> w;
  detail::bfs_distance(p, false, b, &w);
  return w;
}

inline std::vector<BlockMove> exact_mbc_witness(const Permutation& p, const SearchBudget& b = {}) {
  std::vector<BlockMove> w;
  detail::bfs_distance(p, true, b, &w);
  return w;
}

// ---------------------------------------------------------------------------
// Exact optimum for tiny multi-edge instances.
// ---------------------------------------------------------------------------

struct TinyResult {
  int optimum = 0;
  Solution witness;
};

namespace detail {

struct TinySearch {
  const Instance& inst;
  bool monotone;
  SearchBudget budget;
  std::vector<int> multi_edges;
  std::map<int, std::vector<int>> tables_bc;   // per edge size
  std::map<int, std::vector<int>> tables_mbc;
  Solution partial;
  std::set<int> assigned;
  int best = -1;
  Solution best_sol;
  std::set<std::pair<int, int>> flipped;  // line pairs already exchanged (monotone mode)

  explicit TinySearch(const Instance& i, bool mono, SearchBudget b)
      : inst(i), monotone(mono), budget(b) {}

  const std::vector<int>& table(int n, bool mono) {
    auto& cache = mono ? tables_mbc : tables_bc;
    auto it = cache.find(n);
    if (it == cache.end())
      it = cache.emplace(n, mono ? mbc_distance_table(n) : bc_distance_table(n)).first;
    return it->second;
  }

  /// v-end order of edge g, when known: assigned edges read from the partial
  /// solution, single-line edges are trivial.
  std::optional<std::vector<int>> end_order(int g, int v) {
    if (inst.edge_lines[g].empty()) return std::vector<int>{};
    if (inst.edge_lines[g].size() == 1) return std::vector<int>{inst.edge_lines[g][0]};
    if (assigned.count(g)) return order_at_end(inst, partial, g, v);
    return std::nullopt;
  }

  /// Forced order of L_e at the v end of e, or nullopt when a neighbouring
  /// multi-line edge is still open.
  std::optional<std::vector<int>> derive_end(int e, int v) {
    std::vector<char> want(inst.num_lines(), 0);
    for (int l : inst.edge_lines[e]) want[l] = 1;
    const auto& rot = inst.rotation[v];
    int n = static_cast<int>(rot.size());
    int pos = inst.rotation_pos(v, e);
    std::vector<int> out;
    for (int t = 1; t < n; ++t) {
      int g = rot[((pos - t) % n + n) % n];
      bool relevant = false;
      for (int l : inst.edge_lines[g])
        if (want[l]) relevant = true;
      if (!relevant) continue;
      auto seq = end_order(g, v);
      if (!seq) return std::nullopt;
      for (auto it = seq->rbegin(); it != seq->rend(); ++it)
        if (want[*it]) out.push_back(*it);
    }
    return out;
  }

  /// Chord check at v over the lines whose both slots are already known.
  bool vertex_ok(int v) {
    if (inst.degree[v] <= 1) return true;
    std::vector<int> slot_line, slot_edge;
    for (int g : inst.rotation[v]) {
      auto seq = end_order(g, v);
      if (!seq) continue;
      for (int l : *seq) {
        slot_line.push_back(l);
        slot_edge.push_back(g);
      }
    }
    int n_slots = static_cast<int>(slot_line.size());
    std::map<int, std::vector<int>> pos;
    for (int s = 0; s < n_slots; ++s) pos[slot_line[s]].push_back(s);
    auto between = [n_slots](int a, int b, int q) {
      int d_ab = ((b - a) % n_slots + n_slots) % n_slots;
      int d_aq = ((q - a) % n_slots + n_slots) % n_slots;
      return 0 < d_aq && d_aq < d_ab;
    };
    std::vector<int> through;
    for (auto& [l, ps] : pos)
      if (ps.size() == 2) through.push_back(l);
    for (std::size_t x = 0; x < through.size(); ++x)
      for (std::size_t y = x + 1; y < through.size(); ++y) {
        int l = through[x], m = through[y];
        if (inst.shared_edges(l, m).empty()) continue;
        if (between(pos[l][0], pos[l][1], pos[m][0]) != between(pos[l][0], pos[l][1], pos[m][1]))
          return false;
      }
    return true;
  }

  void run(int cost_so_far) {
    if (best >= 0 && cost_so_far >= best) return;
    if (assigned.size() == multi_edges.size()) {
      if (verify_consistency(inst, partial).ok) {
        best = cost_so_far;
        best_sol = partial;
      }
      return;
    }
    // pick the next edge: prefer one with a derivable endpoint
    int pick = -1, pick_end = -1, fallback = -1;
    std::optional<std::vector<int>> sigma;
    for (int e : multi_edges) {
      if (assigned.count(e)) continue;
      if (fallback < 0) fallback = e;
      for (int v : {inst.edge_ends[e].first, inst.edge_ends[e].second}) {
        auto d = derive_end(e, v);
        if (d) {
          pick = e;
          pick_end = v;
          sigma = std::move(d);
          break;
        }
      }
      if (pick >= 0) break;
    }
    if (pick < 0) pick = fallback;  // no forced endpoint anywhere: enumerate both ends
    int e = pick;
    int u_end = pick_end >= 0 ? pick_end : inst.edge_ends[e].first;
    int v_end = inst.other_end(e, u_end);
    int n = static_cast<int>(inst.edge_lines[e].size());

    std::vector<std::vector<int>> sigma_choices;
    if (sigma)
      sigma_choices.push_back(*sigma);
    else {
      std::vector<int> base = inst.edge_lines[e];
      std::sort(base.begin(), base.end());
      do sigma_choices.push_back(base);
      while (std::next_permutation(base.begin(), base.end()));
    }
    auto far_forced = derive_end(e, v_end);

    for (const auto& sig : sigma_choices) {
      std::vector<std::vector<int>> tau_choices;
      if (far_forced)
        tau_choices.push_back(*far_forced);
      else {
        std::vector<int> base = inst.edge_lines[e];
        std::sort(base.begin(), base.end());
        do tau_choices.push_back(base);
        while (std::next_permutation(base.begin(), base.end()));
      }
      for (const auto& tau : tau_choices) {
        // moves on e transform the u_end frame sequence sig into reverse(tau)
        std::vector<int> target(tau.rbegin(), tau.rend());
        std::map<int, int> tpos;
        for (int i = 0; i < n; ++i) tpos[target[i]] = i + 1;
        std::vector<int> rho(n);
        for (int i = 0; i < n; ++i) rho[i] = tpos.at(sig[i]);
        int cost = table(n, monotone)[perm_rank(rho)];
        if (best >= 0 && cost_so_far + cost >= best) continue;

        std::set<std::pair<int, int>> new_flips;
        if (monotone) {
          bool clash = false;
          for (int i = 0; i < n && !clash; ++i)
            for (int j = i + 1; j < n && !clash; ++j)
              if (rho[i] > rho[j]) {
                auto key = std::minmax(sig[i], sig[j]);
                if (flipped.count({key.first, key.second})) clash = true;
                new_flips.insert({key.first, key.second});
              }
          if (clash) continue;
        }

        EdgeSolution es;
        es.edge = e;
        std::vector<BlockMove> moves = descend(rho, monotone);
        es = oriented_edge_solution(inst, e, u_end, sig, moves);
        partial.edges[e] = es;
        assigned.insert(e);
        bool ok = vertex_ok(u_end) && vertex_ok(v_end);
        if (ok) {
          for (auto& f : new_flips) flipped.insert(f);
          run(cost_so_far + cost);
          for (auto& f : new_flips) flipped.erase(f);
        }
        assigned.erase(e);
        partial.edges.erase(e);
      }
    }
  }

  /// Move sequence realizing the table distance for rho (descent to identity).
  std::vector<BlockMove> descend(std::vector<int> rho, bool mono) {
    int n = static_cast<int>(rho.size());
    const std::vector<int>& dist = table(n, mono);
    std::vector<BlockMove> seq;
    while (!Permutation{rho}.is_identity()) {
      int d = dist[perm_rank(rho)];
      bool advanced = false;
      for (const BlockMove& m : all_moves(n)) {
        if (mono && !is_monotone_move(rho, m)) continue;
        std::vector<int> nxt = apply_block_move(rho, m);
        if (dist[perm_rank(nxt)] == d - 1) {
          seq.push_back(m);
          rho = std::move(nxt);
          advanced = true;
          break;
        }
      }
      if (!advanced) throw Error(Code::INTERNAL_INCONSISTENT_ORDERS, "table descent stalled");
    }
    return seq;
  }
};

}  // namespace detail

/// Exact optimum (and a verifier-accepted witness) for instances small enough
/// to enumerate: per-edge end orders are derived where the rotations force
/// them and enumerated otherwise; per-edge move counts come from the BFS
/// tables. In monotone mode the pairs exchanged so far are part of the state.
inline TinyResult exact_bcm_tiny(const Instance& inst, bool monotone,
                                 const SearchBudget& b = {}) {
  if (inst.num_lines() > b.max_lines)
    throw Error(Code::BUDGET_EXCEEDED, "instance has more than " + std::to_string(b.max_lines) + " lines");
  detail::TinySearch search(inst, monotone, b);
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (inst.edge_lines[e].size() >= 2) search.multi_edges.push_back(e);
    if (inst.edge_lines[e].size() == 1) {
      EdgeSolution es;
      es.edge = e;
      es.initial_order = inst.edge_lines[e];
      search.partial.edges[e] = es;
    }
  }
  if (static_cast<int>(search.multi_edges.size()) > b.max_multiline_edges)
    throw Error(Code::BUDGET_EXCEEDED, "too many multi-line edges for the tiny oracle");
  for (int e : search.multi_edges)
    if (static_cast<int>(inst.edge_lines[e].size()) > b.max_n)
      throw Error(Code::BUDGET_EXCEEDED, "edge with too many lines for the tiny oracle");

  search.run(0);
  if (search.best < 0)
    throw Error(Code::INTERNAL_INCONSISTENT_ORDERS, "no consistent assignment found");

  TinyResult res;
  res.optimum = search.best;
  res.witness = search.best_sol;
  return res;
}

}  // namespace blockline
