#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "blockline/instance.hpp"
#include "blockline/solution.hpp"

namespace blockline {

struct RenderSpec {
  double margin = 40;
  double strand_spacing = 7;
  double node_gap = 150;
  double layer_gap = 80;
  int palette_seed = 0;
  bool crossing_markers = true;
};

namespace renderdetail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

inline const char* palette(int i) {
  static const char* colors[32] = {
      "#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085", "#2c3e50", "#f39c12",
      "#7f8c8d", "#e74c3c", "#3498db", "#2ecc71", "#9b59b6", "#e67e22", "#1abc9c", "#34495e",
      "#f1c40f", "#95a5a6", "#a93226", "#1f618d", "#1e8449", "#6c3483", "#a04000", "#117864",
      "#212f3c", "#b9770e", "#616a6b", "#cb4335", "#2471a3", "#229954", "#7d3c98", "#af601a"};
  return colors[((i % 32) + 32) % 32];
}

struct Point {
  double x = 0, y = 0;
};

/// Layered positions: paths and trees by skeleton distance, anything else on a
/// circle; terminals fan out beside their only neighbour.
inline std::map<int, Point> layout(const Instance& inst, const RenderSpec& spec) {
  std::map<int, Point> pos;
  std::vector<int> inner;
  for (int v = 0; v < inst.num_vertices(); ++v)
    if (!inst.is_terminal(v)) inner.push_back(v);

  bool cyclic = false;
  {
    std::vector<int> parent(inst.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int e = 0; e < inst.num_edges(); ++e) {
      int a = find(inst.edge_ends[e].first), b = find(inst.edge_ends[e].second);
      if (a == b) cyclic = true;
      parent[a] = b;
    }
  }

  if (!cyclic) {
    // BFS layers over the inner vertices, component by component
    std::map<int, int> layer, slot;
    std::vector<int> next_slot;
    std::set<int> seen;
    for (int root : inner) {
      if (seen.count(root)) continue;
      std::vector<int> queue{root};
      layer[root] = 0;
      seen.insert(root);
      while (!queue.empty()) {
        int v = queue.front();
        queue.erase(queue.begin());
        if (static_cast<int>(next_slot.size()) <= layer[v]) next_slot.resize(layer[v] + 1, 0);
        slot[v] = next_slot[layer[v]]++;
        for (int e : inst.rotation[v]) {
          int w = inst.other_end(e, v);
          if (inst.is_terminal(w) || seen.count(w)) continue;
          seen.insert(w);
          layer[w] = layer[v] + 1;
          queue.push_back(w);
        }
      }
    }
    for (int v : inner)
      pos[v] = {spec.margin + layer[v] * spec.node_gap, spec.margin + 60 + slot[v] * spec.layer_gap};
  } else {
    double r = std::max(80.0, 28.0 * inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) {
      double a = 2 * 3.14159265358979 * static_cast<double>(i) / std::max<std::size_t>(1, inner.size());
      pos[inner[i]] = {spec.margin + r + r * std::cos(a), spec.margin + 60 + r + r * std::sin(a)};
    }
  }

  // terminals sit beside their neighbour, spread by rotation slot
  for (int v = 0; v < inst.num_vertices(); ++v) {
    if (!inst.is_terminal(v)) continue;
    if (inst.rotation[v].empty()) {
      pos[v] = {spec.margin, spec.margin};
      continue;
    }
    int e = inst.rotation[v][0];
    int w = inst.other_end(e, v);
    if (inst.is_terminal(w)) {  // bare edge between two terminals
      if (!pos.count(w)) pos[w] = {spec.margin + spec.node_gap, spec.margin + 60};
      Point pw = pos[w];
      pos[v] = {pw.x - spec.node_gap, pw.y};
      continue;
    }
    int idx = inst.rotation_pos(w, e);
    int deg = static_cast<int>(inst.rotation[w].size());
    double angle = 2 * 3.14159265358979 * idx / std::max(1, deg) - 3.14159265358979 / 2;
    Point pw = pos[w];
    pos[v] = {pw.x + 0.55 * spec.node_gap * std::cos(angle),
              pw.y + 0.85 * spec.layer_gap * std::sin(angle)};
  }
  return pos;
}

}  // namespace renderdetail

/// Deterministic SVG: the skeleton in grey, each line a coloured strand offset
/// by its order position on every edge, block moves braided at evenly spaced
/// positions. More lines than palette entries degrade to dash patterns.
inline std::string render_svg(const Instance& inst, const Solution* sol, const RenderSpec& spec) {
  using renderdetail::fmt;
  using renderdetail::Point;
  std::map<int, Point> pos = renderdetail::layout(inst, spec);
  double w = 0, h = 0;
  for (auto& [v, p] : pos) {
    w = std::max(w, p.x);
    h = std::max(h, p.y);
  }
  w += spec.margin;
  h += spec.margin;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\""
      << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (int e = 0; e < inst.num_edges(); ++e) {
    Point a = pos[inst.edge_ends[e].first], b = pos[inst.edge_ends[e].second];
    out << "<line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\"" << fmt(b.x)
        << "\" y2=\"" << fmt(b.y) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  }

  if (sol) {
    // strand polylines per line, assembled edge by edge
    std::map<int, std::vector<std::string>> strands;  // line -> svg points chunks
    for (const auto& [e, es] : sol->edges) {
      std::vector<std::vector<int>> orders = unroll(es);
      int t = static_cast<int>(es.moves.size());
      int n = static_cast<int>(es.initial_order.size());
      Point a = pos[inst.edge_ends[e].first], b = pos[inst.edge_ends[e].second];
      double dx = b.x - a.x, dy = b.y - a.y;
      double len = std::max(1.0, std::hypot(dx, dy));
      double px = dy / len, py = -dx / len;  // left side looking along the edge
      auto strand_point = (
          [&](double f, int order_pos) {
            double off = ((n - 1) / 2.0 - order_pos) * spec.strand_spacing;
            return Point{a.x + f * dx + px * off, a.y + f * dy + py * off};
          });
      for (int k = 0; k <= t; ++k) {
        double f0 = k == 0 ? 0.0 : (static_cast<double>(k)) / (t + 1) + 0.04;
        double f1 = k == t ? 1.0 : (static_cast<double>(k) + 1) / (t + 1) - 0.04;
        for (int p = 0; p < n; ++p) {
          int line = orders[k][p];
          Point q0 = strand_point(f0, p), q1 = strand_point(f1, p);
          strands[line].push_back(fmt(q0.x) + "," + fmt(q0.y) + " " + fmt(q1.x) + "," + fmt(q1.y));
        }
      }
      if (spec.crossing_markers) {
        for (int k = 1; k <= t; ++k) {
          double f = static_cast<double>(k) / (t + 1);
          Point c{a.x + f * dx, a.y + f * dy};
          out << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y)
              << "\" r=\"3.0\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
        }
      }
    }
    for (int l = 0; l < inst.num_lines(); ++l) {
      auto it = strands.find(l);
      if (it == strands.end()) continue;
      std::string dash;
      if (l >= 32) {
        static const char* patterns[4] = {"", "6,3", "2,3", "8,3,2,3"};
        const char* p = patterns[(l / 32) % 4];
        if (*p) dash = std::string(" stroke-dasharray=\"") + p + "\"";
      }
      for (const std::string& seg : it->second)
        out << "<polyline points=\"" << seg << "\" fill=\"none\" stroke=\""
            << renderdetail::palette(l + spec.palette_seed) << "\" stroke-width=\"2\"" << dash
            << "/>\n";
    }
  }

  for (int v = 0; v < inst.num_vertices(); ++v) {
    Point p = pos[v];
    if (inst.is_terminal(v)) {
      out << "<rect x=\"" << fmt(p.x - 2) << "\" y=\"" << fmt(p.y - 2)
          << "\" width=\"4.0\" height=\"4.0\" fill=\"#888888\"/>\n";
    } else {
      out << "<circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y)
          << "\" r=\"4.0\" fill=\"#333333\"/>\n";
      out << "<text x=\"" << fmt(p.x + 6) << "\" y=\"" << fmt(p.y - 6)
          << "\" font-size=\"10\" font-family=\"monospace\" fill=\"#333333\">" << inst.vertex_id(v)
          << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace blockline
