#pragma once

#include <string>

#include "blockline/instance.hpp"
#include "blockline/solution.hpp"
#include "json.hpp"

namespace blockline {

// Canonical wire format: fixed key order, two-space indent, trailing newline.
// serialize(parse(s)) == s for canonical s, and parse(serialize(x)) == x.

inline std::string serialize_instance(const InstanceDoc& doc) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : doc.vertices)
    j["vertices"].push_back({{"id", v.id}, {"rotation", v.rotation}, {"terminal", v.terminal}});
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : doc.edges) j["edges"].push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}});
  j["lines"] = nlohmann::ordered_json::array();
  for (const auto& l : doc.lines) j["lines"].push_back({{"id", l.id}, {"vertices", l.vertices}});
  if (doc.upward)
    j["upward"] = {{"top", doc.upward->top}, {"bottom", doc.upward->bottom}};
  return j.dump(2) + "\n";
}

inline InstanceDoc parse_instance(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Code::PARSE_ERROR, e.what());
  }
  InstanceDoc doc;
  try {
    for (const auto& v : j.at("vertices")) {
      VertexRecord r;
      r.id = v.at("id").get<std::string>();
      for (const auto& e : v.at("rotation")) r.rotation.push_back(e.get<std::string>());
      r.terminal = v.value("terminal", false);
      doc.vertices.push_back(std::move(r));
    }
    for (const auto& e : j.at("edges"))
      doc.edges.push_back({e.at("id").get<std::string>(), e.at("u").get<std::string>(),
                           e.at("v").get<std::string>()});
    for (const auto& l : j.at("lines")) {
      LineRecord r;
      r.id = l.at("id").get<std::string>();
      for (const auto& v : l.at("vertices")) r.vertices.push_back(v.get<std::string>());
      doc.lines.push_back(std::move(r));
    }
    if (j.contains("upward")) {
      UpwardRecord u;
      for (const auto& t : j.at("upward").at("top")) u.top.push_back(t.get<std::string>());
      for (const auto& t : j.at("upward").at("bottom")) u.bottom.push_back(t.get<std::string>());
      doc.upward = std::move(u);
    }
  } catch (const nlohmann::ordered_json::exception& e) {
    throw Error(Code::PARSE_ERROR, e.what());
  }
  return doc;
}

inline std::string serialize_solution(const Solution& sol, const Instance& inst) {
  nlohmann::ordered_json j;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [e, es] : sol.edges) {
    nlohmann::ordered_json entry;
    entry["edge"] = inst.edge_id(e);
    entry["initial_order"] = nlohmann::ordered_json::array();
    for (int l : es.initial_order) entry["initial_order"].push_back(inst.line_id(l));
    entry["moves"] = nlohmann::ordered_json::array();
    for (const BlockMove& m : es.moves) entry["moves"].push_back({m.i, m.j, m.k});
    j["edges"].push_back(std::move(entry));
  }
  return j.dump(2) + "\n";
}

inline Solution parse_solution(const std::string& text, const Instance& inst) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Code::PARSE_ERROR, e.what());
  }
  Solution sol;
  try {
    for (const auto& entry : j.at("edges")) {
      EdgeSolution es;
      auto eid = entry.at("edge").get<std::string>();
      auto it = inst.edge_index.find(eid);
      if (it == inst.edge_index.end()) throw Error(Code::PARSE_ERROR, "unknown edge " + eid);
      es.edge = it->second;
      for (const auto& l : entry.at("initial_order")) {
        auto lid = l.get<std::string>();
        auto lit = inst.line_index.find(lid);
        if (lit == inst.line_index.end()) throw Error(Code::PARSE_ERROR, "unknown line " + lid);
        es.initial_order.push_back(lit->second);
      }
      for (const auto& m : entry.at("moves"))
        es.moves.push_back({m.at(0).get<int>(), m.at(1).get<int>(), m.at(2).get<int>()});
      sol.edges[es.edge] = std::move(es);
    }
  } catch (const nlohmann::ordered_json::exception& e) {
    throw Error(Code::PARSE_ERROR, e.what());
  }
  return sol;
}

}  // namespace blockline
