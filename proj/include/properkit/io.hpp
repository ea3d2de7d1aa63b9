#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "properkit/error.hpp"
#include "properkit/model.hpp"

namespace properkit {

// Model JSON, the canonical exchange format of every CLI command:
//   {"states": ["x1","x2"], "agents": 2,
//    "relations": {"1": [["x1","x2"]], "2": []},
//    "valuation": {"p": ["x2"]}}
// State order is significant and preserved. Unknown fields, out-of-range
// agent keys, duplicate edges, and validation failures are all rejected.

inline RelationalStructure model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("model JSON must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "states" && key != "agents" && key != "relations" &&
        key != "valuation") {
      throw Error("unknown field '" + key + "' in model JSON");
    }
  }
  if (!j.contains("states") || !j["states"].is_array()) {
    throw Error("model JSON requires a 'states' array");
  }
  if (!j.contains("agents") || !j["agents"].is_number_integer()) {
    throw Error("model JSON requires an integer 'agents' field");
  }

  RelationalStructure m;
  for (const auto& s : j["states"]) {
    if (!s.is_string()) throw Error("state ids must be strings");
    m.states.push_back(s.get<std::string>());
  }
  m.agents = j["agents"].get<int>();
  if (m.agents < 1) {
    throw Error("schema error: agents must be at least 1 (got " +
                std::to_string(m.agents) + ")");
  }
  m.relations.resize(static_cast<std::size_t>(m.agents));

  if (j.contains("relations")) {
    if (!j["relations"].is_object()) throw Error("'relations' must be an object");
    for (const auto& [key, edges] : j["relations"].items()) {
      int agent = 0;
      try {
        std::size_t used = 0;
        agent = std::stoi(key, &used);
        if (used != key.size()) throw Error("");
      } catch (const std::exception&) {
        throw Error("relation key '" + key + "' is not an agent index");
      }
      if (agent < 1 || agent > m.agents) {
        throw Error("relation key '" + key + "' out of range for " +
                    std::to_string(m.agents) + " agent(s)");
      }
      if (!edges.is_array()) throw Error("relation '" + key + "' must be an array");
      for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
            !e[1].is_string()) {
          throw Error("edges of relation '" + key +
                      "' must be [from, to] string pairs");
        }
        Edge edge{e[0].get<std::string>(), e[1].get<std::string>()};
        if (!m.relations[static_cast<std::size_t>(agent) - 1].insert(edge).second) {
          throw Error("duplicate edge (" + edge.first + ", " + edge.second +
                      ") in relation '" + key + "'");
        }
      }
    }
  }

  if (j.contains("valuation")) {
    if (!j["valuation"].is_object()) throw Error("'valuation' must be an object");
    for (const auto& [prop, ext] : j["valuation"].items()) {
      if (prop.empty()) throw Error("proposition names must be nonempty");
      if (!ext.is_array()) {
        throw Error("valuation of '" + prop + "' must be an array");
      }
      StateSet states;
      for (const auto& s : ext) {
        if (!s.is_string()) throw Error("valuation states must be strings");
        states.insert(s.get<std::string>());
      }
      m.valuation[prop] = std::move(states);
    }
  }

  auto diags = validate(m);
  if (!diags.empty()) {
    std::string msg = "model failed validation:";
    for (const auto& d : diags) msg += "\n  - " + d;
    throw Error(msg);
  }
  return m;
}

inline nlohmann::json model_to_json(const RelationalStructure& m) {
  nlohmann::json j;
  j["states"] = m.states;
  j["agents"] = m.agents;
  nlohmann::json rels = nlohmann::json::object();
  for (int i = 1; i <= m.agents; ++i) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [x, y] : m.relations[static_cast<std::size_t>(i) - 1]) {
      edges.push_back({x, y});
    }
    rels[std::to_string(i)] = std::move(edges);
  }
  j["relations"] = std::move(rels);
  nlohmann::json val = nlohmann::json::object();
  for (const auto& [prop, ext] : m.valuation) {
    val[prop] = ext;
  }
  j["valuation"] = std::move(val);
  return j;
}

inline RelationalStructure load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed JSON in '" + path.string() + "': " + e.what());
  }
  return model_from_json(j);
}

inline void save_model(const RelationalStructure& m,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << model_to_json(m).dump(2) << "\n";
}

// State-map JSON: {"map": {"(x1|x1)": "x1", ...}}.

inline StateMap state_map_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("map") || !j["map"].is_object()) {
    throw Error("state map JSON must be an object with a 'map' field");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "map") throw Error("unknown field '" + key + "' in state map JSON");
  }
  StateMap out;
  for (const auto& [from, to] : j["map"].items()) {
    if (!to.is_string()) throw Error("state map images must be strings");
    out.mapping[from] = to.get<std::string>();
  }
  return out;
}

inline nlohmann::json state_map_to_json(const StateMap& map) {
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [from, to] : map.mapping) entries[from] = to;
  return nlohmann::json{{"map", std::move(entries)}};
}

inline StateMap load_state_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed JSON in '" + path.string() + "': " + e.what());
  }
  return state_map_from_json(j);
}

inline void save_state_map(const StateMap& map,
                           const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << state_map_to_json(map).dump(2) << "\n";
}

}  // namespace properkit
