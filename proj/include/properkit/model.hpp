#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "properkit/error.hpp"

namespace properkit {

using StateId = std::string;
using Edge = std::pair<StateId, StateId>;
using EdgeSet = std::set<Edge>;
using StateSet = std::set<StateId>;

// A finite multi-agent relational structure M = (X, (R_i), v).
//
// The order of `states` is significant: the position of a state is the index
// j used by the properization arithmetic, so it is preserved by serialization
// and by every transform. `relations[i-1]` is agent i's accessibility
// relation; `valuation` maps proposition names to the states where they hold
// (absent propositions have empty extension).
struct RelationalStructure {
  std::vector<StateId> states;
  int agents = 0;
  std::vector<EdgeSet> relations;
  std::map<std::string, StateSet> valuation;

  bool has_state(const StateId& x) const {
    return std::find(states.begin(), states.end(), x) != states.end();
  }

  // 0-based position of x in the state enumeration.
  std::optional<std::size_t> state_position(const StateId& x) const {
    auto it = std::find(states.begin(), states.end(), x);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
  }

  const EdgeSet& relation(int agent) const {
    require_agent(agent);
    return relations[static_cast<std::size_t>(agent) - 1];
  }

  bool related(int agent, const StateId& x, const StateId& y) const {
    return relation(agent).count({x, y}) > 0;
  }

  bool holds(const std::string& prop, const StateId& x) const {
    auto it = valuation.find(prop);
    return it != valuation.end() && it->second.count(x) > 0;
  }

  void require_agent(int agent) const {
    if (agent < 1 || agent > agents) {
      throw Error("agent index " + std::to_string(agent) +
                  " out of range for model with " + std::to_string(agents) +
                  " agent(s)");
    }
  }

  friend bool operator==(const RelationalStructure&,
                         const RelationalStructure&) = default;
};

// A total map between the state sets of two models, stored as an explicit
// table. Totality and image membership are checked by the consumers that
// know both endpoint models.
struct StateMap {
  std::map<StateId, StateId> mapping;

  const StateId& apply(const StateId& x) const {
    auto it = mapping.find(x);
    if (it == mapping.end()) throw Error("state map is not total: no image for '" + x + "'");
    return it->second;
  }

  friend bool operator==(const StateMap&, const StateMap&) = default;
};

// Checks every type invariant of a relational structure. Returns one
// diagnostic per violation (empty means well-formed); never throws.
inline std::vector<std::string> validate(const RelationalStructure& m) {
  std::vector<std::string> diags;
  if (m.states.empty()) diags.push_back("empty carrier: states list is empty");

  std::set<StateId> seen;
  for (const auto& x : m.states) {
    if (!seen.insert(x).second) diags.push_back("duplicate state: '" + x + "'");
  }

  if (m.agents < 1) {
    diags.push_back("agent count must be at least 1 (got " +
                    std::to_string(m.agents) + ")");
  }
  if (m.relations.size() != static_cast<std::size_t>(std::max(m.agents, 0))) {
    diags.push_back("relation count " + std::to_string(m.relations.size()) +
                    " does not match agent count " + std::to_string(m.agents));
  }

  for (std::size_t i = 0; i < m.relations.size(); ++i) {
    for (const auto& [x, y] : m.relations[i]) {
      if (seen.count(x) == 0) {
        diags.push_back("dangling endpoint: edge (" + x + ", " + y +
                        ") of agent " + std::to_string(i + 1) +
                        " references unknown state '" + x + "'");
      }
      if (seen.count(y) == 0) {
        diags.push_back("dangling endpoint: edge (" + x + ", " + y +
                        ") of agent " + std::to_string(i + 1) +
                        " references unknown state '" + y + "'");
      }
    }
  }

  for (const auto& [prop, extension] : m.valuation) {
    for (const auto& x : extension) {
      if (seen.count(x) == 0) {
        diags.push_back("valuation of '" + prop +
                        "' references unknown state '" + x + "'");
      }
    }
  }
  return diags;
}

// Throws if m fails validation; used by operations whose precondition is a
// well-formed model.
inline void require_valid(const RelationalStructure& m) {
  auto diags = validate(m);
  if (diags.empty()) return;
  std::string msg = "invalid model:";
  for (const auto& d : diags) msg += "\n  - " + d;
  throw Error(msg);
}

// R_i(x) = {y : x R_i y}.
inline StateSet successors(const RelationalStructure& m, int agent,
                           const StateId& x) {
  m.require_agent(agent);
  if (!m.has_state(x)) throw Error("unknown state '" + x + "'");
  const EdgeSet& rel = m.relations[static_cast<std::size_t>(agent) - 1];
  StateSet out;
  for (auto it = rel.lower_bound({x, StateId{}});
       it != rel.end() && it->first == x; ++it) {
    out.insert(it->second);
  }
  return out;
}

struct DisjointUnion {
  RelationalStructure model;
  StateMap left_injection;
  StateMap right_injection;
};

// Tagged union of two models over a single carrier; relations and valuation
// are carried over per copy. Tags "L."/"R." keep the two state sets apart.
inline DisjointUnion disjoint_union(const RelationalStructure& m1,
                                    const RelationalStructure& m2) {
  if (m1.agents != m2.agents) {
    throw Error("disjoint union requires equal agent counts (got " +
                std::to_string(m1.agents) + " and " +
                std::to_string(m2.agents) + ")");
  }
  DisjointUnion out;
  out.model.agents = m1.agents;
  out.model.relations.resize(static_cast<std::size_t>(std::max(m1.agents, 0)));

  auto add_copy = [&out](const RelationalStructure& m, const std::string& tag,
                         StateMap& inj) {
    for (const auto& x : m.states) {
      out.model.states.push_back(tag + x);
      inj.mapping[x] = tag + x;
    }
    for (std::size_t i = 0; i < m.relations.size(); ++i) {
      for (const auto& [x, y] : m.relations[i]) {
        out.model.relations[i].insert({tag + x, tag + y});
      }
    }
    for (const auto& [prop, extension] : m.valuation) {
      auto& ext = out.model.valuation[prop];
      for (const auto& x : extension) ext.insert(tag + x);
    }
  };

  add_copy(m1, "L.", out.left_injection);
  add_copy(m2, "R.", out.right_injection);
  return out;
}

}  // namespace properkit
