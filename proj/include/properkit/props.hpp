#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "properkit/model.hpp"

namespace properkit {

enum class FrameProperty { Reflexive, Symmetric, Transitive, Serial, Euclidean };

inline constexpr FrameProperty kAllFrameProperties[] = {
    FrameProperty::Reflexive, FrameProperty::Symmetric,
    FrameProperty::Transitive, FrameProperty::Serial,
    FrameProperty::Euclidean};

inline std::string to_string(FrameProperty p) {
  switch (p) {
    case FrameProperty::Reflexive: return "reflexive";
    case FrameProperty::Symmetric: return "symmetric";
    case FrameProperty::Transitive: return "transitive";
    case FrameProperty::Serial: return "serial";
    case FrameProperty::Euclidean: return "euclidean";
  }
  return "?";
}

inline std::optional<FrameProperty> frame_property_from_string(
    std::string_view s) {
  for (FrameProperty p : kAllFrameProperties) {
    if (s == to_string(p)) return p;
  }
  return std::nullopt;
}

struct PropernessResult {
  bool proper = true;
  std::optional<Edge> witness;  // a distinct pair related by every agent
};

// A structure is proper when no pair of distinct points x != y satisfies
// x R_i y for all i. Any witness pair must be an edge of every relation, so
// it suffices to scan the sparsest relation.
inline PropernessResult is_proper(const RelationalStructure& m) {
  if (m.agents < 1 || m.relations.size() != static_cast<std::size_t>(m.agents)) {
    return {true, std::nullopt};
  }
  int probe = 1;
  for (int i = 2; i <= m.agents; ++i) {
    if (m.relations[i - 1].size() < m.relations[probe - 1].size()) probe = i;
  }
  for (const auto& [x, y] : m.relations[probe - 1]) {
    if (x == y) continue;
    bool all = true;
    for (int i = 1; i <= m.agents && all; ++i) {
      if (i == probe) continue;
      all = m.related(i, x, y);
    }
    if (all) return {false, Edge{x, y}};
  }
  return {true, std::nullopt};
}

struct PropertyResult {
  bool holds = true;
  std::vector<StateId> counterexample;  // violating tuple, empty when holds
};

inline PropertyResult check_property(const RelationalStructure& m, int agent,
                                     FrameProperty prop) {
  m.require_agent(agent);
  const EdgeSet& rel = m.relations[static_cast<std::size_t>(agent) - 1];
  auto related = [&rel](const StateId& a, const StateId& b) {
    return rel.count({a, b}) > 0;
  };
  switch (prop) {
    case FrameProperty::Reflexive:
      for (const auto& x : m.states) {
        if (!related(x, x)) return {false, {x}};
      }
      return {};
    case FrameProperty::Symmetric:
      for (const auto& [x, y] : rel) {
        if (!related(y, x)) return {false, {x, y}};
      }
      return {};
    case FrameProperty::Transitive:
      for (const auto& [x, y] : rel) {
        for (const auto& z : successors(m, agent, y)) {
          if (!related(x, z)) return {false, {x, y, z}};
        }
      }
      return {};
    case FrameProperty::Serial:
      for (const auto& x : m.states) {
        if (successors(m, agent, x).empty()) return {false, {x}};
      }
      return {};
    case FrameProperty::Euclidean:
      for (const auto& x : m.states) {
        StateSet succ = successors(m, agent, x);
        for (const auto& y : succ) {
          for (const auto& z : succ) {
            if (!related(y, z)) return {false, {x, y, z}};
          }
        }
      }
      return {};
  }
  return {};
}

// Smallest-effort superset of R_agent satisfying all requested properties,
// obtained by iterating the single-property closures to a joint fixed point
// (single closures can break each other, e.g. adding a symmetric reverse can
// invalidate transitivity). Each step only adds pairs within the finite
// square X x X, so the iteration terminates.
inline RelationalStructure close_under(const RelationalStructure& m, int agent,
                                       const std::set<FrameProperty>& props) {
  m.require_agent(agent);
  if (props.empty()) throw Error("close_under requires at least one property");

  RelationalStructure out = m;
  EdgeSet& rel = out.relations[static_cast<std::size_t>(agent) - 1];

  bool changed = true;
  while (changed) {
    changed = false;
    auto add = [&rel, &changed](const StateId& a, const StateId& b) {
      if (rel.insert({a, b}).second) changed = true;
    };
    for (FrameProperty p : props) {
      switch (p) {
        case FrameProperty::Reflexive:
          for (const auto& x : out.states) add(x, x);
          break;
        case FrameProperty::Symmetric: {
          EdgeSet snapshot = rel;
          for (const auto& [x, y] : snapshot) add(y, x);
          break;
        }
        case FrameProperty::Transitive: {
          EdgeSet snapshot = rel;
          for (const auto& [x, y] : snapshot) {
            for (const auto& [y2, z] : snapshot) {
              if (y2 == y) add(x, z);
            }
          }
          break;
        }
        case FrameProperty::Serial:
          // A self-loop at dead-end states keeps the carrier fixed.
          for (const auto& x : out.states) {
            if (successors(out, agent, x).empty()) add(x, x);
          }
          break;
        case FrameProperty::Euclidean: {
          EdgeSet snapshot = rel;
          for (const auto& [x, y] : snapshot) {
            for (const auto& [x2, z] : snapshot) {
              if (x2 == x) add(y, z);
            }
          }
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace properkit
