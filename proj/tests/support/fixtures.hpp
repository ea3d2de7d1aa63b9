#pragma once

#include "properkit/model.hpp"

namespace fixtures {

// Two states, both relations universal, p true exactly at x1. The standard
// improper example: every pair of distinct states is related by every agent.
inline properkit::RelationalStructure universal2() {
  properkit::RelationalStructure m;
  m.states = {"x1", "x2"};
  m.agents = 2;
  m.relations.resize(2);
  for (auto& rel : m.relations) {
    for (const auto& a : m.states) {
      for (const auto& b : m.states) rel.insert({a, b});
    }
  }
  m.valuation["p"] = {"x1"};
  return m;
}

// Two states, one R_1 edge x1 -> x2, p true at x2; agent 2's relation empty.
inline properkit::RelationalStructure chain2() {
  properkit::RelationalStructure m;
  m.states = {"x1", "x2"};
  m.agents = 2;
  m.relations.resize(2);
  m.relations[0].insert({"x1", "x2"});
  m.valuation["p"] = {"x2"};
  return m;
}

// One reflexive state where p holds.
inline properkit::RelationalStructure loop1() {
  properkit::RelationalStructure m;
  m.states = {"x1"};
  m.agents = 2;
  m.relations.resize(2);
  m.relations[0].insert({"x1", "x1"});
  m.relations[1].insert({"x1", "x1"});
  m.valuation["p"] = {"x1"};
  return m;
}

inline properkit::RelationalStructure single_agent_loop() {
  properkit::RelationalStructure m;
  m.states = {"x1"};
  m.agents = 1;
  m.relations.resize(1);
  m.relations[0].insert({"x1", "x1"});
  return m;
}

}  // namespace fixtures
