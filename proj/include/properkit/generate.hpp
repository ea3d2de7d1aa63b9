#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>

#include "properkit/model.hpp"
#include "properkit/props.hpp"

namespace properkit {

// Seeded random model: states x1..xm, propositions p1..pk. Each directed
// edge is included independently with probability `density` per agent; each
// proposition holds at each state with probability 1/2. When `closure` is
// nonempty, every agent's relation is closed under the requested properties
// afterwards. Deterministic for a fixed seed.
inline RelationalStructure gen_random(int states, int agents, double density,
                                      int prop_count,
                                      const std::set<FrameProperty>& closure,
                                      std::uint64_t seed) {
  if (states < 1) throw Error("need at least one state");
  if (agents < 1) throw Error("need at least one agent");
  if (density < 0.0 || density > 1.0) throw Error("density must be in [0, 1]");
  if (prop_count < 0) throw Error("proposition count must be nonnegative");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  RelationalStructure m;
  m.agents = agents;
  m.relations.resize(static_cast<std::size_t>(agents));
  for (int s = 1; s <= states; ++s) m.states.push_back("x" + std::to_string(s));

  for (int i = 0; i < agents; ++i) {
    for (const auto& x : m.states) {
      for (const auto& y : m.states) {
        if (coin(rng) < density) m.relations[static_cast<std::size_t>(i)].insert({x, y});
      }
    }
  }
  for (int p = 1; p <= prop_count; ++p) {
    StateSet ext;
    for (const auto& x : m.states) {
      if (coin(rng) < 0.5) ext.insert(x);
    }
    m.valuation["p" + std::to_string(p)] = std::move(ext);
  }

  if (!closure.empty()) {
    for (int i = 1; i <= agents; ++i) m = close_under(m, i, closure);
  }
  return m;
}

}  // namespace properkit
