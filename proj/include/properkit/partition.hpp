#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "properkit/model.hpp"

namespace properkit {

// A partition of a model's state set into nonempty, pairwise disjoint blocks.
struct Partition {
  std::vector<StateSet> blocks;

  std::optional<std::size_t> block_of(const StateId& x) const {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (blocks[i].count(x) > 0) return i;
    }
    return std::nullopt;
  }

  bool same_block(const StateId& x, const StateId& y) const {
    auto bx = block_of(x);
    return bx.has_value() && bx == block_of(y);
  }
};

// Diagnostics for the partition invariants relative to a carrier: blocks
// nonempty, pairwise disjoint, union equal to the model's state set.
inline std::vector<std::string> validate_partition(
    const Partition& p, const RelationalStructure& m) {
  std::vector<std::string> diags;
  std::set<StateId> covered;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    if (p.blocks[i].empty()) {
      diags.push_back("block " + std::to_string(i) + " is empty");
    }
    for (const auto& x : p.blocks[i]) {
      if (!covered.insert(x).second) {
        diags.push_back("state '" + x + "' appears in more than one block");
      }
      if (!m.has_state(x)) {
        diags.push_back("block state '" + x + "' is not in the model");
      }
    }
  }
  for (const auto& x : m.states) {
    if (covered.count(x) == 0) {
      diags.push_back("state '" + x + "' is not covered by any block");
    }
  }
  return diags;
}

}  // namespace properkit
