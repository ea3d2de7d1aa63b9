#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "properkit/model.hpp"
#include "properkit/partition.hpp"

namespace properkit {

namespace detail {

// Dense view of a model for the refinement loop: states as indices, per-agent
// successor lists, atomic profile per state over the propositions occurring
// in the valuation.
struct DenseModel {
  std::vector<std::vector<std::vector<int>>> succ;  // [agent][state] -> states
  std::vector<std::vector<bool>> atoms;             // [state][prop]

  explicit DenseModel(const RelationalStructure& m) {
    std::map<StateId, int> index;
    for (std::size_t i = 0; i < m.states.size(); ++i) {
      index[m.states[i]] = static_cast<int>(i);
    }
    succ.assign(m.relations.size(),
                std::vector<std::vector<int>>(m.states.size()));
    for (std::size_t a = 0; a < m.relations.size(); ++a) {
      for (const auto& [x, y] : m.relations[a]) {
        succ[a][static_cast<std::size_t>(index.at(x))].push_back(index.at(y));
      }
    }
    atoms.assign(m.states.size(), {});
    for (const auto& [prop, ext] : m.valuation) {
      for (std::size_t s = 0; s < m.states.size(); ++s) {
        atoms[s].push_back(ext.count(m.states[s]) > 0);
      }
    }
  }
};

}  // namespace detail

// The coarsest partition whose blocks agree on all propositions occurring in
// the valuation and are stable under every relation (two states of a block
// reach the same set of blocks per agent). Computed by signature refinement:
// split on atomic profile, then repeatedly on the per-agent sets of successor
// blocks until a fixed point. Block order follows the first member's position
// in the state enumeration.
inline Partition coarsest_bisimulation(const RelationalStructure& m) {
  require_valid(m);
  const std::size_t n = m.states.size();
  detail::DenseModel dense(m);

  std::vector<int> block(n, 0);
  {
    std::map<std::vector<bool>, int> ids;
    for (std::size_t s = 0; s < n; ++s) {
      auto [it, fresh] =
          ids.emplace(dense.atoms[s], static_cast<int>(ids.size()));
      block[s] = it->second;
      (void)fresh;
    }
  }

  using Signature = std::pair<int, std::vector<std::set<int>>>;
  std::size_t block_count = 0;
  for (int b : block) block_count = std::max(block_count, std::size_t(b) + 1);

  while (true) {
    std::map<Signature, int> ids;
    std::vector<int> next(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      Signature sig{block[s], {}};
      sig.second.reserve(dense.succ.size());
      for (const auto& per_agent : dense.succ) {
        std::set<int> reached;
        for (int t : per_agent[s]) reached.insert(block[static_cast<std::size_t>(t)]);
        sig.second.push_back(std::move(reached));
      }
      auto [it, fresh] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
      next[s] = it->second;
      (void)fresh;
    }
    if (ids.size() == block_count) break;
    block_count = ids.size();
    block = std::move(next);
  }

  // Renumber blocks by first occurrence so the output order is deterministic.
  Partition out;
  std::map<int, std::size_t> slot;
  for (std::size_t s = 0; s < n; ++s) {
    auto [it, fresh] = slot.emplace(block[s], out.blocks.size());
    if (fresh) out.blocks.emplace_back();
    out.blocks[it->second].insert(m.states[s]);
  }
  return out;
}

// Pointed bisimilarity across two models: true iff the states land in the
// same block of the coarsest bisimulation of the disjoint union.
inline bool bisimilar(const RelationalStructure& m1, const StateId& x1,
                      const RelationalStructure& m2, const StateId& x2) {
  if (m1.agents != m2.agents) {
    throw Error("bisimilarity requires equal agent counts (got " +
                std::to_string(m1.agents) + " and " +
                std::to_string(m2.agents) + ")");
  }
  if (!m1.has_state(x1)) throw Error("unknown state '" + x1 + "'");
  if (!m2.has_state(x2)) throw Error("unknown state '" + x2 + "'");
  DisjointUnion u = disjoint_union(m1, m2);
  Partition p = coarsest_bisimulation(u.model);
  return p.same_block(u.left_injection.apply(x1), u.right_injection.apply(x2));
}

namespace detail {

inline bool atoms_agree(const RelationalStructure& m1, const StateId& x1,
                        const RelationalStructure& m2, const StateId& x2,
                        const std::set<std::string>& props) {
  for (const auto& p : props) {
    if (m1.holds(p, x1) != m2.holds(p, x2)) return false;
  }
  return true;
}

inline bool bounded_bisim_rec(
    const RelationalStructure& m1, const StateId& x1,
    const RelationalStructure& m2, const StateId& x2, int depth,
    const std::set<std::string>& props,
    std::map<std::tuple<StateId, StateId, int>, bool>& memo) {
  auto key = std::make_tuple(x1, x2, depth);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  bool result = atoms_agree(m1, x1, m2, x2, props);
  for (int i = 1; i <= m1.agents && result && depth > 0; ++i) {
    StateSet s1 = successors(m1, i, x1);
    StateSet s2 = successors(m2, i, x2);
    for (const auto& y1 : s1) {
      bool matched = false;
      for (const auto& y2 : s2) {
        if (bounded_bisim_rec(m1, y1, m2, y2, depth - 1, props, memo)) {
          matched = true;
          break;
        }
      }
      if (!matched) {
        result = false;
        break;
      }
    }
    for (const auto& y2 : s2) {
      if (!result) break;
      bool matched = false;
      for (const auto& y1 : s1) {
        if (bounded_bisim_rec(m1, y1, m2, y2, depth - 1, props, memo)) {
          matched = true;
          break;
        }
      }
      if (!matched) {
        result = false;
        break;
      }
    }
  }
  memo[key] = result;
  return result;
}

}  // namespace detail

// Depth-bounded bisimilarity: atomic agreement at depth 0, forth/back
// matching against depth-1 recursively otherwise. Suitable for windows of
// lazy models whose radius is at least the requested depth.
inline bool bounded_bisimilar(const RelationalStructure& m1, const StateId& x1,
                              const RelationalStructure& m2, const StateId& x2,
                              int depth) {
  if (m1.agents != m2.agents) {
    throw Error("bisimilarity requires equal agent counts (got " +
                std::to_string(m1.agents) + " and " +
                std::to_string(m2.agents) + ")");
  }
  if (depth < 0) throw Error("depth must be nonnegative");
  if (!m1.has_state(x1)) throw Error("unknown state '" + x1 + "'");
  if (!m2.has_state(x2)) throw Error("unknown state '" + x2 + "'");

  std::set<std::string> props;
  for (const auto& [p, ext] : m1.valuation) props.insert(p);
  for (const auto& [p, ext] : m2.valuation) props.insert(p);

  std::map<std::tuple<StateId, StateId, int>, bool> memo;
  return detail::bounded_bisim_rec(m1, x1, m2, x2, depth, props, memo);
}

}  // namespace properkit
