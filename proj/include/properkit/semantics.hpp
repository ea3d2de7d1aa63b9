#pragma once

#include <set>
#include <string>
#include <unordered_map>

#include "properkit/formula.hpp"
#include "properkit/model.hpp"

namespace properkit {

namespace detail {

// Bottom-up evaluation: each subformula's extension is computed once, keyed
// by node identity so shared subtrees are not re-evaluated.
inline const StateSet& eval_extension(
    const RelationalStructure& m, const Formula& f,
    std::unordered_map<const void*, StateSet>& memo) {
  auto it = memo.find(f.id());
  if (it != memo.end()) return it->second;

  StateSet result;
  switch (f.kind()) {
    case Formula::Kind::Prop: {
      auto v = m.valuation.find(f.prop_name());
      if (v != m.valuation.end()) result = v->second;
      break;
    }
    case Formula::Kind::Not: {
      const StateSet& sub = eval_extension(m, f.child(), memo);
      for (const auto& x : m.states) {
        if (sub.count(x) == 0) result.insert(x);
      }
      break;
    }
    case Formula::Kind::And: {
      const StateSet& l = eval_extension(m, f.left(), memo);
      const StateSet& r = eval_extension(m, f.right(), memo);
      for (const auto& x : l) {
        if (r.count(x) > 0) result.insert(x);
      }
      break;
    }
    case Formula::Kind::Know: {
      m.require_agent(f.agent());
      const StateSet& sub = eval_extension(m, f.child(), memo);
      // M,x |= K_i f  iff  R_i(x) is a subset of [[f]].
      for (const auto& x : m.states) {
        bool all = true;
        StateSet succ = successors(m, f.agent(), x);
        for (const auto& y : succ) {
          if (sub.count(y) == 0) {
            all = false;
            break;
          }
        }
        if (all) result.insert(x);
      }
      break;
    }
  }
  return memo.emplace(f.id(), std::move(result)).first->second;
}

}  // namespace detail

// [[f]] = {x in X : M,x |= f}.
inline StateSet extension(const RelationalStructure& m, const Formula& f) {
  std::unordered_map<const void*, StateSet> memo;
  return detail::eval_extension(m, f, memo);
}

inline bool satisfies(const RelationalStructure& m, const StateId& x,
                      const Formula& f) {
  if (!m.has_state(x)) throw Error("unknown state '" + x + "'");
  return extension(m, f).count(x) > 0;
}

}  // namespace properkit
