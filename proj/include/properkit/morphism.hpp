#pragma once

#include <set>
#include <string>

#include "properkit/model.hpp"
#include "properkit/properize.hpp"

namespace properkit {

struct ConditionCheck {
  bool holds = true;
  std::string counterexample;  // first violation, empty when the check holds
};

// Verdicts for the three bounded-morphism conditions (atomic harmony, forth,
// back) plus optional surjectivity. Counterexamples are reported for the
// first violation in state order, so failures are reproducible.
struct MorphismReport {
  ConditionCheck atomic_harmony;
  ConditionCheck forth;
  ConditionCheck back;
  bool surjectivity_checked = false;
  ConditionCheck surjective;

  bool pass() const {
    return atomic_harmony.holds && forth.holds && back.holds &&
           (!surjectivity_checked || surjective.holds);
  }
};

// Checks whether h is a bounded morphism from `source` to `target`:
//   (a) atomic harmony: x and h(x) satisfy the same propositions,
//   (b) forth: x R_i y implies h(x) R_i h(y),
//   (c) back: h(x) R_i z implies some y with x R_i y and h(y) = z,
//   (d) surjectivity, when requested.
// Atomic profiles range over the propositions mentioned by either model.
inline MorphismReport check_bounded_morphism(const RelationalStructure& source,
                                             const RelationalStructure& target,
                                             const StateMap& h,
                                             bool require_surjective = false) {
  if (source.agents != target.agents) {
    throw Error("bounded morphism requires equal agent counts (got " +
                std::to_string(source.agents) + " and " +
                std::to_string(target.agents) + ")");
  }
  for (const auto& x : source.states) {
    auto it = h.mapping.find(x);
    if (it == h.mapping.end()) {
      throw Error("state map is not total: no image for '" + x + "'");
    }
    if (!target.has_state(it->second)) {
      throw Error("state map image '" + it->second + "' of '" + x +
                  "' is not a target state");
    }
  }

  std::set<std::string> props;
  for (const auto& [p, ext] : source.valuation) props.insert(p);
  for (const auto& [p, ext] : target.valuation) props.insert(p);

  MorphismReport report;
  report.surjectivity_checked = require_surjective;

  for (const auto& x : source.states) {
    const StateId& hx = h.apply(x);
    for (const auto& p : props) {
      if (source.holds(p, x) != target.holds(p, hx)) {
        report.atomic_harmony = {
            false, "state '" + x + "' and image '" + hx +
                       "' disagree on proposition '" + p + "'"};
        break;
      }
    }
    if (!report.atomic_harmony.holds) break;
  }

  for (int i = 1; i <= source.agents && report.forth.holds; ++i) {
    for (const auto& [x, y] : source.relations[static_cast<std::size_t>(i) - 1]) {
      if (!target.related(i, h.apply(x), h.apply(y))) {
        report.forth = {false, "edge (" + x + ", " + y + ") of agent " +
                                   std::to_string(i) +
                                   " has no image edge (" + h.apply(x) + ", " +
                                   h.apply(y) + ")"};
        break;
      }
    }
  }

  for (const auto& x : source.states) {
    if (!report.back.holds) break;
    const StateId& hx = h.apply(x);
    for (int i = 1; i <= source.agents && report.back.holds; ++i) {
      StateSet lifted;
      for (const auto& y : successors(source, i, x)) lifted.insert(h.apply(y));
      for (const auto& z : successors(target, i, hx)) {
        if (lifted.count(z) == 0) {
          report.back = {false, "target edge (" + hx + ", " + z +
                                    ") of agent " + std::to_string(i) +
                                    " has no lift at '" + x + "'"};
          break;
        }
      }
    }
  }

  if (require_surjective) {
    StateSet image;
    for (const auto& [x, hx] : h.mapping) image.insert(hx);
    for (const auto& z : target.states) {
      if (image.count(z) == 0) {
        report.surjective = {false, "target state '" + z + "' has no preimage"};
        break;
      }
    }
  }
  return report;
}

// The projection pi_1(x_j, x_k) = x_j as an explicit table. Surjective by
// construction (each source state is the base of m product states).
inline StateMap projection_map(const ProperizedModel& p) {
  StateMap out;
  for (const auto& id : p.model.states) {
    out.mapping[id] = split_product_id(id).base;
  }
  return out;
}

}  // namespace properkit
