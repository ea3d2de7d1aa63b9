// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Thresholds, corpus sizes, and tolerances are pinned here.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "properkit/bisim.hpp"
#include "properkit/formula.hpp"
#include "properkit/generate.hpp"
#include "properkit/io.hpp"
#include "properkit/morphism.hpp"
#include "properkit/properize.hpp"
#include "properkit/props.hpp"
#include "properkit/semantics.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace properkit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  int checks = 0;

  void fail(const std::string& why) {
    if (pass) detail = why;  // keep the first failure
    pass = false;
  }
};

using Criterion = std::function<Outcome()>;

const std::vector<corpus::Entry>& full_corpus() {
  static const std::vector<corpus::Entry> corpus = corpus::make_corpus(500);
  return corpus;
}

// 1. Properness theorem: every properization, for every skew agent, is
// proper. Budget: 30 seconds for the whole sweep.
Outcome properness_theorem() {
  Outcome out;
  for (const auto& entry : full_corpus()) {
    for (int skew = 1; skew <= entry.agents; ++skew) {
      auto result = properize_finite(entry.model, skew);
      ++out.checks;
      auto verdict = is_proper(result.properized.model);
      if (!verdict.proper) {
        out.fail("improper output for seed " + std::to_string(entry.seed) +
                 ", skew " + std::to_string(skew) + ", witness (" +
                 verdict.witness->first + ", " + verdict.witness->second + ")");
      }
    }
  }
  return out;
}

// 2. Partition theorem: exactly m pairwise-disjoint blocks covering the
// product carrier, with the projection bijective on each block.
Outcome partition_theorem() {
  Outcome out;
  for (const auto& entry : full_corpus()) {
    for (int skew = 1; skew <= entry.agents; ++skew) {
      auto result = properize_finite(entry.model, skew);
      auto blocks = partition_blocks(result.properized);
      ++out.checks;
      if (blocks.blocks.size() != entry.model.states.size()) {
        out.fail("expected " + std::to_string(entry.model.states.size()) +
                 " blocks, got " + std::to_string(blocks.blocks.size()) +
                 " (seed " + std::to_string(entry.seed) + ")");
        continue;
      }
      if (!validate_partition(blocks, result.properized.model).empty()) {
        out.fail("blocks do not partition the carrier (seed " +
                 std::to_string(entry.seed) + ")");
        continue;
      }
      for (const auto& block : blocks.blocks) {
        StateSet bases;
        for (const auto& id : block) bases.insert(split_product_id(id).base);
        if (block.size() != entry.model.states.size() ||
            bases.size() != entry.model.states.size()) {
          out.fail("projection not bijective on a block (seed " +
                   std::to_string(entry.seed) + ")");
        }
      }
    }
  }
  return out;
}

// 3. Bounded-morphism theorem: the projection passes atomic harmony, forth,
// back, and surjectivity on the full corpus.
Outcome bounded_morphism_theorem() {
  Outcome out;
  for (const auto& entry : full_corpus()) {
    for (int skew = 1; skew <= entry.agents; ++skew) {
      auto result = properize_finite(entry.model, skew);
      auto report = check_bounded_morphism(result.properized.model,
                                           entry.model, result.projection,
                                           true);
      ++out.checks;
      if (!report.pass()) {
        std::string which =
            !report.atomic_harmony.holds ? report.atomic_harmony.counterexample
            : !report.forth.holds       ? report.forth.counterexample
            : !report.back.holds        ? report.back.counterexample
                                        : report.surjective.counterexample;
        out.fail("morphism check failed (seed " + std::to_string(entry.seed) +
                 ", skew " + std::to_string(skew) + "): " + which);
      }
    }
  }
  return out;
}

// 4. Bisimilarity: every pointed product state is bisimilar to its
// projection per the refinement engine, and the engine agrees with the naive
// relational-coarsest-partition oracle on every instance (models with
// m <= 6).
Outcome bisimilarity_claim() {
  Outcome out;
  for (const auto& entry : full_corpus()) {
    if (entry.model.states.size() > 6) continue;
    auto result = properize_finite(entry.model);
    auto u = disjoint_union(result.properized.model, entry.model);
    auto engine = coarsest_bisimulation(u.model);
    ++out.checks;
    for (const auto& id : result.properized.model.states) {
      if (!engine.same_block(
              u.left_injection.apply(id),
              u.right_injection.apply(result.projection.apply(id)))) {
        out.fail("product state " + id + " not bisimilar to its projection "
                 "(seed " + std::to_string(entry.seed) + ")");
        break;
      }
    }
    auto oracle = oracles::naive_coarsest_bisimulation(u.model);
    if (!oracles::same_blocks(engine, oracle)) {
      out.fail("engine disagrees with the naive oracle (seed " +
               std::to_string(entry.seed) + ")");
    }
  }
  return out;
}

// 5. Modal equivalence: 100 corpus models x 100 seeded formulas of modal
// depth <= 5, checked at every product state.
Outcome modal_equivalence() {
  Outcome out;
  const auto& corpus = full_corpus();
  for (std::size_t mi = 0; mi < 100 && mi < corpus.size(); ++mi) {
    const auto& entry = corpus[mi];
    auto result = properize_finite(entry.model);
    for (std::uint64_t fs = 0; fs < 100; ++fs) {
      Formula f = random_formula(entry.agents, {"p1", "p2", "p3"}, 5, 20,
                                 entry.seed * 1000 + fs);
      StateSet base_ext = extension(entry.model, f);
      StateSet tilde_ext = extension(result.properized.model, f);
      ++out.checks;
      for (const auto& id : result.properized.model.states) {
        if ((tilde_ext.count(id) > 0) !=
            (base_ext.count(split_product_id(id).base) > 0)) {
          out.fail("formula " + print(f) + " distinguishes " + id +
                   " from its projection (seed " + std::to_string(entry.seed) +
                   ")");
          break;
        }
      }
    }
  }
  return out;
}

// 6. Preservation: for each of the five frame properties, 100 models closed
// under it on every agent; the properization preserves the property on every
// agent, skew and non-skew.
Outcome preservation_remark() {
  Outcome out;
  for (FrameProperty prop : kAllFrameProperties) {
    for (int k = 0; k < 100; ++k) {
      int states = 1 + k % 8;
      int agents = 2 + k % 3;
      double density = (k % 4) * 0.25;
      auto m = gen_random(states, agents, density, 1 + k % 2, {prop},
                          90000 + k);
      int skew = 1 + k % agents;
      auto tilde = properize_finite(m, skew).properized.model;
      for (int i = 1; i <= agents; ++i) {
        ++out.checks;
        if (!check_property(m, i, prop).holds) {
          out.fail("closure failed to establish " + to_string(prop));
          continue;
        }
        if (!check_property(tilde, i, prop).holds) {
          out.fail("properization broke " + to_string(prop) + " for agent " +
                   std::to_string(i) + " (model " + std::to_string(k) +
                   ", skew " + std::to_string(skew) + ")");
        }
      }
    }
  }
  return out;
}

// 7. Countable construction, windowed at radius 4 from ((x,0),(x,0)):
// (a) no two distinct interior states related by all agents, (b) interior
// skew successors satisfy the offset equation, (c) the start is
// depth-4-bisimilar to (M, x). Budget: 60 seconds for 50 models.
Outcome countable_construction() {
  Outcome out;
  const auto& corpus = full_corpus();
  // 50 scattered picks; 67 is coprime to 500, so every state count and
  // density combination is represented
  for (std::size_t k = 0; k < 50; ++k) {
    const auto& entry = corpus[(k * 67) % corpus.size()];
    auto base = periodic_extension(entry.model);
    auto lazy = properize_countable(base);
    const StateId root = entry.model.states.front() + "@0";
    const StateId start = product_id(root, root);
    auto result = explore(lazy, start, 4);
    ++out.checks;

    StateSet interior;
    for (const auto& x : result.window.states) {
      if (result.frontier.count(x) == 0) interior.insert(x);
    }

    // (a) properness over the explored interior
    for (const auto& [a, b] : result.window.relations[0]) {
      if (a == b || interior.count(a) == 0 || interior.count(b) == 0) continue;
      bool all = true;
      for (int i = 2; i <= entry.agents; ++i) {
        if (result.window.relations[static_cast<std::size_t>(i) - 1]
                .count({a, b}) == 0) {
          all = false;
          break;
        }
      }
      if (all) {
        out.fail("distinct explored states " + a + ", " + b +
                 " related by all agents (seed " + std::to_string(entry.seed) +
                 ")");
      }
    }

    // (b) offset equation for interior skew successors
    for (const auto& [a, b] : result.window.relations[0]) {
      if (interior.count(a) == 0) continue;
      if (lazy.offset_of(a) != lazy.offset_of(b)) {
        out.fail("skew successor violates the offset equation at " + a +
                 " -> " + b + " (seed " + std::to_string(entry.seed) + ")");
      }
    }

    // (c) depth-4 bisimilarity with the source
    if (!bounded_bisimilar(result.window, start, entry.model,
                           entry.model.states.front(), 4)) {
      out.fail("window start not depth-4 bisimilar to the source (seed " +
               std::to_string(entry.seed) + ")");
    }
  }
  return out;
}

// 8. Cardinality: |X~| = m^2 exactly, full corpus.
Outcome cardinality() {
  Outcome out;
  for (const auto& entry : full_corpus()) {
    auto result = properize_finite(entry.model);
    ++out.checks;
    std::size_t m = entry.model.states.size();
    if (result.properized.model.states.size() != m * m) {
      out.fail("expected " + std::to_string(m * m) + " states, got " +
               std::to_string(result.properized.model.states.size()) +
               " (seed " + std::to_string(entry.seed) + ")");
    }
  }
  return out;
}

// 9. Single-agent guard: both transforms reject every n = 1 input with the
// documented error.
Outcome single_agent_guard() {
  Outcome out;
  const std::string expected = "properization undefined for a single agent";
  for (int k = 0; k < 20; ++k) {
    auto m = gen_random(1 + k % 6, 1, (k % 4) * 0.3, 1, {}, 70000 + k);
    ++out.checks;
    try {
      properize_finite(m);
      out.fail("properize_finite accepted a single-agent model");
    } catch (const Error& e) {
      if (std::string(e.what()).find(expected) == std::string::npos) {
        out.fail("unexpected finite error message: " + std::string(e.what()));
      }
    }
    try {
      properize_countable(periodic_extension(m));
      out.fail("properize_countable accepted a single-agent model");
    } catch (const Error& e) {
      if (std::string(e.what()).find(expected) == std::string::npos) {
        out.fail("unexpected countable error message: " +
                 std::string(e.what()));
      }
    }
  }
  return out;
}

// 10. Round trips: parse/print identity on 1000 random formulas; load/save
// identity over the full corpus.
Outcome round_trips() {
  Outcome out;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Formula f = random_formula(4, {"p", "q", "r"}, 5, 24, seed);
    ++out.checks;
    if (!(parse(print(f)) == f)) {
      out.fail("parse(print(f)) != f for seed " + std::to_string(seed) +
               ": " + print(f));
    }
  }
  auto path = std::filesystem::temp_directory_path() / "properkit_rt.json";
  for (const auto& entry : full_corpus()) {
    save_model(entry.model, path);
    ++out.checks;
    if (!(load_model(path) == entry.model)) {
      out.fail("model round trip failed for seed " +
               std::to_string(entry.seed));
    }
  }
  std::filesystem::remove(path);
  return out;
}

}  // namespace

int main() {
  struct Item {
    int number;
    std::string name;
    Criterion run;
    double budget_seconds;  // 0 = untimed
  };
  const std::vector<Item> items = {
      {1, "properness of every properization", properness_theorem, 30.0},
      {2, "offset blocks partition the product", partition_theorem, 0.0},
      {3, "projection is a surjective bounded morphism",
       bounded_morphism_theorem, 0.0},
      {4, "product states bisimilar to projections; engine matches oracle",
       bisimilarity_claim, 0.0},
      {5, "modal equivalence at every product state", modal_equivalence, 0.0},
      {6, "frame properties preserved", preservation_remark, 0.0},
      {7, "countable construction windows", countable_construction, 60.0},
      {8, "product carrier has exactly m^2 states", cardinality, 0.0},
      {9, "single-agent inputs rejected", single_agent_guard, 0.0},
      {10, "parse/print and load/save round trips", round_trips, 0.0},
  };

  int failures = 0;
  for (const auto& item : items) {
    auto begin = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = item.run();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - begin)
            .count();
    if (item.budget_seconds > 0 && elapsed > item.budget_seconds) {
      outcome.fail("exceeded time budget of " +
                   std::to_string(item.budget_seconds) + "s");
    }

    char line[160];
    std::snprintf(line, sizeof(line), "%s  %2d  %-62s (%d checks, %.1fs)",
                  outcome.pass ? "PASS" : "FAIL", item.number,
                  item.name.c_str(), outcome.checks, elapsed);
    std::cout << line << "\n";
    if (!outcome.pass) {
      std::cout << "      " << outcome.detail << "\n";
      ++failures;
    }
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
