// properkit: transform multi-agent Kripke models into bisimilar proper ones
// and verify the surrounding claims (model checking, frame properties,
// bounded morphisms, bisimulation).
//
// Exit codes: 0 success / query true, 1 query false or failed check,
// 2 usage or validation errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "properkit/bisim.hpp"
#include "properkit/dot.hpp"
#include "properkit/error.hpp"
#include "properkit/formula.hpp"
#include "properkit/generate.hpp"
#include "properkit/io.hpp"
#include "properkit/model.hpp"
#include "properkit/morphism.hpp"
#include "properkit/partition.hpp"
#include "properkit/properize.hpp"
#include "properkit/props.hpp"
#include "properkit/semantics.hpp"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

std::set<properkit::FrameProperty> parse_closure_list(
    const std::vector<std::string>& names) {
  std::set<properkit::FrameProperty> out;
  for (const auto& name : names) {
    auto p = properkit::frame_property_from_string(name);
    if (!p) {
      throw properkit::Error("unknown frame property '" + name +
                             "' (expected reflexive, symmetric, transitive, "
                             "serial, or euclidean)");
    }
    out.insert(*p);
  }
  return out;
}

// Start states for `explore` may name coordinates of the source model
// directly, e.g. "(x1|x1)"; copy 0 is implied. Fully qualified coordinates
// like "(x1@2|x1@0)" are accepted as is.
properkit::StateId qualify_start(const properkit::RelationalStructure& m,
                                 const std::string& start) {
  auto coords = properkit::split_product_id(start);
  auto qualify = [&m](const properkit::StateId& c) -> properkit::StateId {
    if (m.has_state(c)) return c + "@0";
    return c;
  };
  return properkit::product_id(qualify(coords.base), qualify(coords.tag));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw properkit::Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"properization toolkit for multi-agent relational structures"};
  app.require_subcommand(1);

  // parse
  std::string parse_text;
  auto* cmd_parse = app.add_subcommand("parse", "parse a formula and echo it");
  cmd_parse->add_option("formula", parse_text, "formula text")->required();

  // mc
  std::string mc_model, mc_state, mc_formula;
  auto* cmd_mc = app.add_subcommand("mc", "model-check a formula at a state");
  cmd_mc->add_option("--model", mc_model, "model JSON file")->required();
  cmd_mc->add_option("--state", mc_state, "state id")->required();
  cmd_mc->add_option("--formula", mc_formula, "formula text")->required();

  // properize
  std::string prz_model, prz_out, prz_map;
  int prz_skew = 1;
  auto* cmd_properize =
      app.add_subcommand("properize", "build the proper product model");
  cmd_properize->add_option("--model", prz_model, "model JSON file")->required();
  cmd_properize->add_option("--skew-agent", prz_skew,
                            "agent whose relation follows the offset blocks");
  cmd_properize->add_option("--out", prz_out, "output model JSON file")->required();
  cmd_properize->add_option("--map", prz_map, "output projection-map JSON file");

  // props
  std::string props_model;
  int props_agent = 0;
  auto* cmd_props =
      app.add_subcommand("props", "report frame properties and properness");
  cmd_props->add_option("--model", props_model, "model JSON file")->required();
  cmd_props->add_option("--agent", props_agent, "restrict to one agent");

  // verify-bm
  std::string bm_source, bm_target, bm_map;
  bool bm_surjective = false;
  auto* cmd_bm = app.add_subcommand(
      "verify-bm", "verify a bounded morphism given as a state map");
  cmd_bm->add_option("--source", bm_source, "source model JSON")->required();
  cmd_bm->add_option("--target", bm_target, "target model JSON")->required();
  cmd_bm->add_option("--map", bm_map, "state map JSON")->required();
  cmd_bm->add_flag("--surjective", bm_surjective, "also require surjectivity");

  // bisim
  std::string bs_left, bs_left_state, bs_right, bs_right_state;
  int bs_depth = -1;
  auto* cmd_bisim =
      app.add_subcommand("bisim", "decide (bounded) pointed bisimilarity");
  cmd_bisim->add_option("--left", bs_left, "left model JSON")->required();
  cmd_bisim->add_option("--left-state", bs_left_state, "left state")->required();
  cmd_bisim->add_option("--right", bs_right, "right model JSON")->required();
  cmd_bisim->add_option("--right-state", bs_right_state, "right state")->required();
  cmd_bisim->add_option("--depth", bs_depth, "bound the matching depth");

  // gen
  int gen_states = 0, gen_agents = 0, gen_props = 0;
  double gen_density = 0.0;
  std::uint64_t gen_seed = 0;
  std::vector<std::string> gen_close;
  std::string gen_out;
  auto* cmd_gen = app.add_subcommand("gen", "generate a seeded random model");
  cmd_gen->add_option("--states", gen_states, "number of states")->required();
  cmd_gen->add_option("--agents", gen_agents, "number of agents")->required();
  cmd_gen->add_option("--density", gen_density, "edge probability per agent")
      ->required();
  cmd_gen->add_option("--props", gen_props, "number of propositions")->required();
  cmd_gen->add_option("--close", gen_close,
                      "frame properties to close each relation under")
      ->delimiter(',');
  cmd_gen->add_option("--seed", gen_seed, "RNG seed")->required();
  cmd_gen->add_option("--out", gen_out, "output file (default stdout)");

  // explore
  std::string ex_model, ex_start, ex_out;
  bool ex_periodic = false;
  int ex_radius = 0, ex_skew = 1;
  auto* cmd_explore = app.add_subcommand(
      "explore", "window of the countable properization pipeline");
  cmd_explore->add_option("--model", ex_model, "source model JSON")->required();
  cmd_explore->add_flag("--periodic", ex_periodic,
                        "properize the periodic extension of the model");
  cmd_explore->add_option("--start", ex_start, "start product state, e.g. \"(x1|x1)\"")
      ->required();
  cmd_explore->add_option("--radius", ex_radius, "exploration radius")->required();
  cmd_explore->add_option("--skew-agent", ex_skew, "skew agent of the pipeline");
  cmd_explore->add_option("--out", ex_out, "output window model JSON")->required();

  // export-dot
  std::string dot_model, dot_out, dot_source;
  bool dot_per_agent = false, dot_highlight = false;
  auto* cmd_dot = app.add_subcommand("export-dot", "emit a GraphViz rendering");
  cmd_dot->add_option("--model", dot_model, "model JSON file")->required();
  cmd_dot->add_option("--out", dot_out, "output file (default stdout)");
  cmd_dot->add_flag("--per-agent", dot_per_agent, "one cluster per agent");
  cmd_dot->add_flag("--highlight-blocks", dot_highlight,
                    "fill product states by offset block");
  cmd_dot->add_option("--source", dot_source,
                      "source model (required with --highlight-blocks)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (cmd_parse->parsed()) {
      properkit::Formula f = properkit::parse(parse_text);
      std::cout << "canonical: " << properkit::print(f) << "\n";
      std::cout << "primitive: " << properkit::print_explicit(f) << "\n";
      return kExitTrue;
    }

    if (cmd_mc->parsed()) {
      auto m = properkit::load_model(mc_model);
      bool result =
          properkit::satisfies(m, mc_state, properkit::parse(mc_formula));
      std::cout << (result ? "true" : "false") << "\n";
      return result ? kExitTrue : kExitFalse;
    }

    if (cmd_properize->parsed()) {
      auto m = properkit::load_model(prz_model);
      auto result = properkit::properize_finite(m, prz_skew);
      properkit::save_model(result.properized.model, prz_out);
      if (!prz_map.empty()) {
        properkit::save_state_map(result.projection, prz_map);
      }
      std::cout << "properized " << m.states.size() << " states into "
                << result.properized.model.states.size() << " (skew agent "
                << prz_skew << ")\n";
      return kExitTrue;
    }

    if (cmd_props->parsed()) {
      auto m = properkit::load_model(props_model);
      std::vector<int> agents;
      if (props_agent != 0) {
        agents.push_back(props_agent);
      } else {
        for (int i = 1; i <= m.agents; ++i) agents.push_back(i);
      }
      for (int i : agents) {
        std::cout << "agent " << i << ":";
        for (auto p : properkit::kAllFrameProperties) {
          auto r = properkit::check_property(m, i, p);
          std::cout << " " << properkit::to_string(p) << "="
                    << (r.holds ? "yes" : "no");
        }
        std::cout << "\n";
      }
      auto properness = properkit::is_proper(m);
      if (properness.proper) {
        std::cout << "PROPER\n";
        return kExitTrue;
      }
      std::cout << "IMPROPER (witness: " << properness.witness->first << ", "
                << properness.witness->second << ")\n";
      return kExitFalse;
    }

    if (cmd_bm->parsed()) {
      auto source = properkit::load_model(bm_source);
      auto target = properkit::load_model(bm_target);
      auto map = properkit::load_state_map(bm_map);
      auto report =
          properkit::check_bounded_morphism(source, target, map, bm_surjective);
      auto line = [](const char* name, const properkit::ConditionCheck& c) {
        std::cout << name << ": " << (c.holds ? "PASS" : "FAIL");
        if (!c.holds) std::cout << "  (" << c.counterexample << ")";
        std::cout << "\n";
      };
      line("atomic-harmony", report.atomic_harmony);
      line("forth", report.forth);
      line("back", report.back);
      if (report.surjectivity_checked) line("surjective", report.surjective);
      return report.pass() ? kExitTrue : kExitFalse;
    }

    if (cmd_bisim->parsed()) {
      auto left = properkit::load_model(bs_left);
      auto right = properkit::load_model(bs_right);
      bool result =
          bs_depth >= 0
              ? properkit::bounded_bisimilar(left, bs_left_state, right,
                                             bs_right_state, bs_depth)
              : properkit::bisimilar(left, bs_left_state, right, bs_right_state);
      std::cout << (result ? "true" : "false") << "\n";
      return result ? kExitTrue : kExitFalse;
    }

    if (cmd_gen->parsed()) {
      auto m = properkit::gen_random(gen_states, gen_agents, gen_density,
                                     gen_props, parse_closure_list(gen_close),
                                     gen_seed);
      write_text(gen_out, properkit::model_to_json(m).dump(2) + "\n");
      return kExitTrue;
    }

    if (cmd_explore->parsed()) {
      if (!ex_periodic) {
        throw properkit::Error(
            "explore requires --periodic (the countable pipeline is the only "
            "infinite presentation this tool ships)");
      }
      auto m = properkit::load_model(ex_model);
      auto lazy = properkit::properize_countable(
          properkit::periodic_extension(m), ex_skew);
      auto start = qualify_start(m, ex_start);
      auto result = properkit::explore(lazy, start, ex_radius);
      properkit::save_model(result.window, ex_out);
      std::cout << "explored " << result.window.states.size()
                << " states from " << start << " (radius " << ex_radius
                << ", " << result.frontier.size() << " frontier)\n";
      for (const auto& f : result.frontier) std::cout << "frontier: " << f << "\n";
      return kExitTrue;
    }

    if (cmd_dot->parsed()) {
      auto m = properkit::load_model(dot_model);
      properkit::DotOptions options;
      options.per_agent = dot_per_agent;
      properkit::Partition blocks;
      if (dot_highlight) {
        if (dot_source.empty()) {
          throw properkit::Error(
              "--highlight-blocks needs --source to recover the offset blocks");
        }
        auto source = properkit::load_model(dot_source);
        blocks.blocks.resize(source.states.size());
        for (const auto& id : m.states) {
          auto coords = properkit::split_product_id(id);
          auto j = source.state_position(coords.base);
          auto k = source.state_position(coords.tag);
          if (!j || !k) {
            throw properkit::Error("product state '" + id +
                                   "' does not name source states");
          }
          auto size = static_cast<long long>(source.states.size());
          auto offset = ((static_cast<long long>(*k) -
                          static_cast<long long>(*j)) % size + size) % size;
          blocks.blocks[static_cast<std::size_t>(offset)].insert(id);
        }
        options.highlight = &blocks;
      }
      write_text(dot_out, properkit::export_dot(m, options));
      return kExitTrue;
    }
  } catch (const properkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
