#pragma once

#include <string>

#include "properkit/model.hpp"
#include "properkit/partition.hpp"

namespace properkit {

struct DotOptions {
  // One cluster per agent (node copies suffixed per agent) instead of a
  // single graph with colored multi-edges.
  bool per_agent = false;
  // Fill nodes by block membership, e.g. the X~_l blocks of a properization.
  const Partition* highlight = nullptr;
};

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

inline const char* dot_edge_color(int agent) {
  static const char* palette[] = {"black",  "blue",   "red",   "darkgreen",
                                  "purple", "orange", "brown", "cadetblue"};
  return palette[(agent - 1) % 8];
}

inline const char* dot_fill_color(std::size_t block) {
  static const char* palette[] = {"lightblue",  "lightyellow", "lightpink",
                                  "lightgreen", "lightsalmon", "lightcyan",
                                  "plum",       "wheat"};
  return palette[block % 8];
}

}  // namespace detail

// GraphViz rendering. Each node keeps its state id as label (product states
// therefore show both coordinates); edges are labeled with their agent.
inline std::string export_dot(const RelationalStructure& m,
                              const DotOptions& options = {}) {
  std::string out = "digraph model {\n";
  auto emit_node = [&](const std::string& node, const StateId& state) {
    out += "  " + detail::dot_quote(node) + " [label=" +
           detail::dot_quote(state);
    if (options.highlight != nullptr) {
      auto block = options.highlight->block_of(state);
      if (block) {
        out += ", style=filled, fillcolor=";
        out += detail::dot_fill_color(*block);
      }
    }
    out += "];\n";
  };

  if (options.per_agent) {
    for (int i = 1; i <= m.agents; ++i) {
      std::string tag = "a" + std::to_string(i) + ".";
      out += "  subgraph cluster_agent" + std::to_string(i) + " {\n";
      out += "    label=\"agent " + std::to_string(i) + "\";\n";
      for (const auto& x : m.states) emit_node(tag + x, x);
      for (const auto& [x, y] : m.relations[static_cast<std::size_t>(i) - 1]) {
        out += "  " + detail::dot_quote(tag + x) + " -> " +
               detail::dot_quote(tag + y) + ";\n";
      }
      out += "  }\n";
    }
  } else {
    for (const auto& x : m.states) emit_node(x, x);
    for (int i = 1; i <= m.agents; ++i) {
      for (const auto& [x, y] : m.relations[static_cast<std::size_t>(i) - 1]) {
        out += "  " + detail::dot_quote(x) + " -> " + detail::dot_quote(y) +
               " [label=\"" + std::to_string(i) + "\", color=" +
               detail::dot_edge_color(i) + "];\n";
      }
    }
  }
  out += "}\n";
  return out;
}

}  // namespace properkit
