#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "properkit/error.hpp"
#include "properkit/model.hpp"
#include "properkit/partition.hpp"

namespace properkit {

// An element (x_j, x_k) of the product carrier: `base` is the first
// coordinate (which fixes truth values), `tag` names the copy.
struct ProductState {
  StateId base;
  StateId tag;

  friend bool operator==(const ProductState&, const ProductState&) = default;
  friend auto operator<=>(const ProductState&, const ProductState&) = default;
};

// Product states serialize as "(base|tag)". '|' is reserved: it may not occur
// in the state ids of a model being properized, so the encoding parses back
// unambiguously.
inline StateId product_id(const StateId& base, const StateId& tag) {
  return "(" + base + "|" + tag + ")";
}

inline StateId product_id(const ProductState& s) {
  return product_id(s.base, s.tag);
}

inline ProductState split_product_id(const StateId& id) {
  auto bar = id.find('|');
  if (id.size() < 5 || id.front() != '(' || id.back() != ')' ||
      bar == std::string::npos || bar != id.rfind('|')) {
    throw Error("malformed product state id '" + id + "'");
  }
  return {id.substr(1, bar - 1), id.substr(bar + 1, id.size() - bar - 2)};
}

// The finite properization of a source model: a relational structure over
// X x X together with the metadata needed to talk about its block structure.
// offset_of maps each product state (x_j, x_k) to l = k - j (mod m).
struct ProperizedModel {
  RelationalStructure model;
  RelationalStructure source;
  int skew_agent = 1;
  std::map<StateId, int> offset_of;
};

struct FiniteProperization {
  ProperizedModel properized;
  StateMap projection;  // pi_1: (x_j, x_k) -> x_j
};

// Builds M~ from a finite M (agents >= 2):
//   X~ = X x X, enumerated copy by copy: (x_1,x_1),...,(x_m,x_1),(x_1,x_2),...
//   v~(p) = {(x_j,x_k) : x_j in v(p)}
//   for i != skew: (x_j,x_k) R~_i (x_j',x_k')  iff  k = k' and x_j R_i x_j'
//   for i == skew: ... iff k - j = k' - j' (mod m) and x_j R_i x_j'
// The skew relation is m disjoint copies of R_skew, one on each block X~_l,
// which is what makes the result proper.
inline FiniteProperization properize_finite(const RelationalStructure& m,
                                            int skew_agent = 1) {
  require_valid(m);
  if (m.agents == 1) {
    throw Error("properization undefined for a single agent");
  }
  if (skew_agent < 1 || skew_agent > m.agents) {
    throw Error("skew agent " + std::to_string(skew_agent) +
                " out of range for model with " + std::to_string(m.agents) +
                " agent(s)");
  }
  for (const auto& x : m.states) {
    if (x.find('|') != std::string::npos) {
      throw Error("state id '" + x + "' contains reserved character '|'");
    }
  }

  const int size = static_cast<int>(m.states.size());
  auto offset = [size](int j, int k) { return ((k - j) % size + size) % size; };

  FiniteProperization out;
  ProperizedModel& p = out.properized;
  p.source = m;
  p.skew_agent = skew_agent;
  p.model.agents = m.agents;
  p.model.relations.resize(static_cast<std::size_t>(m.agents));

  for (int k = 1; k <= size; ++k) {
    for (int j = 1; j <= size; ++j) {
      StateId id = product_id(m.states[j - 1], m.states[k - 1]);
      p.model.states.push_back(id);
      p.offset_of[id] = offset(j, k);
      out.projection.mapping[id] = m.states[j - 1];
    }
  }

  for (int i = 1; i <= m.agents; ++i) {
    EdgeSet& rel = p.model.relations[static_cast<std::size_t>(i) - 1];
    for (const auto& [xj, xj2] : m.relations[static_cast<std::size_t>(i) - 1]) {
      int j = static_cast<int>(*m.state_position(xj)) + 1;
      int j2 = static_cast<int>(*m.state_position(xj2)) + 1;
      for (int k = 1; k <= size; ++k) {
        if (i == skew_agent) {
          // stay inside the block: k' - j' = k - j (mod m)
          int k2 = (j2 + offset(j, k) - 1) % size + 1;
          rel.insert({product_id(xj, m.states[k - 1]),
                      product_id(xj2, m.states[k2 - 1])});
        } else {
          // stay inside the copy: k' = k
          rel.insert({product_id(xj, m.states[k - 1]),
                      product_id(xj2, m.states[k - 1])});
        }
      }
    }
  }

  for (const auto& [prop, ext] : m.valuation) {
    StateSet lifted;
    for (const auto& xj : ext) {
      for (const auto& xk : m.states) lifted.insert(product_id(xj, xk));
    }
    p.model.valuation[prop] = std::move(lifted);
  }
  return out;
}

// The blocks X~_l = {(x_j,x_k) : k - j = l (mod m)} for l in {0..m-1}.
// They partition X~, and pi_1 restricted to each block is a bijection onto X.
inline Partition partition_blocks(const ProperizedModel& p) {
  const std::size_t size = p.source.states.size();
  Partition out;
  out.blocks.resize(size);
  for (const auto& id : p.model.states) {
    out.blocks[static_cast<std::size_t>(p.offset_of.at(id))].insert(id);
  }
  return out;
}

// --- countably infinite side -------------------------------------------------

// Bijections used to present countable carriers: zigzag folds Z onto N
// (0,-1,1,-2,2,... in reverse), cantor pairs N x N onto N.
inline long long zigzag_to_nat(long long z) {
  return z >= 0 ? 2 * z : -2 * z - 1;
}

inline long long zigzag_to_int(long long n) {
  return n % 2 == 0 ? n / 2 : -(n + 1) / 2;
}

inline long long cantor_pair(long long a, long long b) {
  return (a + b) * (a + b + 1) / 2 + b;
}

inline std::pair<long long, long long> cantor_unpair(long long n) {
  long long w = static_cast<long long>(
      (std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  while (w * (w + 1) / 2 > n) --w;
  long long b = n - w * (w + 1) / 2;
  return {w - b, b};
}

// A finitely presented, on-demand countably infinite structure. States are
// addressed by canonical string ids; `index_of`/`state_at` realize the
// bijection f between the carrier and Z and are mutually inverse. The edge
// oracle and the successor enumerator agree: successors(i, x) enumerates
// exactly {y : edge(i, x, y)}. All oracles are pure and reentrant.
struct LazyModel {
  int agents = 0;
  int skew_agent = 0;  // 0 when no relation has the skewed role
  std::vector<std::string> props;

  std::function<StateId(long long)> state_at;
  std::function<long long(const StateId&)> index_of;
  std::function<StateSet(int, const StateId&)> successors;
  std::function<bool(int, const StateId&, const StateId&)> edge;
  std::function<bool(const std::string&, const StateId&)> holds;

  // f(y) - f(x) for pair states (x|y); null on base models.
  std::function<long long(const StateId&)> offset_of;
};

namespace detail {

// "x@t" names state x of copy t. The split is at the last '@' whose suffix
// parses as an integer, so source ids containing '@' stay unambiguous.
inline StateId copy_id(const StateId& x, long long t) {
  return x + "@" + std::to_string(t);
}

inline std::pair<StateId, long long> split_copy_id(const StateId& id) {
  auto at = id.rfind('@');
  if (at == std::string::npos || at + 1 >= id.size()) {
    throw Error("malformed periodic state id '" + id + "'");
  }
  try {
    std::size_t used = 0;
    long long t = std::stoll(id.substr(at + 1), &used);
    if (used != id.size() - at - 1) throw Error("");
    return {id.substr(0, at), t};
  } catch (const std::exception&) {
    throw Error("malformed periodic state id '" + id + "'");
  }
}

}  // namespace detail

// The disjoint union of Z-many copies of a finite model: carrier X x Z,
// (x,t) R_i (x',t') iff t = t' and x R_i x', valuation copied per copy. This
// is a concrete countably infinite input for the countable properization.
// The bijection with Z interleaves copies: f(x_s, t) = zigzag(zigzag(t)*m + s)
// with s the 0-based position of x, and both directions are exposed.
inline LazyModel periodic_extension(const RelationalStructure& m) {
  require_valid(m);
  const long long size = static_cast<long long>(m.states.size());

  LazyModel out;
  out.agents = m.agents;
  out.skew_agent = 0;
  for (const auto& [prop, ext] : m.valuation) out.props.push_back(prop);

  out.state_at = [m, size](long long z) -> StateId {
    long long n = zigzag_to_nat(z);
    long long s = n % size;
    long long t = zigzag_to_int(n / size);
    return detail::copy_id(m.states[static_cast<std::size_t>(s)], t);
  };
  out.index_of = [m, size](const StateId& id) -> long long {
    auto [x, t] = detail::split_copy_id(id);
    auto pos = m.state_position(x);
    if (!pos) throw Error("unknown state '" + x + "' in periodic id");
    return zigzag_to_int(zigzag_to_nat(t) * size +
                         static_cast<long long>(*pos));
  };
  out.successors = [m](int agent, const StateId& id) -> StateSet {
    auto [x, t] = detail::split_copy_id(id);
    StateSet outset;
    for (const auto& y : successors(m, agent, x)) {
      outset.insert(detail::copy_id(y, t));
    }
    return outset;
  };
  out.edge = [m](int agent, const StateId& a, const StateId& b) -> bool {
    auto [x, t] = detail::split_copy_id(a);
    auto [y, u] = detail::split_copy_id(b);
    return t == u && m.related(agent, x, y);
  };
  out.holds = [m](const std::string& prop, const StateId& id) -> bool {
    return m.holds(prop, detail::split_copy_id(id).first);
  };
  return out;
}

// The countable properization (carrier X x X over a countable base X with
// bijection f to Z):
//   v~(p) holds at (x,y) iff it holds at x
//   for i != skew: (x,y) R~_i (x',y')  iff  y = y' and x R_i x'
//   for i == skew: ... iff f(y) - f(x) = f(y') - f(x') and x R_i x'
// Skew successors are produced on demand: each base edge x R x' yields the
// single witness y' = f^-1(f(y) - f(x) + f(x')).
inline LazyModel properize_countable(const LazyModel& base,
                                     int skew_agent = 1) {
  if (base.agents == 1) {
    throw Error("properization undefined for a single agent");
  }
  if (skew_agent < 1 || skew_agent > base.agents) {
    throw Error("skew agent " + std::to_string(skew_agent) +
                " out of range for model with " + std::to_string(base.agents) +
                " agent(s)");
  }

  auto split = [](const StateId& id) { return split_product_id(id); };
  auto join = [](const StateId& x, const StateId& y) -> StateId {
    if (x.find('|') != std::string::npos || y.find('|') != std::string::npos) {
      throw Error("base state id contains reserved character '|'");
    }
    return product_id(x, y);
  };

  LazyModel out;
  out.agents = base.agents;
  out.skew_agent = skew_agent;
  out.props = base.props;

  out.state_at = [base, join](long long z) -> StateId {
    auto [a, b] = cantor_unpair(zigzag_to_nat(z));
    return join(base.state_at(zigzag_to_int(a)), base.state_at(zigzag_to_int(b)));
  };
  out.index_of = [base, split](const StateId& id) -> long long {
    auto [x, y] = split(id);
    return zigzag_to_int(cantor_pair(zigzag_to_nat(base.index_of(x)),
                                     zigzag_to_nat(base.index_of(y))));
  };
  out.successors = [base, skew_agent, split, join](
                       int agent, const StateId& id) -> StateSet {
    auto [x, y] = split(id);
    StateSet outset;
    if (agent == skew_agent) {
      long long shift = base.index_of(y) - base.index_of(x);
      for (const auto& x2 : base.successors(agent, x)) {
        outset.insert(join(x2, base.state_at(base.index_of(x2) + shift)));
      }
    } else {
      for (const auto& x2 : base.successors(agent, x)) {
        outset.insert(join(x2, y));
      }
    }
    return outset;
  };
  out.edge = [base, skew_agent, split](int agent, const StateId& a,
                                       const StateId& b) -> bool {
    auto [x, y] = split(a);
    auto [x2, y2] = split(b);
    if (agent == skew_agent) {
      return base.index_of(y) - base.index_of(x) ==
                 base.index_of(y2) - base.index_of(x2) &&
             base.edge(agent, x, x2);
    }
    return y == y2 && base.edge(agent, x, x2);
  };
  out.holds = [base, split](const std::string& prop,
                            const StateId& id) -> bool {
    return base.holds(prop, split(id).base);
  };
  out.offset_of = [base, split](const StateId& id) -> long long {
    auto [x, y] = split(id);
    return base.index_of(y) - base.index_of(x);
  };
  return out;
}

struct ExploreResult {
  RelationalStructure window;
  StateSet frontier;  // states at exactly the exploration radius
};

// Finite window of a lazy model: every state within `radius` forward steps
// (any agent) of `start`, in breadth-first discovery order. Edges originate
// from interior states only; frontier states are not expanded, so their
// successor sets in the window are empty by construction.
inline ExploreResult explore(const LazyModel& lazy, const StateId& start,
                             int radius) {
  if (radius < 0) throw Error("radius must be nonnegative");

  ExploreResult out;
  out.window.agents = lazy.agents;
  out.window.relations.resize(static_cast<std::size_t>(lazy.agents));

  std::map<StateId, int> dist;
  std::deque<StateId> queue;
  dist[start] = 0;
  queue.push_back(start);
  out.window.states.push_back(start);

  while (!queue.empty()) {
    StateId x = queue.front();
    queue.pop_front();
    int d = dist[x];
    if (d >= radius) continue;  // frontier: leave successors unexplored
    for (int i = 1; i <= lazy.agents; ++i) {
      for (const auto& y : lazy.successors(i, x)) {
        if (dist.emplace(y, d + 1).second) {
          queue.push_back(y);
          out.window.states.push_back(y);
        }
        out.window.relations[static_cast<std::size_t>(i) - 1].insert({x, y});
      }
    }
  }

  for (const auto& [x, d] : dist) {
    if (d == radius) out.frontier.insert(x);
  }
  for (const auto& prop : lazy.props) {
    StateSet ext;
    for (const auto& x : out.window.states) {
      if (lazy.holds(prop, x)) ext.insert(x);
    }
    if (!ext.empty()) out.window.valuation[prop] = ext;
  }
  return out;
}

}  // namespace properkit
