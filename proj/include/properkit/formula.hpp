#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "properkit/error.hpp"

namespace properkit {

// Immutable formula of L_n. The stored tree contains only the four primitive
// constructors p | !f | f & g | K_i f; the sugar constructors (disjunction,
// implication, possibility) normalize on construction. Subtrees are shared,
// so copies are cheap and large formulas may be DAGs.
class Formula {
 public:
  enum class Kind { Prop, Not, And, Know };

  static Formula prop(std::string name) {
    if (name.empty()) throw Error("proposition name must be nonempty");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Prop;
    n->name = std::move(name);
    return Formula(std::move(n));
  }

  static Formula negation(Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->a = std::move(f.node_);
    return Formula(std::move(n));
  }

  static Formula conjunction(Formula l, Formula r) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->a = std::move(l.node_);
    n->b = std::move(r.node_);
    return Formula(std::move(n));
  }

  static Formula know(int agent, Formula f) {
    if (agent < 1) {
      throw Error("agent index must be positive (got " +
                  std::to_string(agent) + ")");
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Know;
    n->agent = agent;
    n->a = std::move(f.node_);
    return Formula(std::move(n));
  }

  // f | g  ==  !(!f & !g)
  static Formula disjunction(Formula l, Formula r) {
    return negation(conjunction(negation(std::move(l)), negation(std::move(r))));
  }

  // f -> g  ==  !(f & !g)
  static Formula implication(Formula l, Formula r) {
    return negation(conjunction(std::move(l), negation(std::move(r))));
  }

  // M_i f  ==  !K_i !f
  static Formula possible(int agent, Formula f) {
    return negation(know(agent, negation(std::move(f))));
  }

  Kind kind() const { return node_->kind; }
  const std::string& prop_name() const { return node_->name; }
  int agent() const { return node_->agent; }
  Formula child() const { return Formula(node_->a); }   // Not, Know
  Formula left() const { return Formula(node_->a); }    // And
  Formula right() const { return Formula(node_->b); }   // And

  friend bool operator==(const Formula& l, const Formula& r) {
    return equal(l.node_.get(), r.node_.get());
  }

  // Stable pointer identity of the node, usable as a memoization key.
  const void* id() const { return node_.get(); }

 private:
  struct Node {
    Kind kind;
    std::string name;  // Prop
    int agent = 0;     // Know
    std::shared_ptr<const Node> a, b;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static bool equal(const Node* l, const Node* r) {
    if (l == r) return true;
    if (l->kind != r->kind) return false;
    switch (l->kind) {
      case Kind::Prop: return l->name == r->name;
      case Kind::Not: return equal(l->a.get(), r->a.get());
      case Kind::And:
        return equal(l->a.get(), r->a.get()) && equal(l->b.get(), r->b.get());
      case Kind::Know:
        return l->agent == r->agent && equal(l->a.get(), r->a.get());
    }
    return false;
  }

  std::shared_ptr<const Node> node_;
};

// Maximum nesting of K_i operators.
inline int modal_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Prop: return 0;
    case Formula::Kind::Not: return modal_depth(f.child());
    case Formula::Kind::And:
      return std::max(modal_depth(f.left()), modal_depth(f.right()));
    case Formula::Kind::Know: return 1 + modal_depth(f.child());
  }
  return 0;
}

namespace detail {

// Concrete syntax:
//   formula := or ('->' formula)?            right-associative sugar
//   or      := and ('|' and)*                sugar
//   and     := unary ('&' unary)*            left-associative
//   unary   := '!' unary | K<digits> unary | atom | '(' formula ')'
//   atom    := [a-z][a-zA-Z0-9_]*
// 'K' directly followed by digits is a single token, so "K1p" is legal.
class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = parse_implies();
    skip_ws();
    if (pos_ < text_.size()) {
      throw ParseError("unexpected trailing input '" +
                           std::string(1, text_[pos_]) + "'",
                       pos_);
    }
    return f;
  }

 private:
  Formula parse_implies() {
    Formula lhs = parse_or();
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '-' &&
        text_[pos_ + 1] == '>') {
      pos_ += 2;
      return Formula::implication(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      lhs = Formula::disjunction(std::move(lhs), parse_and());
      skip_ws();
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == '&') {
      ++pos_;
      lhs = Formula::conjunction(std::move(lhs), parse_unary());
      skip_ws();
    }
    return lhs;
  }

  Formula parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("missing operand", pos_);
    char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return Formula::negation(parse_unary());
    }
    if (c == 'K') {
      std::size_t start = pos_++;
      std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == digits) {
        throw ParseError("expected agent index after 'K'", start);
      }
      long agent = std::stol(std::string(text_.substr(digits, pos_ - digits)));
      if (agent < 1) throw ParseError("agent index must be positive", digits);
      return Formula::know(static_cast<int>(agent), parse_unary());
    }
    if (c == '(') {
      std::size_t open = pos_++;
      Formula f = parse_implies();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        throw ParseError("unbalanced parenthesis opened", open);
      }
      ++pos_;
      return f;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos_++;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      return Formula::prop(std::string(text_.substr(start, pos_ - start)));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse(std::string_view text) {
  return detail::FormulaParser(text).parse();
}

namespace detail {

// Precedence used by the printer: & is 1, the prefix operators are 2, atoms
// are 3. A node is parenthesized when its precedence is below what the
// context requires; the right operand of & requires 2, making right-nested
// conjunctions explicit under the left-associative grammar.
inline void print_into(const Formula& f, int min_prec, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Prop:
      out += f.prop_name();
      return;
    case Formula::Kind::Not:
      out += '!';
      print_into(f.child(), 2, out);
      return;
    case Formula::Kind::Know:
      out += 'K';
      out += std::to_string(f.agent());
      out += ' ';
      print_into(f.child(), 2, out);
      return;
    case Formula::Kind::And: {
      bool parens = min_prec > 1;
      if (parens) out += '(';
      print_into(f.left(), 1, out);
      out += " & ";
      print_into(f.right(), 2, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace detail

// Minimal-parenthesization text; parse(print(f)) == f.
inline std::string print(const Formula& f) {
  std::string out;
  detail::print_into(f, 0, out);
  return out;
}

// Fully parenthesized rendering of the primitive tree; also reparses to f.
inline std::string print_explicit(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Prop: return f.prop_name();
    case Formula::Kind::Not: return "!(" + print_explicit(f.child()) + ")";
    case Formula::Kind::Know:
      return "K" + std::to_string(f.agent()) + " (" +
             print_explicit(f.child()) + ")";
    case Formula::Kind::And:
      return "(" + print_explicit(f.left()) + " & " +
             print_explicit(f.right()) + ")";
  }
  return {};
}

namespace detail {

inline Formula random_formula_rec(int n_agents,
                                  const std::vector<std::string>& pool,
                                  int depth_left, int size_left,
                                  std::mt19937_64& rng) {
  auto pick_prop = [&]() -> Formula {
    std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
    return Formula::prop(pool[d(rng)]);
  };
  if (size_left <= 1) return pick_prop();

  // Candidate connectives, filtered by what the remaining budget allows.
  enum { kProp, kNot, kAnd, kKnow };
  std::vector<int> options = {kProp, kNot, kNot};
  if (size_left >= 3) options.insert(options.end(), 3, kAnd);
  if (depth_left >= 1) options.insert(options.end(), 3, kKnow);

  std::uniform_int_distribution<std::size_t> d(0, options.size() - 1);
  switch (options[d(rng)]) {
    case kNot:
      return Formula::negation(random_formula_rec(n_agents, pool, depth_left,
                                                  size_left - 1, rng));
    case kAnd: {
      std::uniform_int_distribution<int> split(1, size_left - 2);
      int left = split(rng);
      return Formula::conjunction(
          random_formula_rec(n_agents, pool, depth_left, left, rng),
          random_formula_rec(n_agents, pool, depth_left,
                             size_left - 1 - left, rng));
    }
    case kKnow: {
      std::uniform_int_distribution<int> agent(1, n_agents);
      return Formula::know(agent(rng),
                           random_formula_rec(n_agents, pool, depth_left - 1,
                                              size_left - 1, rng));
    }
    default:
      return pick_prop();
  }
}

}  // namespace detail

// Deterministic for a fixed seed; the result satisfies
// modal_depth <= max_depth, node count <= size_budget, and agent <= n_agents.
inline Formula random_formula(int n_agents,
                              const std::vector<std::string>& pool,
                              int max_depth, int size_budget,
                              std::uint64_t seed) {
  if (n_agents < 1) throw Error("need at least one agent");
  if (max_depth < 0) throw Error("max depth must be nonnegative");
  if (pool.empty()) throw Error("proposition pool must be nonempty");
  std::mt19937_64 rng(seed);
  return detail::random_formula_rec(n_agents, pool, max_depth,
                                    std::max(size_budget, 1), rng);
}

}  // namespace properkit
