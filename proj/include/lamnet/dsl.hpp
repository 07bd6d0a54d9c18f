#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lamnet/net.hpp"
#include "lamnet/rules.hpp"

namespace lamnet::dsl {

/// `\sym(args)` / `\sym` when `symbol` is set, otherwise a name.
struct Tree {
  std::string symbol;
  std::string name;
  std::vector<Tree> args;

  bool is_name() const { return symbol.empty(); }

  static Tree agent(std::string symbol, std::vector<Tree> args = {});
  static Tree named(std::string name);

  friend bool operator==(const Tree&, const Tree&) = default;
};

// `\left[left.args] { code } \right[right.args];`
struct RuleDecl {
  Tree left;
  Tree right;
  std::string code;
  std::size_t line = 0;

  friend bool operator==(const RuleDecl& a, const RuleDecl& b) {
    return a.left == b.left && a.right == b.right && a.code == b.code;
  }
};

struct EquationDecl {
  Tree lhs;
  Tree rhs;

  friend bool operator==(const EquationDecl&, const EquationDecl&) = default;
};

struct Program {
  std::vector<RuleDecl> rules;
  std::vector<EquationDecl> initial;
  // One entry per rule whose code block was dropped.
  std::vector<std::string> warnings;

  friend bool operator==(const Program& a, const Program& b) {
    return a.rules == b.rules && a.initial == b.initial;
  }
};

// Throws SyntaxError, ArityMismatch, LinearityError.
Program parse_system(std::string_view text);
std::string print_system(const Program& program);

struct Loaded {
  RuleTable table;
  Configuration config;
};

// Registers the inferred signature, compiles every rule, and adds an empty
// rule for each nullary symbol meeting itself unless one is declared.
Loaded load(const Program& program);

// Compiles one declaration against symbols already registered in `table`.
Rule compile_rule(const RuleTable& table, const RuleDecl& decl);

}  // namespace lamnet::dsl
