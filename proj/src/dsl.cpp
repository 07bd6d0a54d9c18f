#include "lamnet/dsl.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>

#include "lamnet/errors.hpp"

namespace lamnet::dsl {

Tree Tree::agent(std::string symbol, std::vector<Tree> args) {
  Tree t;
  t.symbol = std::move(symbol);
  t.args = std::move(args);
  return t;
}

Tree Tree::named(std::string name) {
  Tree t;
  t.name = std::move(name);
  return t;
}

namespace {

constexpr std::string_view kAmb = "amb";
constexpr std::size_t kAmbArity = 3;

bool word_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool word_char(char c) { return word_start(c) || (c >= '0' && c <= '9') || c == '\''; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Program parse() {
    Program program;
    for (;;) {
      skip_space();
      if (at_end()) break;
      if (looking_at("$$")) {
        advance(2);
        parse_configuration(program);
        break;
      }
      program.rules.push_back(parse_rule(program));
    }
    check_arities(program);
    return program;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool looking_at(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && !at_end(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::size_t column = 1;
    for (std::size_t i = line_start_; i < pos_ && i < text_.size(); ++i) {
      if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++column;
    }
    throw SyntaxError(message, line_, column);
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  std::string word() {
    if (!word_start(peek())) fail("expected identifier");
    std::size_t start = pos_;
    while (!at_end() && word_char(peek())) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string symbol() {
    skip_space();
    if (peek() != '\\') fail("expected agent '\\name'");
    advance();
    return word();
  }

  Tree tree() {
    skip_space();
    if (peek() == '\\') {
      Tree t = Tree::agent(symbol());
      skip_space();
      if (peek() == '(') {
        advance();
        t.args = tree_list(')');
      }
      return t;
    }
    if (word_start(peek())) return Tree::named(word());
    fail("expected agent or name");
  }

  std::vector<Tree> tree_list(char close) {
    std::vector<Tree> out;
    skip_space();
    if (peek() == close) {
      advance();
      return out;
    }
    for (;;) {
      out.push_back(tree());
      skip_space();
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == close) {
        advance();
        return out;
      }
      fail(std::string("expected ',' or '") + close + "'");
    }
  }

  Tree rule_side() {
    Tree t = Tree::agent(symbol());
    skip_space();
    if (peek() == '[') {
      advance();
      t.args = tree_list(']');
    }
    return t;
  }

  // Brace-balanced; braces inside string literals do not count.
  std::string code_block() {
    std::size_t start = pos_ + 1;
    advance();
    int depth = 1;
    while (depth > 0) {
      if (at_end()) fail("unterminated code block");
      char c = peek();
      if (c == '"' || c == '\'' || c == '`') {
        advance();
        while (!at_end() && peek() != c) {
          if (peek() == '\\') advance();
          advance();
        }
        if (at_end()) fail("unterminated string in code block");
        advance();
        continue;
      }
      if (c == '{') ++depth;
      if (c == '}') --depth;
      advance();
    }
    return std::string(text_.substr(start, pos_ - start - 1));
  }

  RuleDecl parse_rule(Program& program) {
    RuleDecl rule;
    skip_space();
    rule.line = line_;
    rule.left = rule_side();
    skip_space();
    if (peek() == '{') rule.code = code_block();
    rule.right = rule_side();
    if (rule.code.find_first_not_of(" \t\r\n") != std::string::npos) {
      program.warnings.push_back("line " + std::to_string(rule.line) + ": code block of \\" +
                                 rule.left.symbol + " >< \\" + rule.right.symbol + " ignored");
    }
    expect(';');
    if (rule.left.symbol == kAmb || rule.right.symbol == kAmb) {
      fail("interactions with \\amb are built in");
    }
    check_rule_linearity(rule);
    return rule;
  }

  void parse_configuration(Program& program) {
    for (;;) {
      skip_space();
      if (at_end()) break;
      EquationDecl eq;
      eq.lhs = tree();
      expect('=');
      eq.rhs = tree();
      expect(';');
      program.initial.push_back(std::move(eq));
    }
    std::map<std::string, std::size_t> counts;
    for (const auto& eq : program.initial) {
      count_names(eq.lhs, counts);
      count_names(eq.rhs, counts);
    }
    for (const auto& [name, n] : counts) {
      if (n != 2) throw LinearityError("configuration", name);
    }
  }

  static void count_names(const Tree& t, std::map<std::string, std::size_t>& counts) {
    if (t.is_name()) {
      ++counts[t.name];
      return;
    }
    for (const auto& a : t.args) count_names(a, counts);
  }

  static void check_rule_linearity(const RuleDecl& rule) {
    std::map<std::string, std::size_t> counts;
    count_names(rule.left, counts);
    count_names(rule.right, counts);
    for (const auto& [name, n] : counts) {
      if (n != 2) throw LinearityError("\\" + rule.left.symbol + " >< \\" + rule.right.symbol, name);
    }
  }

  static void note_arity(std::map<std::string, std::size_t>& arities, const std::string& sym,
                         std::size_t arity) {
    auto [it, inserted] = arities.emplace(sym, arity);
    if (!inserted && it->second != arity) throw ArityMismatch(sym);
  }

  static void collect(const Tree& t, std::map<std::string, std::size_t>& arities) {
    if (t.is_name()) return;
    note_arity(arities, t.symbol, t.args.size());
    for (const auto& a : t.args) collect(a, arities);
  }

  static void check_arities(const Program& program) {
    std::map<std::string, std::size_t> arities{{std::string(kAmb), kAmbArity}};
    for (const auto& r : program.rules) {
      collect(r.left, arities);
      collect(r.right, arities);
    }
    for (const auto& eq : program.initial) {
      collect(eq.lhs, arities);
      collect(eq.rhs, arities);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

void print_tree(const Tree& t, std::string& out, char open, char close) {
  if (t.is_name()) {
    out += t.name;
    return;
  }
  out += '\\';
  out += t.symbol;
  if (t.args.empty()) return;
  out += open;
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i > 0) out += ", ";
    print_tree(t.args[i], out, '(', ')');
  }
  out += close;
}

// Rule patterns compiled to symbol ids and name slots.
struct Pattern {
  bool is_name = false;
  std::size_t slot = 0;
  SymbolId symbol = 0;
  std::vector<Pattern> args;
};

Pattern compile_pattern(const RuleTable& table, const Tree& t,
                        std::unordered_map<std::string, std::size_t>& slots) {
  Pattern p;
  if (t.is_name()) {
    p.is_name = true;
    auto [it, inserted] = slots.emplace(t.name, slots.size());
    p.slot = it->second;
    return p;
  }
  p.symbol = table.symbol(t.symbol);
  if (table.info(p.symbol).arity != t.args.size()) throw ArityMismatch(t.symbol);
  for (const auto& a : t.args) p.args.push_back(compile_pattern(table, a, slots));
  return p;
}

NetTerm instantiate(const Pattern& p, std::vector<NetTerm>& names) {
  if (p.is_name) return names[p.slot];
  std::vector<NetTerm> ports;
  ports.reserve(p.args.size());
  for (const auto& a : p.args) ports.push_back(instantiate(a, names));
  return NetTerm::agent(p.symbol, std::move(ports));
}

void register_tree(RuleTable& table, const Tree& t) {
  if (t.is_name()) return;
  if (!table.find_symbol(t.symbol)) table.register_agent(t.symbol, t.args.size(), PayloadKind::None);
  for (const auto& a : t.args) register_tree(table, a);
}

NetTerm build_tree(const RuleTable& table, const Tree& t,
                   std::unordered_map<std::string, NameId>& names, Configuration& config) {
  if (t.is_name()) {
    auto [it, inserted] = names.emplace(t.name, 0);
    if (inserted) it->second = config.fresh_name();
    return NetTerm::name(it->second);
  }
  std::vector<NetTerm> ports;
  for (const auto& a : t.args) ports.push_back(build_tree(table, a, names, config));
  return NetTerm::agent(table.symbol(t.symbol), std::move(ports));
}

}  // namespace

Program parse_system(std::string_view text) { return Parser(text).parse(); }

std::string print_system(const Program& program) {
  std::string out;
  for (const auto& r : program.rules) {
    print_tree(r.left, out, '[', ']');
    out += ' ';
    if (!r.code.empty()) {
      out += '{';
      out += r.code;
      out += "} ";
    }
    print_tree(r.right, out, '[', ']');
    out += ";\n";
  }
  if (!program.initial.empty()) {
    out += "$$\n";
    for (const auto& eq : program.initial) {
      print_tree(eq.lhs, out, '(', ')');
      out += " = ";
      print_tree(eq.rhs, out, '(', ')');
      out += ";\n";
    }
  }
  return out;
}

Rule compile_rule(const RuleTable& table, const RuleDecl& decl) {
  std::unordered_map<std::string, std::size_t> slots;
  auto left = std::make_shared<std::vector<Pattern>>();
  auto right = std::make_shared<std::vector<Pattern>>();
  SymbolId l = table.symbol(decl.left.symbol);
  SymbolId r = table.symbol(decl.right.symbol);
  if (table.info(l).arity != decl.left.args.size()) throw ArityMismatch(decl.left.symbol);
  if (table.info(r).arity != decl.right.args.size()) throw ArityMismatch(decl.right.symbol);
  for (const auto& a : decl.left.args) left->push_back(compile_pattern(table, a, slots));
  for (const auto& a : decl.right.args) right->push_back(compile_pattern(table, a, slots));
  std::size_t count = slots.size();

  Rule rule;
  rule.name = decl.left.symbol + "-" + decl.right.symbol;
  rule.left = l;
  rule.right = r;
  rule.category = StatCategory::Other;
  rule.builder = [left, right, count](const Payload&, const Payload&,
                                      std::span<const NetTerm> t, std::span<const NetTerm> u,
                                      Wiring& w) {
    std::vector<NetTerm> names;
    names.reserve(count);
    for (std::size_t i = 0; i < count; ++i) names.push_back(w.fresh());
    for (std::size_t k = 0; k < t.size(); ++k) w.connect(t[k], instantiate((*left)[k], names));
    for (std::size_t k = 0; k < u.size(); ++k) w.connect(u[k], instantiate((*right)[k], names));
  };
  return rule;
}

Loaded load(const Program& program) {
  Loaded out;
  for (const auto& r : program.rules) {
    register_tree(out.table, r.left);
    register_tree(out.table, r.right);
  }
  for (const auto& eq : program.initial) {
    register_tree(out.table, eq.lhs);
    register_tree(out.table, eq.rhs);
  }
  std::set<std::pair<SymbolId, SymbolId>> declared;
  for (const auto& r : program.rules) {
    Rule rule = compile_rule(out.table, r);
    declared.emplace(std::min(rule.left, rule.right), std::max(rule.left, rule.right));
    out.table.add_rule(std::move(rule));
  }
  for (SymbolId s = 1; s < out.table.symbol_count(); ++s) {
    if (out.table.info(s).arity != 0 || declared.contains({s, s})) continue;
    out.table.add_rule(Rule{out.table.info(s).name + "-" + out.table.info(s).name, s, s, {},
                            [](const Payload&, const Payload&, std::span<const NetTerm>,
                               std::span<const NetTerm>, Wiring&) {},
                            StatCategory::Other, false});
  }
  std::unordered_map<std::string, NameId> names;
  for (const auto& eq : program.initial) {
    NetTerm lhs = build_tree(out.table, eq.lhs, names, out.config);
    NetTerm rhs = build_tree(out.table, eq.rhs, names, out.config);
    out.config.equations.push_back(Equation{std::move(lhs), std::move(rhs)});
  }
  return out;
}

}  // namespace lamnet::dsl
