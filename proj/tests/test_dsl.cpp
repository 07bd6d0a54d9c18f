#include <doctest.h>

#include <random>

#include "lamnet/dsl.hpp"
#include "lamnet/engine.hpp"
#include "lamnet/errors.hpp"
#include "support.hpp"

using namespace lamnet;
using dsl::Tree;

namespace {

// Builder output for one rule applied to fresh names.
Configuration instantiate(const RuleTable& table, const Rule& rule, NameId& next) {
  struct Collect final : Wiring {
    Configuration& c;
    explicit Collect(Configuration& config) : c(config) {}
    NetTerm fresh() override { return NetTerm::name(c.fresh_name()); }
    void connect(NetTerm a, NetTerm b) override { c.equations.push_back({a, b}); }
    std::string fresh_identifier() override { return "_"; }
  };
  Configuration c;
  c.next_name = next;
  std::vector<NetTerm> t, u;
  for (std::size_t k = 0; k < table.info(rule.left).arity; ++k) {
    t.push_back(NetTerm::name(c.fresh_name()));
    c.interface.push_back(t.back());
  }
  for (std::size_t k = 0; k < table.info(rule.right).arity; ++k) {
    u.push_back(NetTerm::name(c.fresh_name()));
    c.interface.push_back(u.back());
  }
  Collect out(c);
  rule.builder({}, {}, t, u, out);
  next = c.next_name;
  return c;
}

}  // namespace

TEST_SUITE("dsl") {
  TEST_CASE("the ε/δ/γ program") {
    dsl::Program p = dsl::parse_system(testing::kCycleProgram);
    REQUIRE(p.rules.size() == 3);
    CHECK(p.rules[0].left == Tree::agent("epsilon"));
    CHECK(p.rules[0].right ==
          Tree::agent("delta", {Tree::agent("epsilon"), Tree::agent("epsilon")}));
    CHECK(p.rules[2].left.symbol == "delta");
    CHECK(p.rules[0].line == 1);
    REQUIRE(p.initial.size() == 1);
    CHECK(p.initial[0].lhs ==
          Tree::agent("delta", {Tree::agent("epsilon"), Tree::named("x")}));
    CHECK(p.initial[0].rhs ==
          Tree::agent("gamma", {Tree::named("x"), Tree::agent("epsilon")}));
    CHECK(p.warnings.size() == 3);
  }

  TEST_CASE("print and parse round trip") {
    for (const char* text : {testing::kCycleProgram, testing::kCycleAfterOne,
                             testing::kCycleAfterThree, "", "$$\n", "\\a \\b;"}) {
      dsl::Program p = dsl::parse_system(text);
      CHECK(dsl::parse_system(dsl::print_system(p)) == p);
    }
  }

  TEST_CASE("code blocks with nested braces and strings") {
    dsl::Program p = dsl::parse_system(
        "\\a { if (x) { f(\"}\"); } } \\b;\n\\b {} \\c;\n\\c { } \\c;\n");
    CHECK(p.rules.size() == 3);
    CHECK(p.warnings.size() == 1);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(dsl::parse_system("\\a[x]; $$"), SyntaxError);
    CHECK_THROWS_AS(dsl::parse_system("\\a[x] \\b[x];\n\\a[x, y] \\c[x, y];"), ArityMismatch);
    CHECK_THROWS_AS(dsl::parse_system("\\a[x] \\b[y];"), LinearityError);
    CHECK_THROWS_AS(dsl::parse_system("$$ \\a(x) = \\b;"), LinearityError);
    CHECK_THROWS_AS(dsl::parse_system("\\amb[x, y, z] \\b[x, y, z];"), SyntaxError);
    CHECK_THROWS_AS(dsl::parse_system("$$ \\amb(x) = x;"), ArityMismatch);
    try {
      dsl::parse_system("\\a {\n\\b;");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line >= 1);
    }
  }

  TEST_CASE("x = x is accepted and deadlocks") {
    dsl::Loaded l = dsl::load(dsl::parse_system("$$\n x = x;"));
    CHECK_THROWS_AS(reduce(l.config, l.table), Deadlocked);
  }

  TEST_CASE("loading") {
    dsl::Loaded none = dsl::load(dsl::parse_system("$$ \\a = \\b;"));
    CHECK_THROWS_AS(reduce(none.config, none.table), NoRule);

    dsl::Loaded empty = dsl::load(dsl::parse_system(""));
    CHECK(empty.table.symbol_count() == 1);
    CHECK(empty.config.equations.empty());
    CHECK(reduce(empty.config, empty.table).stats.total == 0);

    dsl::Loaded ab = dsl::load(dsl::parse_system("\\a {} \\b;\n$$\n\\a = \\b;"));
    ReduceResult r = reduce(ab.config, ab.table);
    CHECK(r.config.equations.empty());
    CHECK(print_configuration(ab.table, r.config) == "⟨|⟩");
  }

  TEST_CASE("nullary symbols get an empty self rule") {
    dsl::Loaded l = dsl::load(dsl::parse_system(testing::kCycleProgram));
    SymbolId eps = l.table.symbol("epsilon");
    CHECK(l.table.find_rule(eps, {}, eps, {}).rule);
    // A declared self rule is kept as written.
    dsl::Loaded own = dsl::load(dsl::parse_system("\\e \\e;\n\\e \\d[\\e];"));
    CHECK(own.table.rule_count() == 2);
  }

  TEST_CASE("the cycle reproduces its three-line trace") {
    dsl::Loaded start = dsl::load(dsl::parse_system(testing::kCycleProgram));
    dsl::Loaded one = dsl::load(dsl::parse_system(testing::kCycleAfterOne));
    dsl::Loaded three = dsl::load(dsl::parse_system(testing::kCycleAfterThree));
    const RuleTable& table = start.table;
    Configuration c = start.config;
    Stats stats;

    step_at(c, 0, table, stats);
    CHECK(equivalent(c, one.config));

    step_at(c, testing::find_active_pair(table, c, "epsilon", "gamma"), table, stats);
    step_at(c, testing::find_active_pair(table, c, "epsilon", "delta"), table, stats);
    CHECK(equivalent(c, three.config));

    // Resolving the indirections and then ε = ε gives line 1 again.
    while (testing::find_indirection(c) < c.equations.size()) {
      step_at(c, testing::find_indirection(c), table, stats);
    }
    step_at(c, testing::find_active_pair(table, c, "epsilon", "epsilon"), table, stats);
    CHECK(equivalent(c, start.config));

    for (std::uint64_t fuel : {3, 4, 100, 1000}) {
      CHECK_THROWS_AS(reduce(start.config, table, {}, fuel), FuelExhausted);
    }
  }

  TEST_CASE("compiled rules emit linear wiring") {
    std::vector<std::string> programs{testing::kCycleProgram,
                                      "\\a[\\b(x, y), z] \\c[\\d(y, \\e), \\f(z, x)];\n"
                                      "\\b[x, y] \\d[y, x];\n\\e \\f[\\e, \\e];\n"};
    for (const auto& text : programs) {
      dsl::Loaded l = dsl::load(dsl::parse_system(text));
      NameId next = 0;
      for (std::size_t i = 0; i < l.table.rule_count(); ++i) {
        for (int rep = 0; rep < 5; ++rep) {
          Configuration c = instantiate(l.table, l.table.rule(i), next);
          CHECK_NOTHROW(check_linearity(c));
        }
      }
    }
  }

  TEST_CASE("compile_rule against an existing table") {
    dsl::Loaded l = dsl::load(dsl::parse_system(testing::kCycleProgram));
    dsl::RuleDecl decl = dsl::parse_system("\\gamma[x, y] \\gamma[x, y];").rules[0];
    Rule rule = dsl::compile_rule(l.table, decl);
    CHECK(rule.left == l.table.symbol("gamma"));
    dsl::RuleDecl bad = dsl::parse_system("\\gamma[x] \\gamma[x];").rules[0];
    CHECK_THROWS_AS(dsl::compile_rule(l.table, bad), ArityMismatch);
  }
}
