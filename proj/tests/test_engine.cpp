#include <doctest.h>

#include "lamnet/engine.hpp"
#include "lamnet/errors.hpp"
#include "support.hpp"

using namespace lamnet;

namespace {

// ε, δ, γ with the interaction combinator rules: equal symbols annihilate,
// δ and γ commute, ε erases.
struct Combinators {
  RuleTable table;
  SymbolId eps, dup, con;

  Combinators() {
    eps = table.register_agent("eps", 0, PayloadKind::None);
    dup = table.register_agent("dup", 2, PayloadKind::None);
    con = table.register_agent("con", 2, PayloadKind::None);
    auto annihilate = [](const Payload&, const Payload&, auto t, auto u, Wiring& w) {
      w.connect(t[0], u[0]);
      w.connect(t[1], u[1]);
    };
    table.add_rule(Rule{"dup-dup", dup, dup, {}, annihilate});
    table.add_rule(Rule{"con-con", con, con, {}, annihilate});
    table.add_rule(Rule{"dup-con", dup, con, {},
                        [this](const Payload&, const Payload&, auto t, auto u, Wiring& w) {
                          NetTerm a = w.fresh(), b = w.fresh(), c = w.fresh(), d = w.fresh();
                          w.connect(t[0], NetTerm::agent(con, {a, b}));
                          w.connect(t[1], NetTerm::agent(con, {c, d}));
                          w.connect(u[0], NetTerm::agent(dup, {a, c}));
                          w.connect(u[1], NetTerm::agent(dup, {b, d}));
                        }});
    for (SymbolId s : {eps, dup, con}) {
      table.add_rule(Rule{"eps", eps, s, {}, [this](const Payload&, const Payload&, auto, auto u,
                                                    Wiring& w) {
                            for (const auto& p : u) w.connect(p, NetTerm::agent(eps));
                          }});
    }
  }

  NetTerm e() const { return NetTerm::agent(eps); }
  NetTerm d(NetTerm a, NetTerm b) const { return NetTerm::agent(dup, {a, b}); }
  NetTerm c(NetTerm a, NetTerm b) const { return NetTerm::agent(con, {a, b}); }
};

NetTerm n(NameId id) { return NetTerm::name(id); }

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("symbol registration") {
    RuleTable table;
    CHECK(table.info(kAmbSymbol).name == "amb");
    CHECK(table.info(kAmbSymbol).arity == 3);
    SymbolId a = table.register_agent("a", 1, PayloadKind::None);
    CHECK(table.symbol("a") == a);
    CHECK_THROWS_AS(table.register_agent("a", 2, PayloadKind::None), DuplicateSymbol);
    CHECK_THROWS_AS(table.symbol("missing"), UnknownSymbol);
    CHECK_FALSE(table.find_symbol("missing").has_value());
  }

  TEST_CASE("overlapping and amb rules are rejected") {
    Combinators k;
    auto nothing = [](const Payload&, const Payload&, std::span<const NetTerm>,
                      std::span<const NetTerm>, Wiring&) {};
    CHECK_THROWS_AS(k.table.add_rule(Rule{"again", k.con, k.dup, {}, nothing}),
                    OverlappingRule);
    CHECK_THROWS_AS(k.table.add_rule(Rule{"amb", kAmbSymbol, k.dup, {}, nothing}),
                    OverlappingRule);
  }

  TEST_CASE("find_rule matches both orientations") {
    Combinators k;
    auto m = k.table.find_rule(k.con, {}, k.dup, {});
    REQUIRE(m.rule);
    CHECK(m.swapped);
    CHECK(m.rule->name == "dup-con");
    CHECK_FALSE(k.table.find_rule(kAmbSymbol, {}, k.dup, {}).rule);
  }

  TEST_CASE("annihilation connects the interface") {
    Combinators k;
    Configuration c;
    c.interface = {n(0), n(1), n(2), n(3)};
    c.next_name = 4;
    c.equations = {{k.c(n(0), n(1)), k.c(n(2), n(3))}};
    ReduceResult r = reduce(c, k.table);
    CHECK(r.config.equations.empty());
    CHECK(r.config.interface[0] == r.config.interface[2]);
    CHECK(r.config.interface[1] == r.config.interface[3]);
    CHECK(r.stats.total == 1);
  }

  TEST_CASE("erasure leaves an empty net under every strategy") {
    Combinators k;
    Configuration c;
    c.next_name = 2;
    c.equations = {{k.e(), k.d(k.c(n(0), k.e()), n(1))}, {n(0), k.c(n(1), k.e())}};
    for (const Strategy& s : testing::all_strategies()) {
      CAPTURE(to_string(s));
      ReduceResult r = reduce(c, k.table, s);
      CHECK(r.config.interface.empty());
      CHECK(r.config.equations.empty());
    }
  }

  TEST_CASE("missing rule") {
    RuleTable table;
    SymbolId a = table.register_agent("a", 0, PayloadKind::None);
    Configuration c;
    c.equations = {{NetTerm::agent(a), NetTerm::agent(a)}};
    try {
      reduce(c, table);
      FAIL("expected NoRule");
    } catch (const NoRule& e) {
      CHECK(e.left == "a");
      REQUIRE(e.stats);
      CHECK(e.stats->total == 0);
    }
  }

  TEST_CASE("deadlock") {
    Combinators k;
    Configuration c;
    c.interface = {n(1)};
    c.next_name = 2;
    c.equations = {{n(0), k.c(n(0), n(1))}};
    CHECK_THROWS_AS(reduce(c, k.table), Deadlocked);
    Stats stats;
    CHECK_THROWS_AS(step_at(c, 0, k.table, stats), Deadlocked);
  }

  TEST_CASE("fuel") {
    Combinators k;
    Configuration c;
    c.equations = {{k.d(k.e(), n(0)), k.c(n(0), k.e())}};
    c.next_name = 1;
    try {
      reduce(c, k.table, {}, 3);
      FAIL("expected FuelExhausted");
    } catch (const FuelExhausted& e) {
      CHECK(e.fuel == 3);
      REQUIRE(e.stats);
      CHECK(e.stats->total == 3);
    }
  }

  TEST_CASE("reducer stepping and snapshots") {
    Combinators k;
    Configuration c;
    c.interface = {n(0), n(1)};
    c.next_name = 2;
    c.equations = {{k.d(n(0), n(1)), k.c(k.e(), k.e())}};
    Reducer r(k.table, c);
    CHECK(r.pending() == 1);
    CHECK(r.step() == StepOutcome::Progressed);
    Configuration mid = r.snapshot();
    CHECK_NOTHROW(check_linearity(mid));
    CHECK(mid.equations.size() == 4);
    r.run();
    CHECK(r.step() == StepOutcome::NoEquations);
    Configuration done = r.finish();
    CHECK(done.equations.empty());
    CHECK(done.interface.size() == 2);
    CHECK(r.stats().total == 3);
  }

  TEST_CASE("trace reports every interaction and indirection") {
    Combinators k;
    Configuration c;
    c.interface = {n(0), n(1), n(2), n(3)};
    c.next_name = 4;
    c.equations = {{k.c(n(0), n(1)), k.c(n(2), n(3))}};
    std::vector<std::string> rules;
    reduce(c, k.table, {}, kDefaultFuel,
           [&](const TraceEvent& e) { rules.emplace_back(e.rule); });
    CHECK(rules == std::vector<std::string>{"con-con", "indirection", "indirection"});
  }

  TEST_CASE("calculus step: interaction, then indirection") {
    Combinators k;
    Configuration c;
    c.interface = {n(0), n(1), n(2), n(3)};
    c.next_name = 4;
    c.equations = {{k.c(n(0), n(1)), k.c(n(2), n(3))}};
    Stats stats;
    step_at(c, 0, k.table, stats);
    CHECK(c.equations.size() == 2);
    CHECK(stats.total == 1);
    CHECK(step(c, k.table, Strategy::lifo(), stats) == StepOutcome::Progressed);
    CHECK(step(c, k.table, Strategy::fifo(), stats) == StepOutcome::Progressed);
    CHECK(step(c, k.table, Strategy::fifo(), stats) == StepOutcome::NoEquations);
    CHECK(stats.indirections == 2);
    CHECK(c.interface[0] == c.interface[2]);
  }

  TEST_CASE("linearity check") {
    Configuration c;
    c.interface = {n(0)};
    CHECK_THROWS_AS(check_linearity(c), LinearityViolation);
    c.equations = {{n(0), NetTerm::agent(1)}};
    CHECK_NOTHROW(check_linearity(c));
  }

  TEST_CASE("equivalence up to renaming and orientation") {
    Combinators k;
    Configuration a;
    a.equations = {{k.c(n(0), n(1)), k.d(n(1), n(0))}, {n(2), k.e()}};
    a.interface = {n(2)};
    Configuration b;
    b.equations = {{n(7), k.e()}, {k.d(n(4), n(5)), k.c(n(5), n(4))}};
    b.interface = {n(7)};
    CHECK(equivalent(a, b));
    b.equations[1].rhs = k.c(n(4), n(5));
    CHECK_FALSE(equivalent(a, b));
  }

  TEST_CASE("randomized linearity fuzzing") {
    testing::FuzzReport report = testing::fuzz_linearity(300, 11);
    CHECK(report.configurations == 300);
    CHECK(report.steps > 300);
    CHECK_MESSAGE(report.violations == 0, report.first_violation);
  }
}
