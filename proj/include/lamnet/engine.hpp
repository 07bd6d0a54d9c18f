#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lamnet/net.hpp"
#include "lamnet/rules.hpp"
#include "lamnet/stats.hpp"

namespace lamnet {

struct Strategy {
  enum class Kind : std::uint8_t { Fifo, Lifo, Random };

  Kind kind = Kind::Fifo;
  std::uint64_t seed = 0;

  static Strategy fifo() { return {Kind::Fifo, 0}; }
  static Strategy lifo() { return {Kind::Lifo, 0}; }
  static Strategy random(std::uint64_t seed) { return {Kind::Random, seed}; }

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

std::string to_string(const Strategy& strategy);

inline constexpr std::uint64_t kDefaultFuel = 100'000'000;

struct TraceEvent {
  std::uint64_t step = 0;
  // Rule name, "amb" for a non-deterministic dispatch, or "indirection".
  std::string_view rule;
  const NetTerm* left = nullptr;
  const NetTerm* right = nullptr;
};

using TraceFn = std::function<void(const TraceEvent&)>;

enum class StepOutcome : std::uint8_t { Progressed, NoEquations };

/// Reduces one configuration. Indirections are resolved lazily through a
/// binding per name: the first occurrence of x in `x = t` records t, the
/// second occurrence picks it up.
class Reducer {
 public:
  Reducer(const RuleTable& table, Configuration config, Strategy strategy = {});
  ~Reducer();
  Reducer(const Reducer&) = delete;
  Reducer& operator=(const Reducer&) = delete;

  void set_trace(TraceFn trace);
  // Maximum number of interactions; exceeding it throws FuelExhausted.
  void set_fuel(std::uint64_t fuel);

  // Processes one equation taken from the queue per the strategy.
  StepOutcome step();
  // Steps until the queue is empty. Throws Stuck if amb equations remain.
  void run();
  // The reduced configuration, consuming all pending bindings. Call after run().
  Configuration finish();
  // The current configuration with all bindings substituted.
  Configuration snapshot() const;

  const Stats& stats() const;
  std::size_t pending() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Identifiers carried by atom and read payloads inside `t`.
void collect_identifiers(const NetTerm& t, std::unordered_set<std::string>& out);

// One reduction step of the interaction calculus on `config.equations[index]`,
// applied literally: an interaction when both sides are agents (amb included),
// otherwise an indirection substituting the other occurrence of the name.
// Meant for tests and small traces; Reducer is the fast path.
void step_at(Configuration& config, std::size_t index, const RuleTable& table, Stats& stats);

// step_at on the first (Fifo), last (Lifo) or a seeded pick (Random) equation.
StepOutcome step(Configuration& config, const RuleTable& table, Strategy strategy, Stats& stats);

struct ReduceResult {
  Configuration config;
  Stats stats;
};

// Errors thrown from here carry the statistics gathered so far.
ReduceResult reduce(Configuration config, const RuleTable& table, Strategy strategy = {},
                    std::uint64_t fuel = kDefaultFuel, TraceFn trace = {});

// t = amb(u, v, w) with t a name and u agent-rooted becomes u = amb(t, v, w);
// any other equation is returned unchanged.
Equation rotate_amb(const Equation& eq);

// α(t…) = amb(u, v, w) → {v = α(t…), u = w}. Throws NoRule for amb = amb.
std::vector<Equation> amb_dispatch(const Equation& eq, Stats& stats);

}  // namespace lamnet
