#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lamnet/engine.hpp"
#include "lamnet/net.hpp"
#include "lamnet/rules.hpp"

namespace lamnet::testing {

// The ε/δ/γ program that rewrites back to itself.
extern const char* const kCycleProgram;
// The same rules with the configuration after one interaction, and after
// both ε equations have interacted.
extern const char* const kCycleAfterOne;
extern const char* const kCycleAfterThree;

// Index of the first equation between agents named `a` and `b`, in either
// order; config.equations.size() if there is none.
std::size_t find_active_pair(const RuleTable& table, const Configuration& config,
                             std::string_view a, std::string_view b);

// Index of the first equation with a bare name on either side, or
// config.equations.size().
std::size_t find_indirection(const Configuration& config);

// FIFO, LIFO and Random with seeds 1..5.
std::vector<Strategy> all_strategies();

struct FuzzSystem {
  RuleTable table;
  std::vector<SymbolId> symbols;
};

// Random signature of arities 0..3 and random linear rules on about half of
// the symbol pairs.
FuzzSystem random_system(std::mt19937_64& rng);
// A small closed-or-open configuration; every name occurs exactly twice.
Configuration random_configuration(const FuzzSystem& system, std::mt19937_64& rng);

struct FuzzReport {
  std::size_t configurations = 0;
  std::size_t steps = 0;
  std::size_t violations = 0;
  std::string first_violation;
};

// Reduces `count` random configurations with both the calculus stepper and
// the reducer, checking linearity after every step.
FuzzReport fuzz_linearity(std::size_t count, std::uint64_t seed);

}  // namespace lamnet::testing
