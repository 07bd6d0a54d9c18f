#pragma once

#include <cstdint>

#include "lamnet/engine.hpp"
#include "lamnet/net.hpp"
#include "lamnet/rules.hpp"
#include "lamnet/stats.hpp"
#include "lamnet/term.hpp"

namespace lamnet {

// Symbol ids of the table returned by build_system(), in registration order.
namespace sym {
inline constexpr SymbolId amb = kAmbSymbol;
inline constexpr SymbolId eps = 1;
inline constexpr SymbolId lam = 2;
inline constexpr SymbolId app = 3;
inline constexpr SymbolId dup = 4;
inline constexpr SymbolId croissant = 5;  // ⩀_i, lowers levels it passes
inline constexpr SymbolId bracket = 6;    // ⊔_i, raises levels it passes
inline constexpr SymbolId wait = 7;
inline constexpr SymbolId hold = 8;
inline constexpr SymbolId decide = 9;
inline constexpr SymbolId eval = 10;
inline constexpr SymbolId call = 11;
inline constexpr SymbolId top = 12;
inline constexpr SymbolId atom = 13;
inline constexpr SymbolId read = 14;
inline constexpr SymbolId count = 15;
}  // namespace sym

struct SystemOptions {
  // Count δ agents as oracle nodes in the statistics.
  bool count_delta_as_oracle = false;
};

struct Classification {
  StatCategory category = StatCategory::Other;
  bool waiting_vs_oracle = false;

  friend bool operator==(const Classification&, const Classification&) = default;
};

Classification classify(SymbolId a, SymbolId b, SystemOptions options = {});

RuleTable build_system(SystemOptions options = {});
// Shared instances built on first use.
const RuleTable& default_system();
const RuleTable& system_for(SystemOptions options);

// ⟨x | eval(r_[ ](⊤(x))) = [M•]⟩
Configuration encode(const Term& term);
// Requires ⟨a_N | ∅⟩; throws NotNormal or Garbage otherwise.
Term decode(const Configuration& config);

struct NormalizeResult {
  Term term;
  Stats stats;
};

NormalizeResult normalize(const Term& term, Strategy strategy = {},
                          std::uint64_t fuel = kDefaultFuel, SystemOptions options = {},
                          TraceFn trace = {});

}  // namespace lamnet
