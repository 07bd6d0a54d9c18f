#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "lamnet/term.hpp"

namespace lamnet {

using SymbolId = std::uint32_t;
using NameId = std::uint32_t;

// Every rule table registers amb first, so its id is fixed.
inline constexpr SymbolId kAmbSymbol = 0;

struct Level {
  std::uint32_t index = 0;

  friend bool operator==(const Level&, const Level&) = default;
};

enum class PayloadKind : std::uint8_t { None, Level, Term, Context };

using Payload = std::variant<std::monostate, Level, Term, Context>;

PayloadKind kind_of(const Payload& payload);
std::string_view to_string(PayloadKind kind);

/// Net term: either a name or an agent with its auxiliary subtrees.
class NetTerm {
 public:
  struct Node {
    SymbolId symbol;
    bool contains_amb;
    Payload payload;
    std::vector<NetTerm> ports;
  };

  NetTerm() = default;
  static NetTerm name(NameId id) { return NetTerm(nullptr, id); }
  static NetTerm agent(SymbolId symbol, Payload payload, std::vector<NetTerm> ports);
  static NetTerm agent(SymbolId symbol, std::vector<NetTerm> ports = {}) {
    return agent(symbol, Payload{}, std::move(ports));
  }

  bool is_name() const { return !node_; }
  bool is_agent() const { return static_cast<bool>(node_); }
  NameId name_id() const { return name_; }

  SymbolId symbol() const { return node_->symbol; }
  const Payload& payload() const { return node_->payload; }
  const std::vector<NetTerm>& ports() const { return node_->ports; }
  std::size_t arity() const { return node_->ports.size(); }
  bool contains_amb() const { return node_ && node_->contains_amb; }
  bool is_amb() const { return node_ && node_->symbol == kAmbSymbol; }

  bool same_node(const NetTerm& other) const {
    return node_ == other.node_ && name_ == other.name_;
  }

  // Structural equality, names compared by id.
  friend bool operator==(const NetTerm& a, const NetTerm& b);

 private:
  NetTerm(std::shared_ptr<const Node> node, NameId name) : node_(std::move(node)), name_(name) {}

  std::shared_ptr<const Node> node_;
  NameId name_ = 0;
};

struct Equation {
  NetTerm lhs;
  NetTerm rhs;
};

struct Configuration {
  std::vector<NetTerm> interface;
  std::vector<Equation> equations;
  // Every name id in use is below this bound.
  NameId next_name = 0;
  // Identifiers that read-back must not use for binders (free variables of
  // the encoded term).
  std::unordered_set<std::string> reserved_names;

  NameId fresh_name() { return next_name++; }
};

class RuleTable;

struct NetPrintOptions {
  bool ascii = false;
};

std::string print_payload(const Payload& payload, NetPrintOptions options = {});
std::string print_agent_label(const RuleTable& table, SymbolId symbol, const Payload& payload,
                              NetPrintOptions options = {});
std::string print_net(const RuleTable& table, const NetTerm& term, NetPrintOptions options = {});
std::string print_equation(const RuleTable& table, const Equation& eq,
                           NetPrintOptions options = {});
// ⟨t1, …, tn | v1 = w1, …⟩
std::string print_configuration(const RuleTable& table, const Configuration& config,
                                NetPrintOptions options = {});

std::string name_label(NameId id);

// Throws LinearityViolation for the first name (by id) not occurring exactly twice.
void check_linearity(const Configuration& config);

// Calls `f(id)` for every name occurrence in `term`.
template <typename F>
void for_each_name(const NetTerm& term, F&& f) {
  if (term.is_name()) {
    f(term.name_id());
    return;
  }
  for (const auto& p : term.ports()) for_each_name(p, f);
}

bool occurs_in(NameId id, const NetTerm& term);

// Equality up to a bijective renaming of names and reordering/reorientation
// of equations. Exponential in the worst case; intended for small tests.
bool equivalent(const Configuration& a, const Configuration& b);

}  // namespace lamnet
