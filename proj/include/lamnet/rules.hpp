#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lamnet/net.hpp"
#include "lamnet/stats.hpp"

namespace lamnet {

/// Output side of a rule builder: fresh names and emitted equations.
class Wiring {
 public:
  virtual ~Wiring() = default;

  virtual NetTerm fresh() = 0;
  virtual void connect(NetTerm a, NetTerm b) = 0;
  // `_k` binder identifier not yet handed out during this reduction and not
  // reserved.
  virtual std::string fresh_identifier() = 0;
};

using Guard = std::function<bool(const Payload& left, const Payload& right)>;
using Builder = std::function<void(const Payload& left, const Payload& right,
                                   std::span<const NetTerm> left_aux,
                                   std::span<const NetTerm> right_aux, Wiring& out)>;

struct Rule {
  std::string name;
  SymbolId left = 0;
  SymbolId right = 0;
  Guard guard;  // empty: always applies
  Builder builder;
  StatCategory category = StatCategory::Other;
  bool waiting_vs_oracle = false;
};

struct SymbolInfo {
  std::string name;
  std::size_t arity = 0;
  PayloadKind payload = PayloadKind::None;
};

class RuleTable {
 public:
  // Registers amb (arity 3) as symbol 0.
  RuleTable();

  SymbolId register_agent(std::string name, std::size_t arity, PayloadKind payload);
  void add_rule(Rule rule);

  std::optional<SymbolId> find_symbol(std::string_view name) const;
  // Throws UnknownSymbol.
  SymbolId symbol(std::string_view name) const;
  const SymbolInfo& info(SymbolId id) const { return symbols_.at(id); }
  std::size_t symbol_count() const { return symbols_.size(); }
  std::size_t rule_count() const { return rules_.size(); }
  const Rule& rule(std::size_t index) const { return rules_[index]; }

  struct Match {
    const Rule* rule = nullptr;
    // True when the rule's left symbol is the equation's right-hand agent.
    bool swapped = false;
  };

  Match find_rule(SymbolId a, const Payload& pa, SymbolId b, const Payload& pb) const;

 private:
  struct Entry {
    std::uint32_t rule;
    bool swapped;
  };

  std::vector<Entry>& chain(SymbolId a, SymbolId b) { return chains_[a * stride_ + b]; }
  const std::vector<Entry>& chain(SymbolId a, SymbolId b) const {
    return chains_[a * stride_ + b];
  }
  void grow();

  std::vector<SymbolInfo> symbols_;
  std::unordered_map<std::string, SymbolId> by_name_;
  std::vector<Rule> rules_;
  std::vector<std::vector<Entry>> chains_;
  std::size_t stride_ = 0;
};

// Representative payloads of a kind, used by the overlap check.
std::vector<Payload> sample_payloads(PayloadKind kind);

}  // namespace lamnet
