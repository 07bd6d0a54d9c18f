#include "lamnet/net.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "lamnet/errors.hpp"
#include "lamnet/rules.hpp"

namespace lamnet {

PayloadKind kind_of(const Payload& payload) {
  return static_cast<PayloadKind>(payload.index());
}

std::string_view to_string(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::None:
      return "none";
    case PayloadKind::Level:
      return "level";
    case PayloadKind::Term:
      return "term";
    case PayloadKind::Context:
      return "context";
  }
  return "none";
}

NetTerm NetTerm::agent(SymbolId symbol, Payload payload, std::vector<NetTerm> ports) {
  bool amb = symbol == kAmbSymbol;
  for (const auto& p : ports) amb = amb || p.contains_amb();
  return NetTerm(std::make_shared<const Node>(Node{symbol, amb, std::move(payload), std::move(ports)}),
                 0);
}

bool operator==(const NetTerm& a, const NetTerm& b) {
  if (a.is_name() || b.is_name()) {
    return a.is_name() && b.is_name() && a.name_id() == b.name_id();
  }
  if (a.node_ == b.node_) return true;
  return a.symbol() == b.symbol() && a.payload() == b.payload() && a.ports() == b.ports();
}

bool occurs_in(NameId id, const NetTerm& term) {
  if (term.is_name()) return term.name_id() == id;
  for (const auto& p : term.ports()) {
    if (occurs_in(id, p)) return true;
  }
  return false;
}

std::string name_label(NameId id) { return "x" + std::to_string(id); }

std::string print_payload(const Payload& payload, NetPrintOptions options) {
  PrintOptions term_options{options.ascii};
  switch (kind_of(payload)) {
    case PayloadKind::None:
      return "";
    case PayloadKind::Level:
      return std::to_string(std::get<Level>(payload).index);
    case PayloadKind::Term:
      return print_term(std::get<Term>(payload), term_options);
    case PayloadKind::Context:
      return print_context(std::get<Context>(payload), term_options);
  }
  return "";
}

std::string print_agent_label(const RuleTable& table, SymbolId symbol, const Payload& payload,
                              NetPrintOptions options) {
  std::string out = table.info(symbol).name;
  switch (kind_of(payload)) {
    case PayloadKind::None:
      break;
    case PayloadKind::Level:
      out += '_';
      out += print_payload(payload, options);
      break;
    default:
      out += '{';
      out += print_payload(payload, options);
      out += '}';
      break;
  }
  return out;
}

namespace {

void print_net_rec(const RuleTable& table, const NetTerm& t, NetPrintOptions options,
                   std::string& out) {
  if (t.is_name()) {
    out += name_label(t.name_id());
    return;
  }
  out += print_agent_label(table, t.symbol(), t.payload(), options);
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i > 0) out += ", ";
    print_net_rec(table, t.ports()[i], options, out);
  }
  out += ')';
}

}  // namespace

std::string print_net(const RuleTable& table, const NetTerm& term, NetPrintOptions options) {
  std::string out;
  print_net_rec(table, term, options, out);
  return out;
}

std::string print_equation(const RuleTable& table, const Equation& eq, NetPrintOptions options) {
  return print_net(table, eq.lhs, options) + " = " + print_net(table, eq.rhs, options);
}

std::string print_configuration(const RuleTable& table, const Configuration& config,
                                NetPrintOptions options) {
  std::string out = options.ascii ? "<" : "⟨";
  for (std::size_t i = 0; i < config.interface.size(); ++i) {
    if (i > 0) out += ", ";
    out += print_net(table, config.interface[i], options);
  }
  out += config.interface.empty() ? "|" : " |";
  for (std::size_t i = 0; i < config.equations.size(); ++i) {
    out += i > 0 ? ", " : " ";
    out += print_equation(table, config.equations[i], options);
  }
  out += options.ascii ? ">" : "⟩";
  return out;
}

void check_linearity(const Configuration& config) {
  std::map<NameId, std::size_t> counts;
  auto count = [&](NameId id) { ++counts[id]; };
  for (const auto& t : config.interface) for_each_name(t, count);
  for (const auto& eq : config.equations) {
    for_each_name(eq.lhs, count);
    for_each_name(eq.rhs, count);
  }
  for (const auto& [id, n] : counts) {
    if (n != 2) throw LinearityViolation(name_label(id), n);
  }
}

// ---------------------------------------------------------------------------
// Equivalence up to renaming

namespace {

class Matcher {
 public:
  bool match(const NetTerm& a, const NetTerm& b) {
    if (a.is_name() != b.is_name()) return false;
    if (a.is_name()) {
      auto fa = forward_.find(a.name_id());
      auto fb = backward_.find(b.name_id());
      if (fa == forward_.end() && fb == backward_.end()) {
        forward_.emplace(a.name_id(), b.name_id());
        backward_.emplace(b.name_id(), a.name_id());
        return true;
      }
      return fa != forward_.end() && fa->second == b.name_id();
    }
    if (a.symbol() != b.symbol() || !(a.payload() == b.payload()) || a.arity() != b.arity()) {
      return false;
    }
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (!match(a.ports()[i], b.ports()[i])) return false;
    }
    return true;
  }

  std::unordered_map<NameId, NameId> forward_;
  std::unordered_map<NameId, NameId> backward_;
};

bool match_equations(const std::vector<Equation>& a, const std::vector<Equation>& b,
                     std::vector<bool>& used, std::size_t index, const Matcher& matcher) {
  if (index == a.size()) return true;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    for (int orientation = 0; orientation < 2; ++orientation) {
      Matcher attempt = matcher;
      const NetTerm& l = orientation == 0 ? b[j].lhs : b[j].rhs;
      const NetTerm& r = orientation == 0 ? b[j].rhs : b[j].lhs;
      if (!attempt.match(a[index].lhs, l) || !attempt.match(a[index].rhs, r)) continue;
      used[j] = true;
      if (match_equations(a, b, used, index + 1, attempt)) return true;
      used[j] = false;
    }
  }
  return false;
}

}  // namespace

bool equivalent(const Configuration& a, const Configuration& b) {
  if (a.interface.size() != b.interface.size() || a.equations.size() != b.equations.size()) {
    return false;
  }
  Matcher matcher;
  for (std::size_t i = 0; i < a.interface.size(); ++i) {
    if (!matcher.match(a.interface[i], b.interface[i])) return false;
  }
  std::vector<bool> used(b.equations.size(), false);
  return match_equations(a.equations, b.equations, used, 0, matcher);
}

}  // namespace lamnet
