#include "lamnet/rules.hpp"

#include <algorithm>

#include "lamnet/errors.hpp"

namespace lamnet {

RuleTable::RuleTable() { register_agent("amb", 3, PayloadKind::None); }

SymbolId RuleTable::register_agent(std::string name, std::size_t arity, PayloadKind payload) {
  if (by_name_.contains(name)) throw DuplicateSymbol(name);
  auto id = static_cast<SymbolId>(symbols_.size());
  by_name_.emplace(name, id);
  symbols_.push_back(SymbolInfo{std::move(name), arity, payload});
  grow();
  return id;
}

void RuleTable::grow() {
  std::size_t n = symbols_.size();
  if (n <= stride_) return;
  std::size_t next = std::max<std::size_t>(16, stride_ * 2);
  while (next < n) next *= 2;
  std::vector<std::vector<Entry>> moved(next * next);
  for (std::size_t a = 0; a < stride_; ++a) {
    for (std::size_t b = 0; b < stride_; ++b) {
      moved[a * next + b] = std::move(chains_[a * stride_ + b]);
    }
  }
  chains_ = std::move(moved);
  stride_ = next;
}

std::optional<SymbolId> RuleTable::find_symbol(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

SymbolId RuleTable::symbol(std::string_view name) const {
  auto id = find_symbol(name);
  if (!id) throw UnknownSymbol(std::string(name));
  return *id;
}

std::vector<Payload> sample_payloads(PayloadKind kind) {
  std::vector<Payload> out;
  switch (kind) {
    case PayloadKind::None:
      out.emplace_back(std::monostate{});
      break;
    case PayloadKind::Level:
      for (std::uint32_t i = 0; i <= 8; ++i) out.emplace_back(Level{i});
      break;
    case PayloadKind::Term:
      out.emplace_back(Term::var("a"));
      out.emplace_back(Term::abs("x", Term::var("x")));
      break;
    case PayloadKind::Context:
      out.emplace_back(Context());
      out.emplace_back(Context::under_abs("y"));
      break;
  }
  return out;
}

namespace {

bool accepts(const Rule& rule, const Payload& l, const Payload& r) {
  return !rule.guard || rule.guard(l, r);
}

}  // namespace

void RuleTable::add_rule(Rule rule) {
  if (rule.left >= symbols_.size()) throw UnknownSymbol("#" + std::to_string(rule.left));
  if (rule.right >= symbols_.size()) throw UnknownSymbol("#" + std::to_string(rule.right));
  if (rule.left == kAmbSymbol || rule.right == kAmbSymbol) {
    throw OverlappingRule("interactions with amb are built in");
  }
  if (!rule.builder) throw Error("rule " + rule.name + " has no builder");

  // Reject a rule whose guard accepts a sampled payload pair that an
  // existing rule on the same pair already accepts.
  auto lsamples = sample_payloads(symbols_[rule.left].payload);
  auto rsamples = sample_payloads(symbols_[rule.right].payload);
  for (const Entry& e : chain(rule.left, rule.right)) {
    const Rule& old = rules_[e.rule];
    for (const auto& lp : lsamples) {
      for (const auto& rp : rsamples) {
        if (!accepts(rule, lp, rp)) continue;
        bool clash = e.swapped ? accepts(old, rp, lp) : accepts(old, lp, rp);
        // Lookup tries both orientations of a same-symbol pair.
        if (rule.left == rule.right) clash = clash || accepts(old, rp, lp);
        if (clash) {
          throw OverlappingRule("rule " + rule.name + " overlaps " + old.name + " on " +
                                symbols_[rule.left].name + " >< " + symbols_[rule.right].name);
        }
      }
    }
  }

  auto index = static_cast<std::uint32_t>(rules_.size());
  SymbolId l = rule.left;
  SymbolId r = rule.right;
  rules_.push_back(std::move(rule));
  chain(l, r).push_back(Entry{index, false});
  if (l != r) chain(r, l).push_back(Entry{index, true});
}

RuleTable::Match RuleTable::find_rule(SymbolId a, const Payload& pa, SymbolId b,
                                      const Payload& pb) const {
  for (const Entry& e : chain(a, b)) {
    const Rule& rule = rules_[e.rule];
    if (e.swapped) {
      if (accepts(rule, pb, pa)) return Match{&rule, true};
      continue;
    }
    if (accepts(rule, pa, pb)) return Match{&rule, false};
    // Same-symbol pairs may be written either way round.
    if (a == b && rule.guard && rule.guard(pb, pa)) return Match{&rule, true};
  }
  return {};
}

}  // namespace lamnet
