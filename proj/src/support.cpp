#include <string>

#include "lamnet/errors.hpp"
#include "lamnet/stats.hpp"

namespace lamnet {

std::string_view to_string(StatCategory category) {
  switch (category) {
    case StatCategory::Beta:
      return "beta";
    case StatCategory::Fan:
      return "fan";
    case StatCategory::Oracle:
      return "oracle";
    case StatCategory::Waiting:
      return "waiting";
    case StatCategory::Readback:
      return "readback";
    case StatCategory::Amb:
      return "amb";
    case StatCategory::Erase:
      return "erase";
    case StatCategory::Other:
      return "other";
  }
  return "other";
}

void Stats::record(StatCategory category, bool waiting_vs_oracle_pair) {
  ++total;
  ++(*this)[category];
  if (waiting_vs_oracle_pair) ++waiting_vs_oracle;
}

std::uint64_t& Stats::operator[](StatCategory category) {
  switch (category) {
    case StatCategory::Beta:
      return beta;
    case StatCategory::Fan:
      return fan;
    case StatCategory::Oracle:
      return oracle;
    case StatCategory::Waiting:
      return waiting;
    case StatCategory::Readback:
      return readback;
    case StatCategory::Amb:
      return amb;
    case StatCategory::Erase:
      return erase;
    case StatCategory::Other:
      return other;
  }
  return other;
}

std::uint64_t Stats::operator[](StatCategory category) const {
  return const_cast<Stats&>(*this)[category];
}

std::uint64_t Stats::partition_sum() const {
  return beta + fan + oracle + waiting + readback + amb + erase + other;
}

std::string Stats::to_json() const {
  std::string out = "{";
  auto field = [&](const char* key, std::uint64_t value) {
    if (out.size() > 1) out += ',';
    out += '"';
    out += key;
    out += "\":";
    out += std::to_string(value);
  };
  field("total", total);
  field("indirections", indirections);
  field("beta", beta);
  field("fan", fan);
  field("oracle", oracle);
  field("waiting", waiting);
  field("waiting_vs_oracle", waiting_vs_oracle);
  field("readback", readback);
  field("amb", amb);
  field("erase", erase);
  field("other", other);
  out += '}';
  return out;
}

Stats& Stats::operator+=(const Stats& o) {
  total += o.total;
  indirections += o.indirections;
  beta += o.beta;
  fan += o.fan;
  oracle += o.oracle;
  waiting += o.waiting;
  waiting_vs_oracle += o.waiting_vs_oracle;
  readback += o.readback;
  amb += o.amb;
  erase += o.erase;
  other += o.other;
  return *this;
}

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line(line),
      column(column) {}

FuelExhausted::FuelExhausted(std::uint64_t fuel)
    : Error("fuel exhausted after " + std::to_string(fuel) + " steps"), fuel(fuel) {}

DuplicateSymbol::DuplicateSymbol(const std::string& symbol)
    : Error("duplicate symbol: " + symbol) {}

UnknownSymbol::UnknownSymbol(const std::string& symbol) : Error("unknown symbol: " + symbol) {}

NoRule::NoRule(std::string l, std::string r)
    : Error("no rule for active pair " + l + " >< " + r), left(std::move(l)), right(std::move(r)) {}

Deadlocked::Deadlocked(const std::string& equation) : Error("deadlock: " + equation) {}

Stuck::Stuck(std::size_t pending)
    : Error(std::to_string(pending) + " amb equation(s) cannot fire"), pending(pending) {}

LinearityViolation::LinearityViolation(std::string n, std::size_t c)
    : Error("name " + n + " occurs " + std::to_string(c) + " time(s)"),
      name(std::move(n)),
      count(c) {}

ArityMismatch::ArityMismatch(const std::string& s)
    : Error("inconsistent arity for \\" + s), symbol(s) {}

LinearityError::LinearityError(std::string r, std::string n)
    : Error("rule " + r + ": name " + n + " must occur exactly twice"),
      rule(std::move(r)),
      name(std::move(n)) {}

NotNormal::NotNormal(std::size_t equations)
    : Error(std::to_string(equations) + " equation(s) remain") {}

Garbage::Garbage(const std::string& description) : Error("garbage in result: " + description) {}

}  // namespace lamnet
