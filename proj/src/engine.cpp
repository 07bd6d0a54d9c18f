#include "lamnet/engine.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "lamnet/errors.hpp"

namespace lamnet {

std::string to_string(const Strategy& strategy) {
  switch (strategy.kind) {
    case Strategy::Kind::Fifo:
      return "fifo";
    case Strategy::Kind::Lifo:
      return "lifo";
    case Strategy::Kind::Random:
      return "random(" + std::to_string(strategy.seed) + ")";
  }
  return "fifo";
}

namespace {

constexpr std::size_t kDeadlockProbeBudget = 64;

std::string agent_label(const RuleTable& table, const NetTerm& t) {
  if (t.is_name()) return name_label(t.name_id());
  return print_agent_label(table, t.symbol(), t.payload());
}

}  // namespace

struct Reducer::Impl final : Wiring {
  struct Slot {
    NetTerm value;
    bool bound = false;
  };

  struct Parked {
    Equation eq;
    std::uint32_t generation = 0;
    bool live = false;
  };

  struct Waiter {
    std::uint32_t index;
    std::uint32_t generation;
  };

  Impl(const RuleTable& t, Configuration config, Strategy s)
      : table(t), strategy(s), rng(s.seed), reserved(std::move(config.reserved_names)) {
    NameId bound_ids = config.next_name;
    auto track = [&](NameId id) { bound_ids = std::max(bound_ids, id + 1); };
    for (const auto& term : config.interface) for_each_name(term, track);
    for (const auto& eq : config.equations) {
      for_each_name(eq.lhs, track);
      for_each_name(eq.rhs, track);
    }
    slots.resize(bound_ids);
    used_identifiers = reserved;
    for (const auto& term : config.interface) collect_identifiers(term, used_identifiers);
    for (const auto& eq : config.equations) {
      collect_identifiers(eq.lhs, used_identifiers);
      collect_identifiers(eq.rhs, used_identifiers);
    }
    for (auto& term : config.interface) interface.push_back(hoist(term));
    for (auto& eq : config.equations) push(std::move(eq.lhs), std::move(eq.rhs));
  }

  // --- Wiring -------------------------------------------------------------

  NetTerm fresh() override {
    if (!free_ids.empty()) {
      NameId id = free_ids.back();
      free_ids.pop_back();
      return NetTerm::name(id);
    }
    slots.emplace_back();
    return NetTerm::name(static_cast<NameId>(slots.size() - 1));
  }

  void connect(NetTerm a, NetTerm b) override { push(std::move(a), std::move(b)); }

  std::string fresh_identifier() override {
    for (;;) {
      std::string candidate = "_" + std::to_string(identifier_counter++);
      if (used_identifiers.insert(candidate).second) return candidate;
    }
  }

  // --- Queue --------------------------------------------------------------

  NetTerm hoist(const NetTerm& t) {
    if (t.is_name() || !t.contains_amb()) return t;
    if (t.is_amb()) {
      NetTerm n = fresh();
      push(n, t);
      return n;
    }
    std::vector<NetTerm> ports;
    ports.reserve(t.arity());
    for (const auto& p : t.ports()) ports.push_back(hoist(p));
    return NetTerm::agent(t.symbol(), t.payload(), std::move(ports));
  }

  NetTerm hoist_ports(const NetTerm& amb) {
    std::vector<NetTerm> ports;
    ports.reserve(amb.arity());
    for (const auto& p : amb.ports()) ports.push_back(hoist(p));
    return NetTerm::agent(kAmbSymbol, amb.payload(), std::move(ports));
  }

  void push(NetTerm a, NetTerm b) {
    if (a.contains_amb()) a = a.is_amb() ? hoist_ports(a) : hoist(a);
    if (b.contains_amb()) b = b.is_amb() ? hoist_ports(b) : hoist(b);
    queue.push_back(Equation{std::move(a), std::move(b)});
  }

  Equation pop() {
    Equation eq;
    switch (strategy.kind) {
      case Strategy::Kind::Fifo:
        eq = std::move(queue.front());
        queue.pop_front();
        break;
      case Strategy::Kind::Lifo:
        eq = std::move(queue.back());
        queue.pop_back();
        break;
      case Strategy::Kind::Random: {
        std::uniform_int_distribution<std::size_t> pick(0, queue.size() - 1);
        std::size_t i = pick(rng);
        if (i + 1 != queue.size()) std::swap(queue[i], queue.back());
        eq = std::move(queue.back());
        queue.pop_back();
        break;
      }
    }
    return eq;
  }

  // Puts an equation back where the next pop will see it.
  void unpop(NetTerm a, NetTerm b) {
    if (strategy.kind == Strategy::Kind::Fifo) {
      queue.push_front(Equation{std::move(a), std::move(b)});
    } else {
      queue.push_back(Equation{std::move(a), std::move(b)});
    }
  }

  // --- Errors -------------------------------------------------------------

  template <typename E>
  [[noreturn]] void fail(E error) {
    error.stats = stats;
    throw error;
  }

  void burn(const NetTerm& a, const NetTerm& b) {
    if (stats.total >= fuel) {
      unpop(a, b);
      fail(FuelExhausted(fuel));
    }
  }

  // --- Bindings -----------------------------------------------------------

  bool is_bound(const NetTerm& t) const { return t.is_name() && slots[t.name_id()].bound; }

  NetTerm take(NameId id) {
    Slot& s = slots[id];
    NetTerm v = std::move(s.value);
    s.value = NetTerm();
    s.bound = false;
    free_ids.push_back(id);
    if (!waiters.empty()) waiters.erase(id);
    return v;
  }

  bool reaches(NameId x, const NetTerm& t, std::size_t& budget) const {
    if (budget == 0) return false;
    --budget;
    if (t.is_name()) {
      if (t.name_id() == x) return true;
      const Slot& s = slots[t.name_id()];
      return s.bound && reaches(x, s.value, budget);
    }
    for (const auto& p : t.ports()) {
      if (reaches(x, p, budget)) return true;
    }
    return false;
  }

  void bind(NameId x, NetTerm t) {
    std::size_t budget = kDeadlockProbeBudget;
    if (reaches(x, t, budget)) {
      fail(Deadlocked(name_label(x) + " = " + print_net(table, t)));
    }
    ++stats.indirections;
    if (trace) {
      NetTerm name = NetTerm::name(x);
      trace(TraceEvent{steps, "indirection", &name, &t});
    }
    slots[x].value = std::move(t);
    slots[x].bound = true;
    if (!waiters.empty()) wake(x);
  }

  // --- Processing ---------------------------------------------------------

  void process(NetTerm a, NetTerm b) {
    for (;;) {
      if (a.is_amb() || b.is_amb()) {
        amb(std::move(a), std::move(b));
        return;
      }
      if (a.is_name()) {
        if (is_bound(a)) {
          a = take(a.name_id());
          continue;
        }
        if (is_bound(b)) {
          b = take(b.name_id());
          continue;
        }
        bind(a.name_id(), std::move(b));
        return;
      }
      if (b.is_name()) {
        std::swap(a, b);
        continue;
      }
      interact(a, b);
      return;
    }
  }

  void interact(const NetTerm& a, const NetTerm& b) {
    RuleTable::Match m = table.find_rule(a.symbol(), a.payload(), b.symbol(), b.payload());
    if (!m.rule) fail(NoRule(agent_label(table, a), agent_label(table, b)));
    const NetTerm& l = m.swapped ? b : a;
    const NetTerm& r = m.swapped ? a : b;
    burn(a, b);
    stats.record(m.rule->category, m.rule->waiting_vs_oracle);
    if (trace) trace(TraceEvent{steps, m.rule->name, &l, &r});
    m.rule->builder(l.payload(), r.payload(), l.ports(), r.ports(), *this);
  }

  void amb(NetTerm a, NetTerm b) {
    if (a.is_amb() && b.is_amb()) fail(NoRule("amb", "amb"));
    if (a.is_amb()) std::swap(a, b);
    while (is_bound(a)) a = take(a.name_id());
    if (a.is_agent()) {
      dispatch(a, b);
      return;
    }
    NetTerm u = b.ports()[0];
    bool resolved = false;
    while (is_bound(u)) {
      u = take(u.name_id());
      resolved = true;
    }
    if (u.is_agent()) {
      dispatch(u, NetTerm::agent(kAmbSymbol, {a, b.ports()[1], b.ports()[2]}));
      return;
    }
    if (resolved) b = NetTerm::agent(kAmbSymbol, {u, b.ports()[1], b.ports()[2]});
    park(std::move(a), std::move(b));
  }

  void dispatch(const NetTerm& agent, const NetTerm& amb) {
    burn(agent, amb);
    stats.record(StatCategory::Amb);
    if (trace) trace(TraceEvent{steps, "amb", &agent, &amb});
    push(amb.ports()[1], agent);
    push(amb.ports()[0], amb.ports()[2]);
  }

  void park(NetTerm a, NetTerm b) {
    std::uint32_t index;
    if (!free_parked.empty()) {
      index = free_parked.back();
      free_parked.pop_back();
    } else {
      index = static_cast<std::uint32_t>(parked.size());
      parked.emplace_back();
    }
    Parked& p = parked[index];
    ++p.generation;
    p.live = true;
    NameId on_left = a.name_id();
    const NetTerm& u = b.ports()[0];
    p.eq = Equation{std::move(a), std::move(b)};
    ++live_parked;
    waiters[on_left].push_back(Waiter{index, p.generation});
    if (u.is_name() && u.name_id() != on_left) {
      waiters[u.name_id()].push_back(Waiter{index, p.generation});
    }
  }

  void wake(NameId x) {
    auto it = waiters.find(x);
    if (it == waiters.end()) return;
    std::vector<Waiter> list = std::move(it->second);
    waiters.erase(it);
    for (const Waiter& w : list) {
      Parked& p = parked[w.index];
      if (!p.live || p.generation != w.generation) continue;
      p.live = false;
      --live_parked;
      queue.push_back(std::move(p.eq));
      p.eq = Equation{};
      free_parked.push_back(w.index);
    }
  }

  StepOutcome step() {
    if (queue.empty()) {
      if (live_parked > 0) fail(Stuck(live_parked));
      return StepOutcome::NoEquations;
    }
    Equation eq = pop();
    ++steps;
    process(std::move(eq.lhs), std::move(eq.rhs));
    return StepOutcome::Progressed;
  }

  // --- Materialisation ------------------------------------------------------

  NetTerm drain(const NetTerm& t) {
    if (t.is_name()) {
      if (!slots[t.name_id()].bound) return t;
      return drain(take(t.name_id()));
    }
    bool changed = false;
    std::vector<NetTerm> ports;
    ports.reserve(t.arity());
    for (const auto& p : t.ports()) {
      ports.push_back(drain(p));
      changed = changed || !ports.back().same_node(p);
    }
    if (!changed) return t;
    return NetTerm::agent(t.symbol(), t.payload(), std::move(ports));
  }

  NetTerm view(const NetTerm& t, std::vector<bool>& used) const {
    if (t.is_name()) {
      NameId id = t.name_id();
      if (!slots[id].bound || used[id]) return t;
      used[id] = true;
      return view(slots[id].value, used);
    }
    std::vector<NetTerm> ports;
    ports.reserve(t.arity());
    for (const auto& p : t.ports()) ports.push_back(view(p, used));
    return NetTerm::agent(t.symbol(), t.payload(), std::move(ports));
  }

  Configuration finish() {
    if (!queue.empty()) fail(NotNormal(queue.size()));
    if (live_parked > 0) fail(Stuck(live_parked));
    Configuration out;
    for (const auto& t : interface) out.interface.push_back(drain(t));
    for (NameId id = 0; id < slots.size(); ++id) {
      if (slots[id].bound) {
        fail(Deadlocked(name_label(id) + " = " + print_net(table, slots[id].value)));
      }
    }
    out.next_name = static_cast<NameId>(slots.size());
    out.reserved_names = reserved;
    interface.clear();
    return out;
  }

  Configuration snapshot() const {
    Configuration out;
    std::vector<bool> used(slots.size(), false);
    for (const auto& t : interface) out.interface.push_back(view(t, used));
    for (const auto& eq : queue) {
      out.equations.push_back(Equation{view(eq.lhs, used), view(eq.rhs, used)});
    }
    for (const auto& p : parked) {
      if (!p.live) continue;
      out.equations.push_back(Equation{view(p.eq.lhs, used), view(p.eq.rhs, used)});
    }
    for (NameId id = 0; id < slots.size(); ++id) {
      if (!slots[id].bound || used[id]) continue;
      used[id] = true;
      out.equations.push_back(Equation{NetTerm::name(id), view(slots[id].value, used)});
    }
    out.next_name = static_cast<NameId>(slots.size());
    out.reserved_names = reserved;
    return out;
  }

  const RuleTable& table;
  Strategy strategy;
  std::mt19937_64 rng;
  std::unordered_set<std::string> reserved;
  std::unordered_set<std::string> used_identifiers;
  std::uint64_t identifier_counter = 0;

  std::vector<NetTerm> interface;
  std::deque<Equation> queue;
  std::vector<Slot> slots;
  std::vector<NameId> free_ids;
  std::vector<Parked> parked;
  std::vector<std::uint32_t> free_parked;
  std::unordered_map<NameId, std::vector<Waiter>> waiters;
  std::size_t live_parked = 0;

  Stats stats;
  std::uint64_t fuel = kDefaultFuel;
  std::uint64_t steps = 0;
  TraceFn trace;
};

Reducer::Reducer(const RuleTable& table, Configuration config, Strategy strategy)
    : impl_(std::make_unique<Impl>(table, std::move(config), strategy)) {}

Reducer::~Reducer() = default;

void Reducer::set_trace(TraceFn trace) { impl_->trace = std::move(trace); }
void Reducer::set_fuel(std::uint64_t fuel) { impl_->fuel = fuel; }
StepOutcome Reducer::step() { return impl_->step(); }

void Reducer::run() {
  while (impl_->step() == StepOutcome::Progressed) {
  }
}

Configuration Reducer::finish() { return impl_->finish(); }
Configuration Reducer::snapshot() const { return impl_->snapshot(); }
const Stats& Reducer::stats() const { return impl_->stats; }
std::size_t Reducer::pending() const { return impl_->queue.size() + impl_->live_parked; }

namespace {

class CalculusWiring final : public Wiring {
 public:
  explicit CalculusWiring(Configuration& config) : config_(config) {
    used_ = config.reserved_names;
    for (const auto& t : config.interface) collect_identifiers(t, used_);
    for (const auto& eq : config.equations) {
      collect_identifiers(eq.lhs, used_);
      collect_identifiers(eq.rhs, used_);
    }
  }

  NetTerm fresh() override { return NetTerm::name(config_.fresh_name()); }
  void connect(NetTerm a, NetTerm b) override {
    config_.equations.push_back(Equation{std::move(a), std::move(b)});
  }
  std::string fresh_identifier() override {
    for (std::uint64_t k = 0;; ++k) {
      std::string candidate = "_" + std::to_string(k);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  Configuration& config_;
  std::unordered_set<std::string> used_;
};

// Replaces the occurrence of `x` in `t`, if any.
bool substitute(NetTerm& t, NameId x, const NetTerm& u) {
  if (t.is_name()) {
    if (t.name_id() != x) return false;
    t = u;
    return true;
  }
  std::vector<NetTerm> ports = t.ports();
  for (auto& p : ports) {
    if (substitute(p, x, u)) {
      t = NetTerm::agent(t.symbol(), t.payload(), std::move(ports));
      return true;
    }
  }
  return false;
}

void indirection(Configuration& config, NameId x, const NetTerm& u, const RuleTable& table,
                 Stats& stats) {
  if (occurs_in(x, u)) throw Deadlocked(name_label(x) + " = " + print_net(table, u));
  for (auto& t : config.interface) {
    if (substitute(t, x, u)) {
      ++stats.indirections;
      return;
    }
  }
  for (auto& eq : config.equations) {
    if (substitute(eq.lhs, x, u) || substitute(eq.rhs, x, u)) {
      ++stats.indirections;
      return;
    }
  }
  throw LinearityViolation(name_label(x), 1);
}

}  // namespace

void collect_identifiers(const NetTerm& t, std::unordered_set<std::string>& out) {
  if (t.is_name()) return;
  if (const Term* term = std::get_if<Term>(&t.payload())) {
    out.merge(all_names(*term));
  } else if (const Context* context = std::get_if<Context>(&t.payload())) {
    out.merge(context->names());
  }
  for (const auto& p : t.ports()) collect_identifiers(p, out);
}

void step_at(Configuration& config, std::size_t index, const RuleTable& table, Stats& stats) {
  if (index >= config.equations.size()) throw std::out_of_range("no such equation");
  Equation eq = std::move(config.equations[index]);
  config.equations.erase(config.equations.begin() + static_cast<std::ptrdiff_t>(index));
  if (eq.lhs.is_name() || eq.rhs.is_name()) {
    if (!eq.lhs.is_name()) std::swap(eq.lhs, eq.rhs);
    indirection(config, eq.lhs.name_id(), eq.rhs, table, stats);
    return;
  }
  if (eq.lhs.is_amb() || eq.rhs.is_amb()) {
    for (auto& out : amb_dispatch(eq, stats)) config.equations.push_back(std::move(out));
    return;
  }
  const NetTerm& a = eq.lhs;
  const NetTerm& b = eq.rhs;
  RuleTable::Match m = table.find_rule(a.symbol(), a.payload(), b.symbol(), b.payload());
  if (!m.rule) throw NoRule(agent_label(table, a), agent_label(table, b));
  const NetTerm& l = m.swapped ? b : a;
  const NetTerm& r = m.swapped ? a : b;
  stats.record(m.rule->category, m.rule->waiting_vs_oracle);
  CalculusWiring wiring(config);
  m.rule->builder(l.payload(), r.payload(), l.ports(), r.ports(), wiring);
}

StepOutcome step(Configuration& config, const RuleTable& table, Strategy strategy, Stats& stats) {
  if (config.equations.empty()) return StepOutcome::NoEquations;
  std::size_t index = 0;
  switch (strategy.kind) {
    case Strategy::Kind::Fifo:
      break;
    case Strategy::Kind::Lifo:
      index = config.equations.size() - 1;
      break;
    case Strategy::Kind::Random: {
      std::mt19937_64 rng(strategy.seed + stats.total + stats.indirections);
      index = std::uniform_int_distribution<std::size_t>(0, config.equations.size() - 1)(rng);
      break;
    }
  }
  step_at(config, index, table, stats);
  return StepOutcome::Progressed;
}

ReduceResult reduce(Configuration config, const RuleTable& table, Strategy strategy,
                    std::uint64_t fuel, TraceFn trace) {
  Reducer reducer(table, std::move(config), strategy);
  reducer.set_fuel(fuel);
  reducer.set_trace(std::move(trace));
  reducer.run();
  Configuration out = reducer.finish();
  return ReduceResult{std::move(out), reducer.stats()};
}

Equation rotate_amb(const Equation& eq) {
  const NetTerm* t = &eq.lhs;
  const NetTerm* amb = &eq.rhs;
  if (!amb->is_amb()) std::swap(t, amb);
  if (!amb->is_amb() || !t->is_name()) return eq;
  const NetTerm& u = amb->ports()[0];
  if (!u.is_agent()) return eq;
  return Equation{u, NetTerm::agent(kAmbSymbol, {*t, amb->ports()[1], amb->ports()[2]})};
}

std::vector<Equation> amb_dispatch(const Equation& eq, Stats& stats) {
  const NetTerm* agent = &eq.lhs;
  const NetTerm* amb = &eq.rhs;
  if (!amb->is_amb()) std::swap(agent, amb);
  if (agent->is_amb()) throw NoRule("amb", "amb");
  if (!amb->is_amb() || !agent->is_agent()) {
    throw Error("amb_dispatch needs an agent facing an amb principal port");
  }
  stats.record(StatCategory::Amb);
  return {Equation{amb->ports()[1], *agent}, Equation{amb->ports()[0], amb->ports()[2]}};
}

}  // namespace lamnet
