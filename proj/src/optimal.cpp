#include "lamnet/optimal.hpp"

#include <array>
#include <map>

#include "lamnet/errors.hpp"

namespace lamnet {

namespace {

enum class SymClass : std::uint8_t { Beta, Fan, Oracle, Waiting, Readback, Erase, Amb };

SymClass class_of(SymbolId s, const SystemOptions& options) {
  switch (s) {
    case sym::lam:
    case sym::app:
      return SymClass::Beta;
    case sym::dup:
      return options.count_delta_as_oracle ? SymClass::Oracle : SymClass::Fan;
    case sym::croissant:
    case sym::bracket:
      return SymClass::Oracle;
    case sym::wait:
    case sym::hold:
    case sym::decide:
    case sym::eval:
    case sym::call:
      return SymClass::Waiting;
    case sym::top:
    case sym::atom:
    case sym::read:
      return SymClass::Readback;
    case sym::eps:
      return SymClass::Erase;
    default:
      return SymClass::Amb;
  }
}

std::uint32_t level(const Payload& p) { return std::get<Level>(p).index; }

NetTerm agent(SymbolId s, Payload p, std::vector<NetTerm> ports) {
  return NetTerm::agent(s, std::move(p), std::move(ports));
}

NetTerm agent(SymbolId s, std::vector<NetTerm> ports = {}) {
  return NetTerm::agent(s, std::move(ports));
}

NetTerm atom(Term t) { return NetTerm::agent(sym::atom, std::move(t), {}); }

const Guard kSameLevel = [](const Payload& l, const Payload& r) { return level(l) == level(r); };
const Guard kLowerLevel = [](const Payload& l, const Payload& r) { return level(l) < level(r); };

class SystemBuilder {
 public:
  explicit SystemBuilder(SystemOptions options) : options_(options) {}

  RuleTable build() {
    register_signature();
    annihilation();
    propagation();
    waiting();
    readback();
    erasure();
    return std::move(table_);
  }

 private:
  void add(std::string name, SymbolId l, SymbolId r, Guard guard, Builder builder) {
    Classification c = classify(l, r, options_);
    table_.add_rule(Rule{std::move(name), l, r, std::move(guard), std::move(builder), c.category,
                         c.waiting_vs_oracle});
  }

  std::string label(SymbolId s) const { return table_.info(s).name; }

  void register_signature() {
    struct Entry {
      SymbolId id;
      const char* name;
      std::size_t arity;
      PayloadKind payload;
    };
    const std::array<Entry, 14> entries{{
        {sym::eps, "eps", 0, PayloadKind::None},
        {sym::lam, "lam", 2, PayloadKind::Level},
        {sym::app, "app", 2, PayloadKind::Level},
        {sym::dup, "dup", 2, PayloadKind::Level},
        {sym::croissant, "croissant", 1, PayloadKind::Level},
        {sym::bracket, "bracket", 1, PayloadKind::Level},
        {sym::wait, "wait", 2, PayloadKind::None},
        {sym::hold, "hold", 2, PayloadKind::None},
        {sym::decide, "decide", 2, PayloadKind::None},
        {sym::eval, "eval", 1, PayloadKind::None},
        {sym::call, "call", 0, PayloadKind::None},
        {sym::top, "top", 1, PayloadKind::None},
        {sym::atom, "atom", 0, PayloadKind::Term},
        {sym::read, "read", 1, PayloadKind::Context},
    }};
    for (const auto& e : entries) {
      SymbolId id = table_.register_agent(e.name, e.arity, e.payload);
      if (id != e.id) throw Error("symbol registration order changed");
    }
  }

  void annihilation() {
    for (SymbolId s : {sym::croissant, sym::bracket}) {
      add(label(s) + "-" + label(s), s, s, kSameLevel,
          [](const Payload&, const Payload&, auto t, auto u, Wiring& w) { w.connect(t[0], u[0]); });
    }
    add("dup-dup", sym::dup, sym::dup, kSameLevel,
        [](const Payload&, const Payload&, auto t, auto u, Wiring& w) {
          w.connect(t[0], u[0]);
          w.connect(t[1], u[1]);
        });
    // β with the waiting construct: the bound variable receives
    // wait(z, hold(z, argument)).
    add("app-lam", sym::app, sym::lam, kSameLevel,
        [](const Payload&, const Payload&, auto t, auto u, Wiring& w) {
          NetTerm z = w.fresh();
          w.connect(u[0], agent(sym::wait, {z, agent(sym::hold, {z, t[0]})}));
          w.connect(u[1], t[1]);
        });
  }

  void propagation() {
    const std::array<SymbolId, 5> targets{sym::lam, sym::app, sym::dup, sym::croissant,
                                          sym::bracket};
    for (SymbolId target : targets) {
      add("croissant-" + label(target), sym::croissant, target, kLowerLevel,
          [target](const Payload& p, const Payload& q, auto t, auto u, Wiring& w) {
            shift(target, p, q, t, u, w, sym::croissant, -1);
          });
      add("bracket-" + label(target), sym::bracket, target, kLowerLevel,
          [target](const Payload& p, const Payload& q, auto t, auto u, Wiring& w) {
            shift(target, p, q, t, u, w, sym::bracket, +1);
          });
      add("dup-" + label(target), sym::dup, target, kLowerLevel,
          [target](const Payload& p, const Payload& q, auto t, auto u, Wiring& w) {
            std::vector<NetTerm> xs;
            std::vector<NetTerm> ys;
            for (std::size_t k = 0; k < u.size(); ++k) {
              xs.push_back(w.fresh());
              ys.push_back(w.fresh());
            }
            w.connect(t[0], agent(target, q, xs));
            w.connect(t[1], agent(target, q, ys));
            for (std::size_t k = 0; k < u.size(); ++k) {
              w.connect(u[k], agent(sym::dup, p, {xs[k], ys[k]}));
            }
          });
    }
  }

  // ⩀_i / ⊔_i passing through α_j: the copy behind it sits at j ∓ 1.
  static void shift(SymbolId target, const Payload& p, const Payload& q,
                    std::span<const NetTerm> t, std::span<const NetTerm> u, Wiring& w,
                    SymbolId self, int delta) {
    Level moved = std::get<Level>(q);
    moved.index = static_cast<std::uint32_t>(static_cast<std::int64_t>(moved.index) + delta);
    std::vector<NetTerm> xs;
    for (std::size_t k = 0; k < u.size(); ++k) xs.push_back(w.fresh());
    w.connect(t[0], agent(target, moved, xs));
    for (std::size_t k = 0; k < u.size(); ++k) w.connect(u[k], agent(self, p, {xs[k]}));
  }

  void waiting() {
    add("eval-lam", sym::eval, sym::lam, {},
        [](const Payload&, const Payload& q, auto t, auto u, Wiring& w) {
          NetTerm y = w.fresh();
          w.connect(t[0], agent(sym::lam, q, {u[0], y}));
          w.connect(u[1], agent(sym::eval, {y}));
        });
    add("eval-dup", sym::eval, sym::dup, {},
        [](const Payload&, const Payload& q, auto t, auto u, Wiring& w) {
          w.connect(t[0], agent(sym::dup, q, {u[0], u[1]}));
        });
    add("eval-wait", sym::eval, sym::wait, {},
        [](const Payload&, const Payload&, auto t, auto u, Wiring& w) {
          w.connect(u[0], agent(sym::eval, {t[0]}));
          w.connect(u[1], agent(sym::call));
        });
    add("call-hold", sym::call, sym::hold, {},
        [](const Payload&, const Payload&, auto, auto u, Wiring& w) {
          w.connect(u[1], agent(sym::eval, {u[0]}));
        });
    // A fan meeting wait splits it in two; whichever copy is called first
    // decides through amb.
    add("dup-wait", sym::dup, sym::wait, {},
        [](const Payload& p, const Payload&, auto t, auto u, Wiring& w) {
          NetTerm x = w.fresh();
          NetTerm y = w.fresh();
          NetTerm v = w.fresh();
          NetTerm wn = w.fresh();
          NetTerm choice = agent(sym::amb, {y, agent(sym::decide, {u[1], v}), v});
          w.connect(t[0], agent(sym::wait, {x, choice}));
          w.connect(t[1], agent(sym::wait, {wn, y}));
          w.connect(u[0], agent(sym::dup, p, {x, wn}));
        });
    add("call-decide", sym::call, sym::decide, {},
        [](const Payload&, const Payload&, auto, auto u, Wiring& w) {
          w.connect(u[0], agent(sym::call));
          w.connect(u[1], agent(sym::eps));
        });
    add("eps-decide", sym::eps, sym::decide, {},
        [](const Payload&, const Payload&, auto, auto u, Wiring& w) { w.connect(u[0], u[1]); });
    add("app-wait", sym::app, sym::wait, {},
        [](const Payload& p, const Payload&, auto t, auto u, Wiring& w) {
          NetTerm y = w.fresh();
          NetTerm inner = agent(sym::app, p, {t[0], y});
          w.connect(t[1], agent(sym::wait, {y, agent(sym::hold, {inner, agent(sym::wait,
                                                                                {u[0], u[1]})})}));
        });
    // eval lands on a control node after ⩀_i/⊔_i ⋈ wait; it passes through
    // the same way read does.
    for (SymbolId s : {sym::croissant, sym::bracket}) {
      add("eval-" + label(s), sym::eval, s, {},
          [s](const Payload&, const Payload& q, auto t, auto u, Wiring& w) {
            NetTerm x = w.fresh();
            w.connect(t[0], agent(s, q, {x}));
            w.connect(u[0], agent(sym::eval, {x}));
          });
    }
    for (SymbolId s : {sym::croissant, sym::bracket}) {
      add(label(s) + "-wait", s, sym::wait, {},
          [s](const Payload& p, const Payload&, auto t, auto u, Wiring& w) {
            NetTerm x = w.fresh();
            w.connect(t[0], agent(sym::wait, {x, u[1]}));
            w.connect(u[0], agent(s, p, {x}));
          });
    }
  }

  void readback() {
    add("read-lam", sym::read, sym::lam, {},
        [](const Payload& p, const Payload&, auto t, auto u, Wiring& w) {
          std::string y = w.fresh_identifier();
          const Context& c = std::get<Context>(p);
          w.connect(u[0], atom(Term::var(y)));
          w.connect(u[1], agent(sym::read, c.compose(Context::under_abs(y)), {t[0]}));
        });
    add("app-atom", sym::app, sym::atom, {},
        [](const Payload&, const Payload& q, auto t, auto, Wiring& w) {
          w.connect(t[0], agent(sym::read, Context::arg_of(std::get<Term>(q)), {t[1]}));
        });
    add("read-atom", sym::read, sym::atom, {},
        [](const Payload& p, const Payload& q, auto t, auto, Wiring& w) {
          w.connect(t[0], atom(std::get<Context>(p).plug(std::get<Term>(q))));
        });
    for (SymbolId s : {sym::croissant, sym::bracket}) {
      add("read-" + label(s), sym::read, s, {},
          [s](const Payload& p, const Payload& q, auto t, auto u, Wiring& w) {
            NetTerm x = w.fresh();
            w.connect(t[0], agent(s, q, {x}));
            w.connect(u[0], agent(sym::read, p, {x}));
          });
    }
    add("read-wait", sym::read, sym::wait, {},
        [](const Payload& p, const Payload&, auto t, auto u, Wiring& w) {
          NetTerm x = w.fresh();
          w.connect(t[0], agent(sym::wait, {x, u[1]}));
          w.connect(u[0], agent(sym::read, p, {x}));
        });
    for (SymbolId s : {sym::eval, sym::croissant, sym::bracket, sym::top}) {
      add(label(s) + "-atom", s, sym::atom, {},
          [](const Payload&, const Payload& q, auto t, auto, Wiring& w) {
            w.connect(t[0], atom(std::get<Term>(q)));
          });
    }
    for (SymbolId s : {sym::croissant, sym::bracket}) {
      add("top-" + label(s), sym::top, s, {},
          [](const Payload&, const Payload&, auto t, auto u, Wiring& w) {
            w.connect(u[0], agent(sym::top, {t[0]}));
          });
    }
    // A fan rising out of a shared argument copies the reader into both
    // branches; it annihilates with its partner further up.
    add("dup-read", sym::dup, sym::read, {},
        [](const Payload& p, const Payload& q, auto t, auto u, Wiring& w) {
          NetTerm x = w.fresh();
          NetTerm y = w.fresh();
          w.connect(t[0], agent(sym::read, q, {x}));
          w.connect(t[1], agent(sym::read, q, {y}));
          w.connect(u[0], agent(sym::dup, p, {x, y}));
        });
    // Atoms are closed text, so a fan copies them outright.
    add("dup-atom", sym::dup, sym::atom, {},
        [](const Payload&, const Payload& q, auto t, auto, Wiring& w) {
          w.connect(t[0], atom(std::get<Term>(q)));
          w.connect(t[1], atom(std::get<Term>(q)));
        });
  }

  void erasure() {
    for (SymbolId s = sym::eps; s < sym::count; ++s) {
      if (s == sym::decide) continue;
      add("eps-" + label(s), sym::eps, s, {},
          [](const Payload&, const Payload&, auto, auto u, Wiring& w) {
            for (const NetTerm& port : u) w.connect(port, agent(sym::eps));
          });
    }
  }

  SystemOptions options_;
  RuleTable table_;
};

// Initial encoding. Each subterm yields its root and, per free variable, the
// term to be attached to the binder's variable port.
class Encoder {
 public:
  explicit Encoder(Configuration& config) : config_(config) {}

  struct Piece {
    NetTerm root;
    std::map<std::string, NetTerm> free;
  };

  Piece translate(const Term& t, std::uint32_t n) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        NetTerm r = fresh();
        Piece out{r, {}};
        out.free.emplace(t.name(), agent(sym::croissant, Level{n}, {r}));
        return out;
      }
      case Term::Kind::Marked:
        return Piece{atom(Term::var(t.name())), {}};
      case Term::Kind::Abs: {
        Piece body = translate(t.body(), n);
        NetTerm var = agent(sym::eps);
        if (auto it = body.free.find(t.name()); it != body.free.end()) {
          var = std::move(it->second);
          body.free.erase(it);
        }
        Level lv{n};
        return Piece{agent(sym::lam, lv, {std::move(var), std::move(body.root)}),
                     std::move(body.free)};
      }
      case Term::Kind::App: {
        Piece fun = translate(t.fun(), n);
        Piece arg = translate(t.arg(), n + 1);
        NetTerm r = fresh();
        config_.equations.push_back(
            Equation{std::move(fun.root), agent(sym::app, Level{n}, {arg.root, r})});
        Piece out{r, std::move(fun.free)};
        for (auto& [x, term] : arg.free) {
          NetTerm boxed = agent(sym::bracket, Level{n}, {std::move(term)});
          auto it = out.free.find(x);
          if (it == out.free.end()) {
            out.free.emplace(x, std::move(boxed));
          } else {
            it->second = agent(sym::dup, Level{n}, {std::move(it->second), std::move(boxed)});
          }
        }
        return out;
      }
      case Term::Kind::Hole:
        break;
    }
    throw Error("cannot encode a context hole");
  }

 private:
  NetTerm fresh() { return NetTerm::name(config_.fresh_name()); }

  Configuration& config_;
};

}  // namespace

Classification classify(SymbolId a, SymbolId b, SystemOptions options) {
  SymClass ca = class_of(a, options);
  SymClass cb = class_of(b, options);
  auto either = [&](SymClass c) { return ca == c || cb == c; };
  if (either(SymClass::Amb)) return {StatCategory::Amb, false};
  if (either(SymClass::Waiting)) {
    return {StatCategory::Waiting, either(SymClass::Oracle)};
  }
  if (either(SymClass::Oracle)) return {StatCategory::Oracle, false};
  if (either(SymClass::Erase)) return {StatCategory::Erase, false};
  if (either(SymClass::Readback)) return {StatCategory::Readback, false};
  if (ca == SymClass::Beta && cb == SymClass::Beta) return {StatCategory::Beta, false};
  if (either(SymClass::Fan)) return {StatCategory::Fan, false};
  return {StatCategory::Other, false};
}

RuleTable build_system(SystemOptions options) { return SystemBuilder(options).build(); }

const RuleTable& default_system() {
  static const RuleTable table = build_system();
  return table;
}

const RuleTable& system_for(SystemOptions options) {
  if (!options.count_delta_as_oracle) return default_system();
  static const RuleTable table = build_system(options);
  return table;
}

Configuration encode(const Term& term) {
  Configuration config;
  for (const auto& x : free_vars(term)) config.reserved_names.insert(x);
  NetTerm x = NetTerm::name(config.fresh_name());
  config.interface.push_back(x);
  NetTerm wrapper =
      agent(sym::eval, {agent(sym::read, Context(), {agent(sym::top, {x})})});
  // The wrapper equation goes first so a FIFO run starts from the root.
  config.equations.push_back(Equation{wrapper, NetTerm()});
  Encoder encoder(config);
  auto piece = encoder.translate(mark_free(term), 0);
  config.equations.front().rhs = std::move(piece.root);
  return config;
}

Term decode(const Configuration& config) {
  if (!config.equations.empty()) throw NotNormal(config.equations.size());
  if (config.interface.size() != 1) {
    throw Garbage("interface has " + std::to_string(config.interface.size()) + " entries");
  }
  const NetTerm& t = config.interface.front();
  if (!t.is_agent() || t.symbol() != sym::atom) {
    throw Garbage("interface is " + print_net(default_system(), t));
  }
  return std::get<Term>(t.payload());
}

NormalizeResult normalize(const Term& term, Strategy strategy, std::uint64_t fuel,
                          SystemOptions options, TraceFn trace) {
  const RuleTable& table = system_for(options);
  ReduceResult result = reduce(encode(term), table, strategy, fuel, std::move(trace));
  try {
    return NormalizeResult{decode(result.config), result.stats};
  } catch (Error& e) {
    e.stats = result.stats;
    throw;
  }
}

}  // namespace lamnet
