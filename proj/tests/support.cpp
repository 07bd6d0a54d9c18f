#include "support.hpp"

#include <algorithm>
#include <memory>

#include "lamnet/errors.hpp"

namespace lamnet::testing {

const char* const kCycleProgram = R"(\epsilon {
        console.log("epsilon >< delta");
} \delta[\epsilon, \epsilon];

\epsilon {
        console.log("epsilon >< gamma");
} \gamma[\epsilon, \epsilon];

\delta[\gamma(x, y), \gamma(v, w)] {
        console.log("delta >< gamma");
} \gamma[\delta(x, v), \delta(y, w)];

$$

\delta(\epsilon, x) = \gamma(x, \epsilon);
)";

#define LAMNET_CYCLE_RULES                                  \
  "\\epsilon \\delta[\\epsilon, \\epsilon];\n"              \
  "\\epsilon \\gamma[\\epsilon, \\epsilon];\n"              \
  "\\delta[\\gamma(x, y), \\gamma(v, w)] "                  \
  "\\gamma[\\delta(x, v), \\delta(y, w)];\n"                \
  "$$\n"

const char* const kCycleAfterOne = LAMNET_CYCLE_RULES
    "\\epsilon = \\gamma(x1, x2);\n"
    "x = \\gamma(y1, y2);\n"
    "x = \\delta(x1, y1);\n"
    "\\epsilon = \\delta(x2, y2);\n";

const char* const kCycleAfterThree = LAMNET_CYCLE_RULES
    "x1 = \\epsilon;\n"
    "x2 = \\epsilon;\n"
    "x = \\gamma(y1, y2);\n"
    "x = \\delta(x1, y1);\n"
    "x2 = \\epsilon;\n"
    "y2 = \\epsilon;\n";

#undef LAMNET_CYCLE_RULES

std::size_t find_active_pair(const RuleTable& table, const Configuration& config,
                             std::string_view a, std::string_view b) {
  for (std::size_t i = 0; i < config.equations.size(); ++i) {
    const Equation& eq = config.equations[i];
    if (!eq.lhs.is_agent() || !eq.rhs.is_agent()) continue;
    const std::string& l = table.info(eq.lhs.symbol()).name;
    const std::string& r = table.info(eq.rhs.symbol()).name;
    if ((l == a && r == b) || (l == b && r == a)) return i;
  }
  return config.equations.size();
}

std::size_t find_indirection(const Configuration& config) {
  for (std::size_t i = 0; i < config.equations.size(); ++i) {
    if (config.equations[i].lhs.is_name() || config.equations[i].rhs.is_name()) return i;
  }
  return config.equations.size();
}

std::vector<Strategy> all_strategies() {
  std::vector<Strategy> out{Strategy::fifo(), Strategy::lifo()};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) out.push_back(Strategy::random(seed));
  return out;
}

namespace {

// A right-hand side shape: leaves refer to rule ports or fresh-name
// occurrences, inner nodes are agents.
struct Shape {
  SymbolId symbol = 0;
  int ref = -1;  // >= 0 for leaves
  std::vector<Shape> ports;
};

struct Template {
  std::size_t fresh = 0;
  std::vector<std::pair<Shape, Shape>> equations;
};

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

Template random_template(const FuzzSystem& sys, std::size_t ports, std::mt19937_64& rng) {
  Template tpl;
  tpl.fresh = pick(rng, 3);
  std::vector<Shape> items;
  for (std::size_t i = 0; i < ports + 2 * tpl.fresh; ++i) {
    Shape leaf;
    leaf.ref = static_cast<int>(i);
    items.push_back(leaf);
  }
  std::shuffle(items.begin(), items.end(), rng);
  std::size_t agents = pick(rng, 4);
  for (std::size_t k = 0; k < agents; ++k) {
    SymbolId s = sys.symbols[pick(rng, sys.symbols.size())];
    std::size_t arity = sys.table.info(s).arity;
    if (arity > items.size()) continue;
    Shape node;
    node.symbol = s;
    node.ports.assign(items.end() - static_cast<std::ptrdiff_t>(arity), items.end());
    items.resize(items.size() - arity);
    items.insert(items.begin() + static_cast<std::ptrdiff_t>(pick(rng, items.size() + 1)),
                 std::move(node));
  }
  if (items.size() % 2 == 1) {
    Shape nullary;
    nullary.symbol = sys.symbols.front();
    items.push_back(nullary);
  }
  for (std::size_t i = 0; i + 1 < items.size(); i += 2) {
    tpl.equations.emplace_back(items[i], items[i + 1]);
  }
  return tpl;
}

NetTerm instantiate(const Shape& s, const std::vector<NetTerm>& refs) {
  if (s.ref >= 0) return refs[static_cast<std::size_t>(s.ref)];
  std::vector<NetTerm> ports;
  for (const auto& p : s.ports) ports.push_back(instantiate(p, refs));
  return NetTerm::agent(s.symbol, std::move(ports));
}

// Leaves left as default NetTerm are placeholders for names.
NetTerm random_tree(const FuzzSystem& sys, std::mt19937_64& rng, int depth) {
  SymbolId s = depth == 0 ? sys.symbols.front() : sys.symbols[pick(rng, sys.symbols.size())];
  std::vector<NetTerm> ports;
  for (std::size_t k = 0; k < sys.table.info(s).arity; ++k) {
    ports.push_back(depth > 1 && pick(rng, 3) == 0 ? random_tree(sys, rng, depth - 1) : NetTerm());
  }
  return NetTerm::agent(s, std::move(ports));
}

NetTerm name_holes(const NetTerm& t, const std::vector<NameId>& names, std::size_t& next) {
  if (t.is_name()) return NetTerm::name(names[next++]);
  std::vector<NetTerm> ports;
  for (const auto& p : t.ports()) ports.push_back(name_holes(p, names, next));
  return NetTerm::agent(t.symbol(), t.payload(), std::move(ports));
}

std::size_t count_holes(const NetTerm& t) {
  if (t.is_name()) return 1;
  std::size_t n = 0;
  for (const auto& p : t.ports()) n += count_holes(p);
  return n;
}

}  // namespace

FuzzSystem random_system(std::mt19937_64& rng) {
  FuzzSystem sys;
  std::size_t count = 2 + pick(rng, 4);
  // The first symbol is nullary so odd endpoint counts can be closed off.
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t arity = i == 0 ? 0 : pick(rng, 4);
    sys.symbols.push_back(
        sys.table.register_agent("s" + std::to_string(i), arity, PayloadKind::None));
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) {
      if (pick(rng, 2) == 0) continue;
      SymbolId a = sys.symbols[i];
      SymbolId b = sys.symbols[j];
      std::size_t ports = sys.table.info(a).arity + sys.table.info(b).arity;
      auto tpl = std::make_shared<Template>(random_template(sys, ports, rng));
      Rule rule;
      rule.name = "r" + std::to_string(i) + "_" + std::to_string(j);
      rule.left = a;
      rule.right = b;
      rule.builder = [tpl](const Payload&, const Payload&, std::span<const NetTerm> t,
                           std::span<const NetTerm> u, Wiring& w) {
        std::vector<NetTerm> refs(t.begin(), t.end());
        refs.insert(refs.end(), u.begin(), u.end());
        for (std::size_t k = 0; k < tpl->fresh; ++k) {
          NetTerm x = w.fresh();
          refs.push_back(x);
          refs.push_back(x);
        }
        for (const auto& [l, r] : tpl->equations) {
          w.connect(instantiate(l, refs), instantiate(r, refs));
        }
      };
      sys.table.add_rule(std::move(rule));
    }
  }
  return sys;
}

Configuration random_configuration(const FuzzSystem& sys, std::mt19937_64& rng) {
  std::vector<NetTerm> sides;
  std::size_t equations = 1 + pick(rng, 3);
  for (std::size_t i = 0; i < 2 * equations; ++i) {
    // Some sides are bare names so indirections happen too.
    if (pick(rng, 4) == 0) {
      sides.push_back(NetTerm());
    } else {
      sides.push_back(random_tree(sys, rng, 1 + static_cast<int>(pick(rng, 3))));
    }
  }
  std::size_t holes = 0;
  for (const auto& s : sides) holes += count_holes(s);

  Configuration config;
  // Pair the hole occurrences into names; an odd one out, plus a few more,
  // go to the interface.
  std::size_t interface = holes % 2 + 2 * pick(rng, 2);
  if (interface > holes) interface = holes % 2;
  std::vector<NameId> names;
  for (std::size_t i = 0; i < interface; ++i) {
    NameId x = config.fresh_name();
    config.interface.push_back(NetTerm::name(x));
    names.push_back(x);
  }
  while (names.size() < holes) {
    NameId x = config.fresh_name();
    names.push_back(x);
    names.push_back(x);
  }
  std::shuffle(names.begin(), names.end(), rng);
  std::size_t next = 0;
  for (std::size_t i = 0; i < sides.size(); i += 2) {
    NetTerm l = name_holes(sides[i], names, next);
    NetTerm r = name_holes(sides[i + 1], names, next);
    config.equations.push_back(Equation{std::move(l), std::move(r)});
  }
  return config;
}

FuzzReport fuzz_linearity(std::size_t count, std::uint64_t seed) {
  constexpr std::size_t kMaxSteps = 40;
  std::mt19937_64 rng(seed);
  FuzzReport report;
  auto violation = [&report](const std::string& where, const LinearityViolation& e) {
    if (report.violations++ == 0) report.first_violation = where + ": " + e.what();
  };

  for (std::size_t i = 0; i < count; ++i) {
    FuzzSystem sys = random_system(rng);
    Configuration start = random_configuration(sys, rng);
    ++report.configurations;
    try {
      check_linearity(start);
    } catch (const LinearityViolation& e) {
      violation("generator", e);
      continue;
    }

    Strategy strategy = Strategy::random(rng());
    Configuration c = start;
    Stats stats;
    for (std::size_t s = 0; s < kMaxSteps; ++s) {
      try {
        if (step(c, sys.table, strategy, stats) == StepOutcome::NoEquations) break;
        ++report.steps;
        check_linearity(c);
      } catch (const LinearityViolation& e) {
        violation("calculus step", e);
        break;
      } catch (const Error&) {
        break;  // NoRule or Deadlocked end the run; neither breaks linearity
      }
    }

    Reducer reducer(sys.table, start, strategy);
    for (std::size_t s = 0; s < kMaxSteps; ++s) {
      try {
        if (reducer.step() == StepOutcome::NoEquations) break;
        ++report.steps;
        check_linearity(reducer.snapshot());
      } catch (const LinearityViolation& e) {
        violation("reducer step", e);
        break;
      } catch (const Error&) {
        break;
      }
    }
  }
  return report;
}

}  // namespace lamnet::testing
