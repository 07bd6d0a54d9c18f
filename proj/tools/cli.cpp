#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lamnet/corpus.hpp"
#include "lamnet/dsl.hpp"
#include "lamnet/errors.hpp"
#include "lamnet/optimal.hpp"

namespace lamnet::cli {

namespace {

using nlohmann::ordered_json;

struct Config {
  std::string input = "-";
  std::string expr;
  std::string strategy = "fifo";
  std::uint64_t seed = 0;
  std::uint64_t fuel = kDefaultFuel;
  std::uint64_t oracle_fuel = kDefaultOracleFuel;
  bool stats = false;
  bool trace = false;
  bool ascii = false;
  bool json = false;
  bool oracle_check = false;
  bool count_delta_as_oracle = false;
  bool strategy_given = false;
};

// Reference interaction counts for 3^3 − (2+2)!. Shown for comparison only.
struct Reference {
  std::uint64_t total = 2652687;
  std::uint64_t oracle_related = 2621262;
  std::uint64_t waiting = 1182981;
  std::uint64_t waiting_vs_oracle = 1159057;
};

class Command {
 public:
  Command(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err)
      : cfg_(cfg), in_(in), out_(out), err_(err) {}

  int normalize();
  int run_program();
  int selftest();

 private:
  std::string read_input() {
    if (cfg_.input == "-") {
      std::ostringstream s;
      s << in_.rdbuf();
      return s.str();
    }
    std::ifstream file(cfg_.input, std::ios::binary);
    if (!file) throw Error("cannot open " + cfg_.input);
    std::ostringstream s;
    s << file.rdbuf();
    return s.str();
  }

  Strategy strategy() const {
    if (cfg_.strategy == "lifo") return Strategy::lifo();
    if (cfg_.strategy == "random") return Strategy::random(cfg_.seed);
    return Strategy::fifo();
  }

  SystemOptions system_options() const { return {cfg_.count_delta_as_oracle}; }

  TraceFn tracer(const RuleTable& table) {
    if (!cfg_.trace) return {};
    NetPrintOptions options{cfg_.ascii};
    return [this, &table, options](const TraceEvent& e) {
      err_ << e.step << ' ' << e.rule << ": " << print_net(table, *e.left, options) << " = "
           << print_net(table, *e.right, options) << '\n';
    };
  }

  int report(const Error& e) {
    err_ << "error: " << e.what() << '\n';
    if (e.stats && cfg_.stats) err_ << "partial stats: " << e.stats->to_json() << '\n';
    return dynamic_cast<const FuelExhausted*>(&e) ? kFuelExhausted : kError;
  }

  void print_stats(const Stats& stats, bool benchmark) {
    out_ << stats.to_json() << '\n';
    auto share = [&](std::uint64_t n) {
      std::ostringstream s;
      s << std::fixed << std::setprecision(1)
        << (stats.total ? 100.0 * static_cast<double>(n) / static_cast<double>(stats.total) : 0.0)
        << '%';
      return s.str();
    };
    out_ << "oracle-related " << stats.oracle_related() << " (" << share(stats.oracle_related())
         << "), waiting " << stats.waiting << " (" << share(stats.waiting) << ")\n";
    if (benchmark) {
      Reference ref;
      out_ << "reference: total " << ref.total << ", oracle-related " << ref.oracle_related
           << ", waiting " << ref.waiting << ", waiting-vs-oracle " << ref.waiting_vs_oracle
           << '\n';
    }
  }

  const Config& cfg_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

ordered_json stats_json(const Stats& stats) {
  ordered_json j = ordered_json::parse(stats.to_json());
  j["oracle_related"] = stats.oracle_related();
  return j;
}

ordered_json reference_json() {
  Reference ref;
  return {{"total", ref.total},
          {"oracle_related", ref.oracle_related},
          {"waiting", ref.waiting},
          {"waiting_vs_oracle", ref.waiting_vs_oracle}};
}

int Command::normalize() {
  PrintOptions print{cfg_.ascii};
  std::optional<Term> parsed;
  try {
    parsed = parse_term(cfg_.expr.empty() ? read_input() : cfg_.expr);
  } catch (const Error& e) {
    return report(e);
  }
  const Term& term = *parsed;
  bool benchmark = alpha_eq(term, parse_term(lamnet::benchmark().source));

  const RuleTable& table = system_for(system_options());
  std::optional<NormalizeResult> result;
  try {
    result = lamnet::normalize(term, strategy(), cfg_.fuel, system_options(), tracer(table));
  } catch (const Error& e) {
    return report(e);
  }

  int code = kOk;
  std::optional<Term> expected;
  if (cfg_.oracle_check) {
    try {
      expected = normal_order_nf(term, cfg_.oracle_fuel);
      if (!alpha_eq(*expected, result->term)) code = kOracleMismatch;
    } catch (const FuelExhausted&) {
      err_ << "error: oracle fuel exhausted after " << cfg_.oracle_fuel << " steps\n";
      code = kFuelExhausted;
    }
  }

  if (cfg_.json) {
    ordered_json j;
    j["normal_form"] = print_term(result->term, print);
    if (cfg_.oracle_check) {
      j["oracle"] = !expected ? "unknown" : code == kOk ? "match" : "mismatch";
      if (expected) j["oracle_normal_form"] = print_term(*expected, print);
    }
    if (cfg_.stats) {
      j["stats"] = stats_json(result->stats);
      if (benchmark) j["reference"] = reference_json();
    }
    out_ << j.dump() << '\n';
    return code;
  }

  out_ << print_term(result->term, print) << '\n';
  if (cfg_.oracle_check && expected) {
    if (code == kOk) {
      out_ << "MATCH\n";
    } else {
      out_ << "MISMATCH oracle: " << print_term(*expected, print) << '\n';
    }
  }
  if (cfg_.stats) print_stats(result->stats, benchmark);
  return code;
}

int Command::run_program() {
  NetPrintOptions print{cfg_.ascii};
  try {
    dsl::Program program = dsl::parse_system(read_input());
    for (const auto& w : program.warnings) err_ << "warning: " << w << '\n';
    dsl::Loaded loaded = dsl::load(program);
    ReduceResult result =
        reduce(std::move(loaded.config), loaded.table, strategy(), cfg_.fuel, tracer(loaded.table));
    std::string text = print_configuration(loaded.table, result.config, print);
    if (cfg_.json) {
      ordered_json j;
      j["configuration"] = text;
      if (cfg_.stats) j["stats"] = stats_json(result.stats);
      out_ << j.dump() << '\n';
    } else {
      out_ << text << '\n';
      if (cfg_.stats) out_ << result.stats.to_json() << '\n';
    }
    return kOk;
  } catch (const Error& e) {
    return report(e);
  }
}

int Command::selftest() {
  std::vector<Strategy> strategies;
  if (cfg_.strategy_given) {
    strategies.push_back(strategy());
  } else {
    strategies = {Strategy::fifo(), Strategy::lifo(), Strategy::random(cfg_.seed)};
  }
  PrintOptions print{cfg_.ascii};
  bool mismatch = false;
  bool fuel = false;
  bool failed = false;
  ordered_json rows = ordered_json::array();

  for (const CorpusEntry& entry : corpus()) {
    Term term = parse_term(entry.source);
    std::optional<Term> expected;
    try {
      expected = normal_order_nf(term, cfg_.oracle_fuel);
    } catch (const FuelExhausted&) {
    }
    for (const Strategy& s : strategies) {
      std::string verdict;
      std::string detail;
      std::uint64_t interactions = 0;
      try {
        NormalizeResult r = lamnet::normalize(term, s, cfg_.fuel, system_options());
        interactions = r.stats.total;
        if (!expected) {
          verdict = "NO-ORACLE";
          failed = true;
        } else if (alpha_eq(*expected, r.term)) {
          verdict = "MATCH";
        } else {
          verdict = "MISMATCH";
          detail = print_term(r.term, print);
          mismatch = true;
        }
      } catch (const FuelExhausted& e) {
        verdict = "FUEL";
        interactions = e.stats ? e.stats->total : 0;
        fuel = true;
      } catch (const Error& e) {
        verdict = "ERROR";
        detail = e.what();
        interactions = e.stats ? e.stats->total : 0;
        failed = true;
      }
      if (cfg_.json) {
        ordered_json row{{"name", entry.name},
                         {"strategy", to_string(s)},
                         {"result", verdict},
                         {"interactions", interactions}};
        if (!detail.empty()) row["detail"] = detail;
        rows.push_back(std::move(row));
      } else {
        out_ << std::left << std::setw(28) << entry.name << std::setw(12) << to_string(s)
             << std::setw(10) << verdict << interactions;
        if (!detail.empty()) out_ << "  " << detail;
        out_ << '\n';
      }
    }
  }
  if (cfg_.json) out_ << rows.dump() << '\n';
  if (mismatch) return kOracleMismatch;
  if (fuel) return kFuelExhausted;
  return failed ? kError : kOk;
}

void add_common(CLI::App& app, Config& cfg) {
  app.add_option("--strategy", cfg.strategy, "Reduction order: fifo, lifo or random")
      ->check(CLI::IsMember({"fifo", "lifo", "random"}))
      ->each([&cfg](const std::string&) { cfg.strategy_given = true; });
  app.add_option("--seed", cfg.seed, "Seed for the random strategy");
  app.add_option("--fuel", cfg.fuel, "Maximum number of interactions")
      ->check(CLI::PositiveNumber);
  app.add_option("--oracle-fuel", cfg.oracle_fuel, "Maximum β-steps of the reference reducer")
      ->check(CLI::PositiveNumber);
  app.add_flag("--stats", cfg.stats, "Print interaction statistics");
  app.add_flag("--trace", cfg.trace, "Print every interaction to stderr");
  app.add_flag("--ascii", cfg.ascii, "Use \\ instead of λ and <…> instead of ⟨…⟩");
  app.add_flag("--json", cfg.json, "Machine-readable output");
  app.add_flag("--oracle-check", cfg.oracle_check,
               "Compare against the normal-order reference reducer");
  app.add_flag("--count-delta-as-oracle", cfg.count_delta_as_oracle,
               "Count fan interactions as oracle interactions");
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Config cfg;
  CLI::App app{"Optimal λ-calculus normalizer on interaction nets"};
  app.name("lamnet");
  app.require_subcommand(1);
  add_common(app, cfg);

  auto* normalize = app.add_subcommand("normalize", "Normalize a λ-term");
  normalize->add_option("input", cfg.input, "File holding the term, or - for stdin");
  normalize->add_option("-e,--expr", cfg.expr, "Term given on the command line");
  auto* run_cmd = app.add_subcommand("run", "Reduce an interaction net program");
  run_cmd->add_option("input", cfg.input, "Program file, or - for stdin");
  auto* selftest = app.add_subcommand("selftest", "Check the bundled corpus against the oracle");
  for (auto* sub : {normalize, run_cmd, selftest}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  Command command(cfg, in, out, err);
  if (normalize->parsed()) return command.normalize();
  if (run_cmd->parsed()) return command.run_program();
  return command.selftest();
}

}  // namespace lamnet::cli
