#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace lamnet {

/// Untyped λK-term. Immutable; copies share structure.
///
/// `Marked` is a free variable flagged for encoding (x•). `Hole` only
/// appears in the term view of a Context.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Marked, Abs, App, Hole };

  static Term var(std::string name);
  static Term marked(std::string name);
  static Term abs(std::string binder, Term body);
  static Term app(Term fun, Term arg);
  static Term hole();

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_marked() const { return kind() == Kind::Marked; }
  bool is_abs() const { return kind() == Kind::Abs; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_hole() const { return kind() == Kind::Hole; }

  // Variable name for Var/Marked, binder for Abs.
  const std::string& name() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  Term() = default;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  std::string name;
  // Abs: left = body. App: left = fun, right = arg. Leaves leave both unset.
  Term left;
  Term right;
};

inline Term::Kind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline const Term& Term::body() const { return node_->left; }
inline const Term& Term::fun() const { return node_->left; }
inline const Term& Term::arg() const { return node_->right; }

/// One-hole context, stored as the path from the hole outwards so that
/// extending at the hole is O(1).
class Context {
 public:
  Context() = default;

  static Context under_abs(std::string binder);  // λy.[ ]
  static Context fun_of(Term arg);               // [ ] N
  static Context arg_of(Term fun);               // M [ ]
  // Throws std::invalid_argument unless `term` has exactly one Hole.
  static Context from_term(const Term& term);

  bool is_hole() const { return !inner_; }
  std::size_t depth() const;

  Term plug(const Term& filler) const;
  Context compose(const Context& inner) const;
  Term to_term() const { return plug(Term::hole()); }

  // Every identifier occurring anywhere in the context.
  std::unordered_set<std::string> names() const;

  friend bool operator==(const Context& a, const Context& b) {
    return a.to_term() == b.to_term();
  }

 private:
  struct Frame;
  explicit Context(std::shared_ptr<const Frame> inner) : inner_(std::move(inner)) {}

  std::shared_ptr<const Frame> inner_;
};

Term plug(const Context& context, const Term& filler);
Context compose(const Context& outer, const Context& inner);

/// Emits `_0, _1, …`, skipping the forbidden set and everything emitted so far.
class FreshNameSource {
 public:
  FreshNameSource() = default;
  explicit FreshNameSource(std::unordered_set<std::string> forbidden)
      : forbidden_(std::move(forbidden)) {}

  void forbid(std::string name) { forbidden_.insert(std::move(name)); }
  bool is_forbidden(const std::string& name) const { return forbidden_.contains(name); }
  std::string next();

 private:
  std::uint64_t counter_ = 0;
  std::unordered_set<std::string> forbidden_;
};

struct PrintOptions {
  bool ascii = false;  // `\` instead of `λ`
};

Term parse_term(std::string_view text);
std::string print_term(const Term& term, PrintOptions options = {});
std::string print_context(const Context& context, PrintOptions options = {});

bool is_identifier(std::string_view name);

/// Free variables (unmarked and marked alike) in first-occurrence order.
std::vector<std::string> free_vars(const Term& term);
/// All identifiers, bound or free.
std::unordered_set<std::string> all_names(const Term& term);

Term mark_free(const Term& term);
Term unmark(const Term& term);

Term subst(const Term& term, const std::string& name, const Term& replacement);
Term subst(const Term& term, const std::string& name, const Term& replacement,
           FreshNameSource& fresh);

bool alpha_eq(const Term& a, const Term& b);

inline constexpr std::uint64_t kDefaultOracleFuel = 1'000'000;

/// Leftmost-outermost β-normalisation. Throws FuelExhausted after more than
/// `fuel` β-steps.
Term normal_order_nf(const Term& term, std::uint64_t fuel = kDefaultOracleFuel);

}  // namespace lamnet
