#include "lamnet/term.hpp"

#include <stdexcept>
#include <utility>

namespace lamnet {

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, {}}));
}

Term Term::marked(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Marked, std::move(name), {}, {}}));
}

Term Term::abs(std::string binder, Term body) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Abs, std::move(binder), std::move(body), {}}));
}

Term Term::app(Term fun, Term arg) {
  return Term(
      std::make_shared<const Node>(Node{Kind::App, {}, std::move(fun), std::move(arg)}));
}

Term Term::hole() {
  static const Term shared(std::make_shared<const Node>(Node{Kind::Hole, {}, {}, {}}));
  return shared;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Marked:
      return a.name() == b.name();
    case Term::Kind::Abs:
      return a.name() == b.name() && a.body() == b.body();
    case Term::Kind::App:
      return a.fun() == b.fun() && a.arg() == b.arg();
    case Term::Kind::Hole:
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Contexts

struct Context::Frame {
  enum class Kind : std::uint8_t { Abs, Fun, Arg };
  Kind kind;
  std::string binder;  // Abs
  Term other;          // Fun: the argument; Arg: the function
  std::shared_ptr<const Frame> outer;
  std::size_t depth;
};

Context Context::under_abs(std::string binder) {
  return Context(std::make_shared<const Frame>(
      Frame{Frame::Kind::Abs, std::move(binder), Term::hole(), nullptr, 1}));
}

Context Context::fun_of(Term arg) {
  return Context(
      std::make_shared<const Frame>(Frame{Frame::Kind::Fun, {}, std::move(arg), nullptr, 1}));
}

Context Context::arg_of(Term fun) {
  return Context(
      std::make_shared<const Frame>(Frame{Frame::Kind::Arg, {}, std::move(fun), nullptr, 1}));
}

namespace {

std::size_t count_holes(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Hole:
      return 1;
    case Term::Kind::Abs:
      return count_holes(t.body());
    case Term::Kind::App:
      return count_holes(t.fun()) + count_holes(t.arg());
    default:
      return 0;
  }
}

}  // namespace

Context Context::from_term(const Term& term) {
  if (count_holes(term) != 1) {
    throw std::invalid_argument("context must contain exactly one hole");
  }
  Context result;
  Term cursor = term;
  while (!cursor.is_hole()) {
    Context step;
    Term next = cursor;
    if (cursor.is_abs()) {
      step = under_abs(cursor.name());
      next = cursor.body();
    } else if (count_holes(cursor.fun()) == 1) {
      step = fun_of(cursor.arg());
      next = cursor.fun();
    } else {
      step = arg_of(cursor.fun());
      next = cursor.arg();
    }
    result = result.compose(step);
    cursor = next;
  }
  return result;
}

std::size_t Context::depth() const { return inner_ ? inner_->depth : 0; }

Term Context::plug(const Term& filler) const {
  Term result = filler;
  for (const Frame* f = inner_.get(); f != nullptr; f = f->outer.get()) {
    switch (f->kind) {
      case Frame::Kind::Abs:
        result = Term::abs(f->binder, std::move(result));
        break;
      case Frame::Kind::Fun:
        result = Term::app(std::move(result), f->other);
        break;
      case Frame::Kind::Arg:
        result = Term::app(f->other, std::move(result));
        break;
    }
  }
  return result;
}

Context Context::compose(const Context& inner) const {
  if (!inner.inner_) return *this;
  if (!inner_) return inner;
  std::vector<const Frame*> frames;
  for (const Frame* f = inner.inner_.get(); f != nullptr; f = f->outer.get()) {
    frames.push_back(f);
  }
  std::shared_ptr<const Frame> chain = inner_;
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    const Frame* f = *it;
    chain = std::make_shared<const Frame>(
        Frame{f->kind, f->binder, f->other, chain, chain->depth + 1});
  }
  return Context(std::move(chain));
}

std::unordered_set<std::string> Context::names() const {
  std::unordered_set<std::string> out;
  for (const Frame* f = inner_.get(); f != nullptr; f = f->outer.get()) {
    if (f->kind == Frame::Kind::Abs) {
      out.insert(f->binder);
    } else {
      out.merge(all_names(f->other));
    }
  }
  return out;
}

Term plug(const Context& context, const Term& filler) { return context.plug(filler); }

Context compose(const Context& outer, const Context& inner) { return outer.compose(inner); }

std::string FreshNameSource::next() {
  for (;;) {
    std::string candidate = "_" + std::to_string(counter_++);
    if (forbidden_.insert(candidate).second) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Variables

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::vector<std::string>& out,
                  std::unordered_set<std::string>& seen) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Marked: {
      for (const auto& b : bound) {
        if (b == t.name()) return;
      }
      if (seen.insert(t.name()).second) out.push_back(t.name());
      return;
    }
    case Term::Kind::Abs:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out, seen);
      bound.pop_back();
      return;
    case Term::Kind::App:
      collect_free(t.fun(), bound, out, seen);
      collect_free(t.arg(), bound, out, seen);
      return;
    case Term::Kind::Hole:
      return;
  }
}

void collect_names(const Term& t, std::unordered_set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Marked:
      out.insert(t.name());
      return;
    case Term::Kind::Abs:
      out.insert(t.name());
      collect_names(t.body(), out);
      return;
    case Term::Kind::App:
      collect_names(t.fun(), out);
      collect_names(t.arg(), out);
      return;
    case Term::Kind::Hole:
      return;
  }
}

bool occurs_free(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Marked:
      return t.name() == name;
    case Term::Kind::Abs:
      return t.name() != name && occurs_free(t.body(), name);
    case Term::Kind::App:
      return occurs_free(t.fun(), name) || occurs_free(t.arg(), name);
    case Term::Kind::Hole:
      return false;
  }
  return false;
}

Term remark(const Term& t, std::vector<std::string>& bound, bool mark) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Marked: {
      if (mark && t.is_var()) {
        for (const auto& b : bound) {
          if (b == t.name()) return t;
        }
        return Term::marked(t.name());
      }
      if (!mark && t.is_marked()) return Term::var(t.name());
      return t;
    }
    case Term::Kind::Abs: {
      bound.push_back(t.name());
      Term body = remark(t.body(), bound, mark);
      bound.pop_back();
      return body.same_node(t.body()) ? t : Term::abs(t.name(), std::move(body));
    }
    case Term::Kind::App: {
      Term f = remark(t.fun(), bound, mark);
      Term a = remark(t.arg(), bound, mark);
      if (f.same_node(t.fun()) && a.same_node(t.arg())) return t;
      return Term::app(std::move(f), std::move(a));
    }
    case Term::Kind::Hole:
      return t;
  }
  return t;
}

}  // namespace

std::vector<std::string> free_vars(const Term& term) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect_free(term, bound, out, seen);
  return out;
}

std::unordered_set<std::string> all_names(const Term& term) {
  std::unordered_set<std::string> out;
  collect_names(term, out);
  return out;
}

Term mark_free(const Term& term) {
  std::vector<std::string> bound;
  return remark(term, bound, true);
}

Term unmark(const Term& term) {
  std::vector<std::string> bound;
  return remark(term, bound, false);
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

class Substituter {
 public:
  Substituter(const std::string& name, const Term& replacement, FreshNameSource& fresh)
      : name_(name), replacement_(replacement), fresh_(fresh) {
    for (auto& v : free_vars(replacement)) replacement_free_.insert(std::move(v));
  }

  Term run(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var:
        return t.name() == name_ ? replacement_ : t;
      case Term::Kind::Marked:
      case Term::Kind::Hole:
        return t;
      case Term::Kind::App: {
        Term f = run(t.fun());
        Term a = run(t.arg());
        if (f.same_node(t.fun()) && a.same_node(t.arg())) return t;
        return Term::app(std::move(f), std::move(a));
      }
      case Term::Kind::Abs: {
        if (t.name() == name_) return t;
        if (!replacement_free_.contains(t.name())) {
          Term body = run(t.body());
          return body.same_node(t.body()) ? t : Term::abs(t.name(), std::move(body));
        }
        if (!occurs_free(t.body(), name_)) return t;
        std::string renamed = fresh_.next();
        Substituter rename(t.name(), Term::var(renamed), fresh_);
        Term body = run(rename.run(t.body()));
        return Term::abs(std::move(renamed), std::move(body));
      }
    }
    return t;
  }

 private:
  std::string name_;
  Term replacement_;
  FreshNameSource& fresh_;
  std::unordered_set<std::string> replacement_free_;
};

}  // namespace

Term subst(const Term& term, const std::string& name, const Term& replacement,
           FreshNameSource& fresh) {
  fresh.forbid(name);
  for (auto& n : all_names(term)) fresh.forbid(std::move(n));
  for (auto& n : all_names(replacement)) fresh.forbid(std::move(n));
  Substituter s(name, replacement, fresh);
  return s.run(term);
}

Term subst(const Term& term, const std::string& name, const Term& replacement) {
  FreshNameSource fresh;
  return subst(term, name, replacement, fresh);
}

// ---------------------------------------------------------------------------
// α-equivalence by de Bruijn comparison

namespace {

// Index of `name` counted from the innermost binder, or -1 when free.
long lookup(const std::vector<const std::string*>& scope, const std::string& name) {
  for (std::size_t i = scope.size(); i-- > 0;) {
    if (*scope[i] == name) return static_cast<long>(scope.size() - 1 - i);
  }
  return -1;
}

bool alpha_eq_rec(const Term& a, const Term& b, std::vector<const std::string*>& sa,
                  std::vector<const std::string*>& sb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      long ia = lookup(sa, a.name());
      long ib = lookup(sb, b.name());
      if (ia != ib) return false;
      return ia >= 0 || a.name() == b.name();
    }
    case Term::Kind::Marked:
      return a.name() == b.name();
    case Term::Kind::Hole:
      return true;
    case Term::Kind::Abs: {
      sa.push_back(&a.name());
      sb.push_back(&b.name());
      bool eq = alpha_eq_rec(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return eq;
    }
    case Term::Kind::App:
      return alpha_eq_rec(a.fun(), b.fun(), sa, sb) && alpha_eq_rec(a.arg(), b.arg(), sa, sb);
  }
  return false;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  std::vector<const std::string*> sa;
  std::vector<const std::string*> sb;
  return alpha_eq_rec(a, b, sa, sb);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_rec(const Term& t, const PrintOptions& options, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::Marked:
      out += t.name();
      out += "•";
      return;
    case Term::Kind::Hole:
      out += "[ ]";
      return;
    case Term::Kind::Abs:
      out += options.ascii ? "\\" : "λ";
      out += t.name();
      out += '.';
      print_rec(t.body(), options, out);
      return;
    case Term::Kind::App: {
      const Term& f = t.fun();
      const Term& a = t.arg();
      if (f.is_abs()) {
        out += '(';
        print_rec(f, options, out);
        out += ')';
      } else {
        print_rec(f, options, out);
      }
      out += ' ';
      if (a.is_abs() || a.is_app()) {
        out += '(';
        print_rec(a, options, out);
        out += ')';
      } else {
        print_rec(a, options, out);
      }
      return;
    }
  }
}

}  // namespace

std::string print_term(const Term& term, PrintOptions options) {
  std::string out;
  print_rec(term, options, out);
  return out;
}

std::string print_context(const Context& context, PrintOptions options) {
  return print_term(context.to_term(), options);
}

}  // namespace lamnet
