#include <string>

#include "lamnet/errors.hpp"
#include "lamnet/term.hpp"

namespace lamnet {

namespace {

class NormalOrder {
 public:
  NormalOrder(const Term& term, std::uint64_t fuel) : fuel_(fuel), fresh_(all_names(term)) {}

  Term nf(Term t) {
    // Iterate down the spine of abstractions to keep recursion shallow on
    // long λ-prefixes; recurse only into application arguments.
    std::vector<std::string> binders;
    for (;;) {
      t = whnf(std::move(t));
      if (!t.is_abs()) break;
      binders.push_back(t.name());
      t = t.body();
    }
    if (t.is_app()) {
      std::vector<Term> args;
      Term head = t;
      while (head.is_app()) {
        args.push_back(head.arg());
        head = head.fun();
      }
      Term result = head;
      for (auto it = args.rbegin(); it != args.rend(); ++it) {
        result = Term::app(std::move(result), nf(*it));
      }
      t = std::move(result);
    }
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      t = Term::abs(*it, std::move(t));
    }
    return t;
  }

 private:
  // Weak head normal form: contract the head redex until the head is a
  // variable or the term is an abstraction.
  Term whnf(Term t) {
    for (;;) {
      std::vector<Term> args;
      Term head = t;
      while (head.is_app()) {
        args.push_back(head.arg());
        head = head.fun();
      }
      if (!head.is_abs() || args.empty()) return t;
      burn();
      Term reduced = contract(head, args.back());
      args.pop_back();
      for (auto it = args.rbegin(); it != args.rend(); ++it) {
        reduced = Term::app(std::move(reduced), *it);
      }
      t = std::move(reduced);
    }
  }

  Term contract(const Term& abs, const Term& arg) {
    for (auto& n : all_names(arg)) fresh_.forbid(std::move(n));
    return subst(abs.body(), abs.name(), arg, fresh_);
  }

  void burn() {
    if (used_ >= fuel_) throw FuelExhausted(fuel_);
    ++used_;
  }

  std::uint64_t fuel_;
  std::uint64_t used_ = 0;
  FreshNameSource fresh_;
};

}  // namespace

Term normal_order_nf(const Term& term, std::uint64_t fuel) {
  NormalOrder reducer(term, fuel);
  return reducer.nf(term);
}

}  // namespace lamnet
