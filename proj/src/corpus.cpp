#include "lamnet/corpus.hpp"

#include <map>
#include <stdexcept>

namespace lamnet {

namespace {

const std::map<std::string, std::string, std::less<>>& combinators() {
  static const std::map<std::string, std::string, std::less<>> table = [] {
    std::map<std::string, std::string, std::less<>> m;
    m["I"] = "λx.x";
    m["K"] = "λa.λb.a";
    m["S"] = "λx.λy.λz.x z (y z)";
    m["OMEGA"] = "(λx.x x) (λx.x x)";
    m["C0"] = "λf.λx.x";
    m["C1"] = "λf.λx.f x";
    m["C2"] = "λf.λx.f (f x)";
    m["C3"] = "λf.λx.f (f (f x))";
    m["C4"] = "λf.λx.f (f (f (f x)))";
    m["SUCC"] = "λn.λf.λx.f (n f x)";
    m["ADD"] = "λm.λn.λf.λx.m f (n f x)";
    m["MUL"] = "λm.λn.λf.m (n f)";
    m["EXP"] = "λm.λn.n m";
    m["PRED"] = "λn.λf.λx.n (λg.λh.h (g f)) (λu.x) (λu.u)";
    m["SUB"] = "λm.λn.n (" + m["PRED"] + ") m";
    m["TRUE"] = "λt.λf.t";
    m["FALSE"] = "λt.λf.f";
    m["ISZERO"] = "λn.n (λx." + m["FALSE"] + ") (" + m["TRUE"] + ")";
    m["THETA"] = "(λx.λy.y (x x y)) (λx.λy.y (x x y))";
    m["Y"] = "λf.(λx.f (x x)) (λx.f (x x))";
    m["FACT"] = "(" + m["THETA"] + ") (λf.λn.(" + m["ISZERO"] + ") n (" + m["C1"] + ") ((" +
                m["MUL"] + ") n (f ((" + m["PRED"] + ") n))))";
    return m;
  }();
  return table;
}

// Applies the named combinators (or literal terms) left to right.
std::string ap(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (auto part : parts) {
    if (!out.empty()) out += ' ';
    auto it = combinators().find(part);
    out += '(';
    out += it == combinators().end() ? std::string(part) : it->second;
    out += ')';
  }
  return out;
}

std::string church(int n) {
  std::string body = "x";
  for (int i = 0; i < n; ++i) body = i == 0 ? "f x" : "f (" + body + ")";
  return "λf.λx." + body;
}

}  // namespace

std::string_view combinator(std::string_view name) {
  auto it = combinators().find(name);
  if (it == combinators().end()) throw std::out_of_range("unknown combinator");
  return it->second;
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"identity", "λx.x", "λx.x"},
      {"apply-identity-free", "(λx.x) y", "y"},
      {"free-variable", "y", "y"},
      {"free-application", "y (λx.x) z", "y (λx.x) z"},
      {"free-under-binder", "λx.y x (λz.z)", "λx.y x (λz.z)"},
      {"erase-divergent", ap({"λf.λx.(λa.λb.a) x f", "OMEGA"}), "λx.x"},
      {"omega-omega-two", ap({"λx.x x", ap({"λx.x x", "C2"})}), church(256)},
      {"erase-curry-loop", ap({"λx.λy.y", ap({"Y", "I"})}), "λy.y"},
      {"erase-turing-loop", ap({"λx.λy.y", ap({"THETA", "I"})}), "λy.y"},
      {"two-after-curry-loop", ap({"λx." + std::string(combinator("C2")), ap({"Y", "I"})}),
       "λf.λx.f (f x)"},
      {"two-after-turing-loop",
       ap({"λx." + std::string(combinator("C2")), ap({"THETA", "I"})}), "λf.λx.f (f x)"},
      {"succ-two", ap({"SUCC", "C2"}), "λf.λx.f (f (f x))"},
      {"add-two-three", ap({"ADD", "C2", "C3"}), "λf.λx.f (f (f (f (f x))))"},
      {"mul-two-three", ap({"MUL", "C2", "C3"}), "λf.λx.f (f (f (f (f (f x)))))"},
      {"exp-two-three", ap({"EXP", "C2", "C3"}), church(8)},
      {"exp-three-two", ap({"EXP", "C3", "C2"}), church(9)},
      {"pred-three", ap({"PRED", "C3"}), "λf.λx.f (f x)"},
      {"pred-zero", ap({"PRED", "C0"}), "λf.λx.x"},
      {"sub-three-one", ap({"SUB", "C3", "C1"}), "λf.λx.f (f x)"},
      {"fact-two", ap({"FACT", "C2"}), "λf.λx.f (f x)"},
      {"fact-three", ap({"FACT", "C3"}), "λf.λx.f (f (f (f (f (f x)))))"},
      {"iszero-zero", ap({"ISZERO", "C0"}), "λt.λf.t"},
      {"iszero-two", ap({"ISZERO", "C2"}), "λt.λf.f"},
      {"k-free", ap({"K", "a", "b"}), "a"},
      {"erase-omega-free", ap({"λx.λy.y", "OMEGA", "z"}), "z"},
      {"skk", ap({"S", "K", "K"}), "λz.z"},
      {"sk", ap({"S", "K"}), "λy.λz.z"},
      {"two-two", ap({"C2", "C2"}), "λf.λx.f (f (f (f x)))"},
      {"three-two", ap({"C3", "C2"}), church(8)},
      {"mul-two-add-one-two", ap({"MUL", "C2", ap({"ADD", "C1", "C2"})}),
       "λf.λx.f (f (f (f (f (f x)))))"},
      {"self-apply-under-binder", "λx.(λy.y y) x", "λx.x x"},
      {"self-apply-free", "(λx.x x) y", "y y"},
      {"capture-avoidance", "(λx.λy.x y) y", "λz.y z"},
      {"identity-self-apply", "(λx.x x) (λy.y)", "λy.y"},
      {"nested-self-apply", "(λx.x (λy.y)) (λz.z z)", "λy.y"},
      {"share-free-application", "(λx.x x) (f a)", "f a (f a)"},
      {"church-free", ap({"C2", "g", "a"}), "g (g a)"},
      {"sub-four-three", ap({"SUB", ap({"EXP", "C2", "C2"}), ap({"ADD", "C1", "C2"})}),
       "λf.λx.f x"},
  };
  return entries;
}

const CorpusEntry& benchmark() {
  static const CorpusEntry entry{
      "benchmark",
      ap({"SUB", ap({"EXP", "C3", "C3"}), ap({"FACT", ap({"ADD", "C2", "C2"})})}),
      "λf.λx.f (f (f x))"};
  return entry;
}

}  // namespace lamnet
