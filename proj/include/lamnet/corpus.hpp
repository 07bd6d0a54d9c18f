#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lamnet {

struct CorpusEntry {
  std::string name;
  std::string source;
  // Normal form computed once by normal_order_nf and frozen here.
  std::string expected;
};

// Bundled λ-terms with their normal forms.
const std::vector<CorpusEntry>& corpus();

// 3^3 − (2+2)! over Church numerals; normal form is Church 3.
const CorpusEntry& benchmark();

// Named combinators the corpus is built from, e.g. "PRED", "THETA".
std::string_view combinator(std::string_view name);

}  // namespace lamnet
