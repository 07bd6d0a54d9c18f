#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "lamnet/corpus.hpp"
#include "lamnet/errors.hpp"
#include "lamnet/term.hpp"

using namespace lamnet;

TEST_SUITE("oracle") {
  TEST_CASE("normal order basics") {
    CHECK(alpha_eq(normal_order_nf(parse_term("(λa.λb.a) x y")), parse_term("x")));
    CHECK(alpha_eq(normal_order_nf(parse_term("λx.(λy.y) x")), parse_term("λx.x")));
    CHECK(alpha_eq(normal_order_nf(parse_term("(λx.λy.x y) y")), parse_term("λz.y z")));
  }

  TEST_CASE("divergence hits the fuel limit") {
    CHECK_THROWS_AS(normal_order_nf(parse_term("(λx.x x) (λx.x x)"), 1000), FuelExhausted);
  }

  TEST_CASE("leftmost-outermost discards a divergent argument") {
    Term t = parse_term("(λx.λy.y) ((λx.x x) (λx.x x))");
    CHECK(alpha_eq(normal_order_nf(t, 10), parse_term("λy.y")));
  }

  // The frozen expectations must agree with the reference reducer before the
  // net engine is compared against them.
  TEST_CASE("corpus expectations agree with the reference reducer") {
    REQUIRE(corpus().size() >= 30);
    auto all = corpus();
    all.push_back(benchmark());
    for (const auto& e : all) {
      CAPTURE(e.name);
      CHECK(alpha_eq(normal_order_nf(parse_term(e.source)), parse_term(e.expected)));
    }
  }

  TEST_CASE("corpus names are unique") {
    std::set<std::string> names;
    for (const auto& e : corpus()) CHECK(names.insert(e.name).second);
  }

  TEST_CASE("bundled benchmark file matches the embedded term") {
    std::ifstream file(LAMNET_SOURCE_DIR "/corpus/benchmark.lam");
    REQUIRE(file);
    std::ostringstream text;
    text << file.rdbuf();
    CHECK(parse_term(text.str()) == parse_term(benchmark().source));
  }
}
